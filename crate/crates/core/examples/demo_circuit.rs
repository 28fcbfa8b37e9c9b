//! Three-qubit demo: H·H on q0 and q1, H·Z·H on q2, sampled 1024 times.

use qsearch::cli::{draw_circuit, format_histogram};
use qsearch::revcircuit::{demo_circuit, run_gatelist};
use qsearch::statevector::StateVector;

fn main() -> qsearch::Result<()> {
    let circuit = demo_circuit();
    println!("{}", draw_circuit(&circuit));
    let mut state = StateVector::basis(3, 0)?;
    run_gatelist(&mut state, &circuit)?;
    println!("Measurement counts: {}", format_histogram(&state.sample(1024, 0)?));
    Ok(())
}
