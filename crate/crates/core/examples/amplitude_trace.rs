//! Marked-state probability per iteration for the 25-cell game board, past the optimum.

use qsearch::grover::{self, GroverPlan};
use qsearch::magic::DomainDescriptor;

fn main() -> qsearch::Result<()> {
    let board = DomainDescriptor::custom(25, "board", |i| vec![i as u32], |_| true)?;
    let plan = GroverPlan::new(25, 1, 0)?.with_iterations(12);
    let trace = grover::amplitude_trace(&board, |c| c[0] == 12, &plan)?;

    println!(" i  simulated    closed form");
    for (i, p) in trace {
        let exact = grover::success_probability(25, 1, i)?;
        let bar = "#".repeat((p * 40.0).round() as usize);
        println!("{i:2}  {p:.9}  {exact:.9}  {bar}");
    }
    println!("optimal k = {}", grover::optimal_iterations(25, 1)?);
    Ok(())
}
