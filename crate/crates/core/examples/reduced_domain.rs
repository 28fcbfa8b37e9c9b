//! Same search with the centre cell pinned to 5: 8! candidates on 16 qubits.

use qsearch::grover::{self, GroverPlan};
use qsearch::magic;

fn main() -> qsearch::Result<()> {
    let full = magic::full_permutation_domain(3)?;
    let reduced = magic::reduce_domain(3)?;
    println!("full    : {} candidates, {} qubits", full.size(), full.qubit_width());
    println!("reduced : {} candidates, {} qubits", reduced.size(), reduced.qubit_width());

    let is_magic = |c: &[u32]| magic::is_magic_cells(3, c);
    for seed in 0..4 {
        let plan = GroverPlan::new(reduced.size() as u64, 8, seed)?;
        let r = grover::run(&reduced, is_magic, &plan, is_magic, 0)?;
        let index = r.outcome_index as u128;
        println!(
            "seed {seed}: k = {}, P = {:.6}, index {index} -> {:?} valid={}",
            plan.iterations, r.final_marked_probability, r.candidate.unwrap_or_default(), r.valid
        );
    }

    // the n = 5 reduction exists but is far too large to simulate
    let five = magic::reduce_domain(5)?;
    println!("n = 5 reduced: {} qubits; {}", five.qubit_width(), five.note().unwrap_or(""));
    Ok(())
}
