//! Grover search for a 3×3 magic square over all 9! permutations (19 qubits).

use qsearch::grover::{self, GroverPlan};
use qsearch::magic::{self, MagicGrid};

fn main() -> qsearch::Result<()> {
    let domain = magic::full_permutation_domain(3)?;
    let is_magic = |c: &[u32]| magic::is_magic_cells(3, c);
    let plan = GroverPlan::new(domain.size() as u64, 8, 1)?;
    println!(
        "N = {}, qubits = {}, M = {}, k = {}",
        domain.size(),
        domain.qubit_width(),
        plan.marked_count,
        plan.iterations
    );

    let result = grover::run(&domain, is_magic, &plan, is_magic, 3)?;
    println!("marked probability after k iterations: {:.9}", result.final_marked_probability);
    println!("oracle queries: {} (retries: {})", result.oracle_queries, result.retries);
    match result.candidate {
        Some(cells) if result.valid => println!("{}", MagicGrid::new(3, cells)?.to_matrix_string()),
        _ => println!("no magic square measured"),
    }
    Ok(())
}
