//! Qubit and gate budget of the full magic-square oracle for growing n.

use qsearch::revcircuit::oracle_resources;

fn main() -> qsearch::Result<()> {
    for n in 2..=5 {
        println!("n = {n}");
        println!("{}", oracle_resources(n)?);
    }
    Ok(())
}
