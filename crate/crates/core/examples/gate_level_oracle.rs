//! Builds a reversible sum oracle from adders and comparators, prints its netlist,
//! and checks it against the classical predicate on every input.

use qsearch::revcircuit::{
    assemble_constraint_oracle, constraint_oracle_layout, RegisterLayout, SumConstraint,
};

fn main() -> qsearch::Result<()> {
    let layout = RegisterLayout::new(3, 2)?;
    let constraint = SumConstraint::new(vec![vec![0, 1, 2]], 6).with_distinct();
    let oracle = assemble_constraint_oracle(&layout, &constraint)?;
    let full = constraint_oracle_layout(&layout, &constraint)?;

    for (name, range) in &full.ancilla_offsets {
        println!("ancilla {name:<8} {range:?}");
    }
    println!("{} gates, {} multi-controlled", oracle.len(), oracle.multi_controlled_count());
    println!("{}", oracle.to_netlist().lines().take(8).collect::<Vec<_>>().join("\n"));
    println!("...");

    let mut marked = Vec::new();
    for input in 0..1usize << layout.primary_width() {
        let (out, sign) = oracle.apply_to_basis(input)?;
        let cells = layout.decode(input);
        assert_eq!(out, input, "ancillas not restored");
        assert_eq!(sign == -1, constraint.holds(&cells));
        if sign == -1 {
            marked.push(cells);
        }
    }
    println!("marked inputs: {marked:?}");
    Ok(())
}
