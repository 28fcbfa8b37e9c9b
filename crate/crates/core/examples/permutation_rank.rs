//! Lehmer ranks of the eight 3×3 magic squares, and the round trip back.

use qsearch::magic;

fn main() -> qsearch::Result<()> {
    let (squares, stats) = magic::backtracking(3, false)?;
    println!("{} squares, {} nodes visited", squares.len(), stats.nodes_visited);
    for sq in &squares {
        let r = magic::rank(sq.cells())?;
        assert_eq!(magic::unrank(r, 9)?, sq.cells());
        println!("{:?}  rank {r:>6}", sq.cells());
    }
    Ok(())
}
