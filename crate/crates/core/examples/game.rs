//! Plays two scripted rounds of the index-search game on the 5×5 Siamese square.

use std::io::{self, Cursor};

use qsearch::cli::{cmd_game, CliConfig};

fn main() -> qsearch::Result<()> {
    let config = CliConfig { seed: 2024, ..CliConfig::default() };
    // row 2, col 3; then row 0, col 0; then quit
    let mut script = Cursor::new("2\n3\ny\n0\n0\nn\n");
    cmd_game(5, &config, &mut script, &mut io::stdout())
}
