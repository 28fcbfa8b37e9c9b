//! Brute-force enumeration against the simulated Grover search, as a markdown table.

use qsearch::bench::{self, BenchOptions, ReportFormat};

fn main() -> qsearch::Result<()> {
    let opts = BenchOptions { seed: 3, record_timings: true };
    let (brute, grover) = bench::bench_brute_vs_grover(3, &opts)?;
    print!("{}", bench::emit_report(&[brute, grover], ReportFormat::Markdown)?);
    Ok(())
}
