//! Pruned backtracking against Grover, emitted as JSON and CSV.

use qsearch::bench::{self, BenchOptions, ReportFormat};

fn main() -> qsearch::Result<()> {
    let opts = BenchOptions { seed: 3, record_timings: false };
    let (back, grover) = bench::bench_backtrack_vs_grover(3, &opts)?;
    println!("backtracking visited {} nodes", back.candidates_or_queries);
    println!("grover used {} oracle queries\n", grover.candidates_or_queries);

    let reports = [back, grover];
    print!("{}", bench::emit_report(&reports, ReportFormat::Csv)?);
    let json = bench::emit_report(&reports, ReportFormat::Json)?;
    assert_eq!(bench::parse_json_report(&json)?, reports);
    println!("\njson round trip ok ({} bytes)", json.len());
    Ok(())
}
