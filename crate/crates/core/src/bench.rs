//! Classical-versus-Grover comparison runs and their JSON / CSV / markdown reports.
//!
//! Wall-clock fields are informational. The comparable figures are the candidate and
//! query counters, which come straight from the wrapped runs.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::grover::{self, GroverPlan, GroverRunResult};
use crate::magic::{self, MagicGrid, SearchStats};
use crate::{Error, Result};

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "qsearch-bench/1";

/// Retries allowed to the Grover side of a comparison.
pub const GROVER_MAX_RETRIES: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    Backtracking,
    GroverSimulated,
}

impl Method {
    pub fn title(&self) -> &'static str {
        match self {
            Method::BruteForce => "Brute-Force Search",
            Method::Backtracking => "Classical Backtracking",
            Method::GroverSimulated => "Grover's Algorithm",
        }
    }
}

/// One row of a comparison: a method, its counters, and the theoretical query figures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub n: usize,
    pub method: Method,
    /// `(n²)!`.
    pub search_space_n: u64,
    /// Candidates checked (brute force), nodes visited (backtracking) or oracle queries (Grover).
    pub candidates_or_queries: u64,
    /// `√N`, the M = 1 query figure.
    pub theoretical_queries_m1: f64,
    /// `(π/4)·√N`.
    pub scaled_queries_m1: f64,
    /// `(π/4)·√(N/M)` with the true solution count; absent when there is no solution.
    pub theoretical_queries_true_m: Option<f64>,
    pub marked_count: u64,
    pub solutions_found: u64,
    pub elapsed_seconds: f64,
    pub solution: Option<Vec<u32>>,
    /// Grover iterations per attempt; zero for classical methods.
    pub iterations: u64,
    pub final_marked_probability: Option<f64>,
    pub environment: String,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchOptions {
    pub seed: u64,
    /// When false, elapsed times are reported as zero so output is byte-reproducible.
    pub record_timings: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions { seed: 0, record_timings: true }
    }
}

pub fn environment() -> String {
    let build = if cfg!(debug_assertions) { "debug" } else { "release" };
    format!(
        "{}-{}, {} build, dense statevector simulator",
        std::env::consts::OS,
        std::env::consts::ARCH,
        build
    )
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("grid order must be at least 1".into()));
    }
    if n > 3 {
        return Err(Error::Capacity(format!(
            "comparisons run for n ≤ 3; n = {n} needs ({0}²)! candidates",
            n
        )));
    }
    Ok(())
}

fn base_report(n: usize, method: Method, marked: u64, opts: &BenchOptions) -> BenchReport {
    let big_n = grover::permutation_count_f64(n);
    BenchReport {
        n,
        method,
        search_space_n: big_n as u64,
        candidates_or_queries: 0,
        theoretical_queries_m1: big_n.sqrt(),
        scaled_queries_m1: std::f64::consts::FRAC_PI_4 * big_n.sqrt(),
        theoretical_queries_true_m: (marked > 0)
            .then(|| std::f64::consts::FRAC_PI_4 * (big_n / marked as f64).sqrt()),
        marked_count: marked,
        solutions_found: 0,
        elapsed_seconds: 0.0,
        solution: None,
        iterations: 0,
        final_marked_probability: None,
        environment: environment(),
        notes: Vec::new(),
    }
    .with_timing_policy(opts)
}

impl BenchReport {
    fn with_timing_policy(mut self, opts: &BenchOptions) -> Self {
        if !opts.record_timings {
            self.notes.push("timings not recorded".into());
        }
        self
    }

    fn set_elapsed(&mut self, seconds: f64, opts: &BenchOptions) {
        self.elapsed_seconds = if opts.record_timings { seconds } else { 0.0 };
    }
}

fn classical_report(
    n: usize,
    method: Method,
    marked: u64,
    solutions: &[MagicGrid],
    stats: &SearchStats,
    opts: &BenchOptions,
) -> BenchReport {
    let mut r = base_report(n, method, marked, opts);
    r.candidates_or_queries = match method {
        Method::Backtracking => stats.nodes_visited,
        _ => stats.candidates_checked,
    };
    r.solutions_found = stats.solutions_found;
    r.solution = solutions.first().map(|g| g.cells().to_vec());
    r.set_elapsed(stats.elapsed.as_secs_f64(), opts);
    if solutions.is_empty() {
        r.notes.push(format!("no {n}x{n} magic square exists"));
    }
    r
}

/// Number of magic squares of order `n`, counted by backtracking.
fn count_solutions(n: usize) -> Result<u64> {
    Ok(magic::backtracking(n, false)?.1.solutions_found)
}

/// Full-permutation Grover search with the true solution count. When there is no
/// solution the run is refused and the report says so.
fn grover_report(n: usize, marked: u64, opts: &BenchOptions) -> Result<(BenchReport, Option<GroverRunResult>)> {
    let mut r = base_report(n, Method::GroverSimulated, marked, opts);
    if marked == 0 {
        r.notes.push("no solution: M = 0, Grover run refused".into());
        return Ok((r, None));
    }
    let domain = magic::full_permutation_domain(n)?;
    let plan = GroverPlan::new(domain.size() as u64, marked, opts.seed)?;
    let valid = move |c: &[u32]| magic::is_magic_cells(n, c);
    let start = Instant::now();
    let run = grover::run(&domain, valid, &plan, valid, GROVER_MAX_RETRIES)?;
    r.set_elapsed(start.elapsed().as_secs_f64(), opts);
    r.candidates_or_queries = run.oracle_queries;
    r.iterations = run.iterations;
    r.final_marked_probability = Some(run.final_marked_probability);
    r.solutions_found = u64::from(run.valid);
    r.solution = run.candidate.clone().filter(|_| run.valid);
    r.notes.push(format!(
        "{}-qubit register, M = {marked}, k = {}, retries = {}",
        domain.qubit_width(),
        run.iterations,
        run.retries
    ));
    Ok((r, Some(run)))
}

/// Brute-force enumeration (stop at first) against the full-domain Grover search.
pub fn bench_brute_vs_grover(n: usize, opts: &BenchOptions) -> Result<(BenchReport, BenchReport)> {
    check_order(n)?;
    let marked = count_solutions(n)?;
    let (solutions, stats) = magic::brute_force(n, true)?;
    let brute = classical_report(n, Method::BruteForce, marked, &solutions, &stats, opts);
    let (grover, _) = grover_report(n, marked, opts)?;
    Ok((brute, grover))
}

/// Backtracking (stop at first) against the full-domain Grover search.
pub fn bench_backtrack_vs_grover(
    n: usize,
    opts: &BenchOptions,
) -> Result<(BenchReport, BenchReport)> {
    check_order(n)?;
    let marked = count_solutions(n)?;
    let (solutions, stats) = magic::backtracking(n, true)?;
    let bt = classical_report(n, Method::Backtracking, marked, &solutions, &stats, opts);
    let (grover, _) = grover_report(n, marked, opts)?;
    Ok((bt, grover))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
            ReportFormat::Markdown => "markdown",
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ReportDocument {
    schema: String,
    reports: Vec<BenchReport>,
}

pub fn emit_report(reports: &[BenchReport], format: ReportFormat) -> Result<String> {
    if reports.is_empty() {
        return Err(Error::Domain("no reports to emit".into()));
    }
    match format {
        ReportFormat::Json => {
            let doc = ReportDocument { schema: SCHEMA.into(), reports: reports.to_vec() };
            let mut out = serde_json::to_string_pretty(&doc)
                .map_err(|e| Error::Io(format!("json: {e}")))?;
            out.push('\n');
            Ok(out)
        }
        ReportFormat::Csv => emit_csv(reports),
        ReportFormat::Markdown => Ok(emit_markdown(reports)),
    }
}

/// Parses a JSON document produced by [`emit_report`].
pub fn parse_json_report(text: &str) -> Result<Vec<BenchReport>> {
    let doc: ReportDocument =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("json: {e}")))?;
    if doc.schema != SCHEMA {
        return Err(Error::Parse(format!("unsupported schema `{}`", doc.schema)));
    }
    Ok(doc.reports)
}

#[derive(Serialize)]
struct CsvRow<'a> {
    n: usize,
    method: Method,
    search_space_n: u64,
    candidates_or_queries: u64,
    theoretical_queries_m1: f64,
    scaled_queries_m1: f64,
    theoretical_queries_true_m: Option<f64>,
    marked_count: u64,
    solutions_found: u64,
    elapsed_seconds: f64,
    solution: String,
    iterations: u64,
    final_marked_probability: Option<f64>,
    environment: &'a str,
    notes: String,
}

fn emit_csv(reports: &[BenchReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in reports {
        let solution = r
            .solution
            .as_ref()
            .map(|s| s.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .unwrap_or_default();
        w.serialize(CsvRow {
            n: r.n,
            method: r.method,
            search_space_n: r.search_space_n,
            candidates_or_queries: r.candidates_or_queries,
            theoretical_queries_m1: r.theoretical_queries_m1,
            scaled_queries_m1: r.scaled_queries_m1,
            theoretical_queries_true_m: r.theoretical_queries_true_m,
            marked_count: r.marked_count,
            solutions_found: r.solutions_found,
            elapsed_seconds: r.elapsed_seconds,
            solution,
            iterations: r.iterations,
            final_marked_probability: r.final_marked_probability,
            environment: &r.environment,
            notes: r.notes.join("; "),
        })
        .map_err(|e| Error::Io(format!("csv: {e}")))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

/// `1234567` → `"1,234,567"`.
pub fn group_digits(v: u64) -> String {
    let s = v.to_string();
    let mut out = String::with_capacity(s.len() + s.len() / 3);
    for (i, ch) in s.chars().enumerate() {
        if i > 0 && (s.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(ch);
    }
    out
}

fn runtime_cell(r: &BenchReport) -> String {
    if r.notes.iter().any(|n| n == "timings not recorded") {
        return "not recorded".into();
    }
    let what = match r.method {
        Method::BruteForce => format!("{} permutations checked", group_digits(r.candidates_or_queries)),
        Method::Backtracking => format!("{} placements tried", group_digits(r.candidates_or_queries)),
        Method::GroverSimulated => "classical simulator overhead".into(),
    };
    format!("{:.4} s ({what})", r.elapsed_seconds)
}

fn markdown_cell(row: &str, r: &BenchReport) -> String {
    let grover = r.method == Method::GroverSimulated;
    let n2 = r.n * r.n;
    match row {
        "Search space" => {
            let size = group_digits(r.search_space_n);
            if grover {
                format!("N = {size} superposed states")
            } else {
                format!("{n2}! = {size} permutations")
            }
        }
        "Query complexity" => match r.method {
            Method::GroverSimulated => format!(
                "O(√N) ~{:.0} oracle calls ({} run)",
                r.theoretical_queries_m1,
                group_digits(r.candidates_or_queries)
            ),
            _ => format!("O(N) ({} checked)", group_digits(r.candidates_or_queries)),
        },
        "Approach" => match r.method {
            Method::BruteForce => "Sequential enumeration with constraint check".into(),
            Method::Backtracking => "Depth-first search with pruning".into(),
            Method::GroverSimulated => "Quantum amplitude amplification".into(),
        },
        "Search paradigm" => match r.method {
            Method::GroverSimulated => "Quantum amplitude amplification".into(),
            Method::Backtracking => "Depth-first with pruning".into(),
            Method::BruteForce => "Exhaustive enumeration".into(),
        },
        "Worst-case complexity" => {
            if grover {
                "O(√(N/M))".into()
            } else {
                "O((n²)!)".into()
            }
        }
        "Constraint use" => match r.method {
            Method::GroverSimulated => "Implicit via oracle phase flip".into(),
            Method::Backtracking => "Explicit pruning at each node".into(),
            Method::BruteForce => "Full check per candidate".into(),
        },
        "Hardware" => {
            if grover {
                "Quantum processor or statevector simulator".into()
            } else {
                "Classical CPU".into()
            }
        }
        "Scalability" => {
            if grover {
                "Quadratic speedup in query count".into()
            } else {
                "Exponential degradation with n".into()
            }
        }
        "Quantum measurement" => {
            if grover {
                "Required (collapses to basis state)".into()
            } else {
                "Not required".into()
            }
        }
        "Theoretical oracle calls (M = 1)" => {
            if grover {
                format!("√N = {:.2}; (π/4)·√N = {:.2}", r.theoretical_queries_m1, r.scaled_queries_m1)
            } else {
                "n/a".into()
            }
        }
        "Theoretical oracle calls (true M)" => match (grover, r.theoretical_queries_true_m) {
            (true, Some(q)) => format!("(π/4)·√(N/{}) = {q:.2}; k = {}", r.marked_count, r.iterations),
            (true, None) => "no solution (M = 0)".into(),
            _ => "n/a".into(),
        },
        "Solution" => match &r.solution {
            Some(s) => format!("{s:?}"),
            None => "none".into(),
        },
        "Observed runtime" => runtime_cell(r),
        _ => String::new(),
    }
}

fn emit_markdown(reports: &[BenchReport]) -> String {
    let backtrack_layout = reports.iter().any(|r| r.method == Method::Backtracking);
    let n = reports[0].n;
    let rows: &[&str] = if backtrack_layout {
        &[
            "Search paradigm",
            "Worst-case complexity",
            "Constraint use",
            "Hardware",
            "Scalability",
            "Search space",
            "Theoretical oracle calls (M = 1)",
            "Theoretical oracle calls (true M)",
            "Solution",
            "Observed runtime",
        ]
    } else {
        &[
            "Search space",
            "Query complexity",
            "Approach",
            "Hardware",
            "Quantum measurement",
            "Theoretical oracle calls (M = 1)",
            "Theoretical oracle calls (true M)",
            "Solution",
            "Observed runtime",
        ]
    };
    let label = |row: &str| match row {
        "Search space" => format!("Search space (n = {n})"),
        "Observed runtime" if backtrack_layout => format!("Observed runtime (n = {n})"),
        "Observed runtime" => "Observed simulation runtime".into(),
        other => other.to_string(),
    };

    let mut out = String::new();
    let header = if backtrack_layout { "Feature" } else { "Aspect" };
    out.push_str(&format!("| {header} |"));
    for r in reports {
        out.push_str(&format!(" {} |", r.method.title()));
    }
    out.push('\n');
    out.push_str(&"|---".repeat(reports.len() + 1));
    out.push_str("|\n");
    for row in rows {
        out.push_str(&format!("| {} |", label(row)));
        for r in reports {
            out.push_str(&format!(" {} |", markdown_cell(row, r)));
        }
        out.push('\n');
    }
    let notes: Vec<String> = reports
        .iter()
        .flat_map(|r| r.notes.iter().map(move |n| format!("- {}: {n}", r.method.title())))
        .collect();
    if !notes.is_empty() {
        out.push('\n');
        out.push_str(&notes.join("\n"));
        out.push('\n');
    }
    out
}
