//! Command implementations behind the `qsearch` binary.
//!
//! Each command writes its transcript to a caller-supplied writer so the binary, the
//! examples and the tests all drive the same code. Everything random derives from
//! [`CliConfig::seed`].

use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::sync::Arc;

use crate::bench::{self, BenchOptions, BenchReport, ReportFormat};
use crate::grover::{self, GroverPlan};
use crate::magic::{self, DomainDescriptor, MagicGrid};
use crate::revcircuit::{self, GateList};
use crate::statevector::{GateKind, Histogram, StateVector};
use crate::{Error, Result};

/// Extra attempts after a failed measurement in the game and in `generate`.
pub const MAX_RETRIES: u32 = 3;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_NO_SOLUTION: i32 = 4;

/// Process exit code for an error surfaced by a command.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Capacity(_) => EXIT_CAPACITY,
        Error::NoSolution(_) => EXIT_NO_SOLUTION,
        Error::Io(_) => 1,
        _ => EXIT_USAGE,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InitChoice {
    #[default]
    Exact,
    Padded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub seed: u64,
    pub shots: u64,
    pub init_mode: InitChoice,
    pub iterations_override: Option<u64>,
    pub report_format: ReportFormat,
    pub output_path: Option<PathBuf>,
    pub record_timings: bool,
}

impl Default for CliConfig {
    fn default() -> Self {
        CliConfig {
            seed: 0,
            shots: 1024,
            init_mode: InitChoice::Exact,
            iterations_override: None,
            report_format: ReportFormat::Markdown,
            output_path: None,
            record_timings: true,
        }
    }
}

impl CliConfig {
    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(Error::Domain("--shots must be at least 1".into()));
        }
        Ok(())
    }

    fn plan(&self, domain: &DomainDescriptor, marked: u64, seed: u64) -> Result<GroverPlan> {
        let mut plan = GroverPlan::new(domain.size() as u64, marked, seed)?;
        if self.init_mode == InitChoice::Padded {
            plan = plan.padded(domain.qubit_width())?;
        }
        if let Some(k) = self.iterations_override {
            plan = plan.with_iterations(k);
        }
        Ok(plan)
    }
}

fn prompt_line(
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    prompt: &str,
) -> Result<Option<String>> {
    write!(out, "{prompt}")?;
    out.flush()?;
    let mut line = String::new();
    if input.read_line(&mut line)? == 0 {
        writeln!(out)?;
        return Ok(None);
    }
    Ok(Some(line.trim().to_string()))
}

/// Re-prompts until the answer is an integer below `bound`; `None` on end of input.
fn prompt_index(
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    what: &str,
    bound: usize,
) -> Result<Option<usize>> {
    loop {
        let prompt = format!("Enter {what} (0 to {}): ", bound - 1);
        let Some(answer) = prompt_line(input, out, &prompt)? else { return Ok(None) };
        match answer.parse::<usize>() {
            Ok(v) if v < bound => return Ok(Some(v)),
            _ => writeln!(out, "Invalid {what}, enter a number from 0 to {}.", bound - 1)?,
        }
    }
}

/// Domain of cell indices `0..n²` of `grid`; each index decodes to itself.
fn cell_index_domain(grid: &MagicGrid) -> Result<DomainDescriptor> {
    let cells = grid.cells().len() as u128;
    DomainDescriptor::custom(cells, "cell indices", |i| vec![i as u32], move |c| {
        c.len() == 1 && (c[0] as u128) < cells
    })
}

/// The console game: build the Siamese square, ask for a cell, and let Grover find the
/// cell index holding that cell's value.
pub fn cmd_game(
    size: usize,
    config: &CliConfig,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> Result<()> {
    config.validate()?;
    if !(3..=15).contains(&size) || size.is_multiple_of(2) {
        return Err(Error::Domain(format!("game size must be odd, 3 to 15; got {size}")));
    }
    let grid = magic::siamese(size)?;
    let domain = cell_index_domain(&grid)?;
    let cells: Arc<[u32]> = grid.cells().into();

    writeln!(out, "===== MAGIC SQUARE GAME (Quantum Edition) =====")?;
    writeln!(out)?;
    writeln!(out, "Generated Magic Square:")?;
    writeln!(out, "{}", grid.to_matrix_string())?;
    writeln!(out)?;
    writeln!(
        out,
        "Board has {} cells → using {} qubits",
        cells.len(),
        domain.qubit_width()
    )?;

    let mut round = 0u64;
    loop {
        writeln!(out)?;
        writeln!(out, "YOUR TURN:")?;
        let Some(row) = prompt_index(input, out, "row", size)? else { break };
        let Some(col) = prompt_index(input, out, "column", size)? else { break };
        let target = grid.get(row, col);

        writeln!(out)?;
        writeln!(out, "Grover will search for value: {target}")?;
        let plan = config.plan(&domain, 1, config.seed.wrapping_add(round))?;
        writeln!(out, "Grover iterations = {}", plan.iterations)?;
        writeln!(out)?;

        let holds = {
            let cells = Arc::clone(&cells);
            move |c: &[u32]| cells[c[0] as usize] == target
        };
        let result = grover::run(&domain, &holds, &plan, &holds, MAX_RETRIES)?;
        let value_at = |index: u64| {
            cells
                .get(index as usize)
                .map_or("(outside the board)".to_string(), |v| v.to_string())
        };
        for (attempt, &miss) in result.failed_outcomes.iter().enumerate() {
            writeln!(out, "Grover output index = {miss}")?;
            writeln!(out, "Value at that index = {}", value_at(miss))?;
            writeln!(
                out,
                "Miss, re-running the circuit (attempt {} of {})",
                attempt + 2,
                MAX_RETRIES + 1
            )?;
        }
        writeln!(out, "Grover output index = {}", result.outcome_index)?;
        writeln!(out, "Value at that index = {}", value_at(result.outcome_index))?;
        let found = cells.get(result.outcome_index as usize) == Some(&target);
        if result.valid && found {
            writeln!(out, "Correct guess!")?;
        } else {
            writeln!(
                out,
                "Grover did not find the value after {} attempts.",
                MAX_RETRIES + 1
            )?;
        }

        writeln!(out)?;
        let again = prompt_line(input, out, "Play again? (y/n): ")?;
        if !again.is_some_and(|a| a.eq_ignore_ascii_case("y")) {
            break;
        }
        round += 1;
    }
    writeln!(out, "Thanks for playing!")?;
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DomainChoice {
    #[default]
    Full,
    Reduced,
}

fn capacity_message(n: usize) -> String {
    match magic::full_permutation_domain(n) {
        Ok(d) => format!(
            "n = {n}: ({0})! = {1:.3e} candidates need {2} qubits; the simulator stops at 26 \
             (n = 3 needs 19); 16! ≈ 2.09e13 already for n = 4",
            n * n,
            d.size() as f64,
            d.qubit_width()
        ),
        Err(_) => format!(
            "n = {n}: ({0})! candidates are far beyond the 26-qubit simulator (n = 3 needs 19, \
             n = 4 needs 45 for 16! ≈ 2.09e13)",
            n * n
        ),
    }
}

/// Full Grover constraint search for an n×n square, printing the decoded result.
pub fn cmd_generate(
    n: usize,
    domain_choice: DomainChoice,
    config: &CliConfig,
    out: &mut dyn Write,
) -> Result<()> {
    config.validate()?;
    if n == 0 {
        return Err(Error::Domain("grid order must be at least 1".into()));
    }
    if n > 3 {
        return Err(Error::Capacity(capacity_message(n)));
    }
    let domain = match domain_choice {
        DomainChoice::Full => magic::full_permutation_domain(n)?,
        DomainChoice::Reduced => magic::reduce_domain(n)?,
    };
    let (solutions, _) = magic::backtracking(n, false)?;
    let marked = solutions.iter().filter(|s| domain.encode(s.cells()).is_some()).count() as u64;

    writeln!(
        out,
        "Domain: {}, N = {} candidates on {} qubits",
        domain.label(),
        bench::group_digits(domain.size() as u64),
        domain.qubit_width()
    )?;
    writeln!(out, "Solutions in domain (classical count): M = {marked}")?;
    if marked == 0 {
        return Err(Error::NoSolution(format!("no {n}x{n} magic square exists in this domain")));
    }

    let plan = config.plan(&domain, marked, config.seed)?;
    let valid = move |c: &[u32]| magic::is_magic_cells(n, c);
    let result = grover::run(&domain, valid, &plan, valid, MAX_RETRIES)?;

    writeln!(out, "Initial state: {}", plan.init)?;
    writeln!(out, "Grover iterations k = {}", result.iterations)?;
    writeln!(out, "Oracle queries: {}", result.oracle_queries)?;
    writeln!(out, "Final marked probability: {:.9}", result.final_marked_probability)?;
    writeln!(out, "Retries: {}", result.retries)?;
    writeln!(out, "Measured index: {}", result.outcome_index)?;
    writeln!(out)?;

    match result.candidate.filter(|c| result.valid && magic::is_magic_cells(n, c)) {
        Some(cells) => {
            let grid = MagicGrid::new(n, cells)?;
            writeln!(out, "Magic square found:")?;
            write!(out, "{grid}")?;
            writeln!(out, "Valid: yes")?;
            Ok(())
        }
        None => Err(Error::NoSolution(format!(
            "no valid configuration measured in {} attempts",
            MAX_RETRIES + 1
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Brute,
    Backtrack,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOutcome {
    pub reports: Vec<BenchReport>,
    pub text: String,
}

impl BenchOutcome {
    /// Exit code 4 when the classical side found no solution.
    pub fn exit_code(&self) -> i32 {
        if self.reports.iter().any(|r| r.solution.is_none()) {
            EXIT_NO_SOLUTION
        } else {
            EXIT_OK
        }
    }
}

/// Runs a comparison and renders it in the configured format. The caller decides
/// where the text goes (see [`write_output`]).
pub fn cmd_bench(comparison: Comparison, n: usize, config: &CliConfig) -> Result<BenchOutcome> {
    config.validate()?;
    let opts = BenchOptions { seed: config.seed, record_timings: config.record_timings };
    let (classical, quantum) = match comparison {
        Comparison::Brute => bench::bench_brute_vs_grover(n, &opts)?,
        Comparison::Backtrack => bench::bench_backtrack_vs_grover(n, &opts)?,
    };
    let reports = vec![classical, quantum];
    let text = bench::emit_report(&reports, config.report_format)?;
    Ok(BenchOutcome { reports, text })
}

/// Writes `text` to the configured output path, or to `out` when there is none.
pub fn write_output(config: &CliConfig, text: &str, out: &mut dyn Write) -> Result<()> {
    match &config.output_path {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InspectTarget {
    Siamese,
    Resources,
    DemoCircuit,
}

/// Column-per-gate text drawing: the target shows the gate mnemonic, controls show
/// `●` (on |1⟩) or `○` (on |0⟩), and a final `M` marks measurement.
pub fn draw_circuit(gates: &GateList) -> String {
    let q = gates.num_qubits();
    let mut rows: Vec<String> = (0..q).map(|i| format!("q_{i}: ──")).collect();
    for g in gates.gates() {
        let label = match g.kind {
            GateKind::MultiControlledX => "X",
            GateKind::MultiControlledZ => "Z",
            other => other.mnemonic(),
        };
        for (i, row) in rows.iter_mut().enumerate() {
            let cell = if i == g.target {
                label
            } else if let Some(c) = g.controls.iter().find(|c| c.qubit == i) {
                if c.polarity {
                    "●"
                } else {
                    "○"
                }
            } else {
                "─"
            };
            row.push_str(&format!("─ {cell} ─"));
        }
    }
    rows.iter().map(|r| format!("{r}── M ──\n")).collect()
}

/// `{"100": 1024}`.
pub fn format_histogram(hist: &Histogram) -> String {
    let items: Vec<String> = hist.iter().map(|(k, v)| format!("\"{k}\": {v}")).collect();
    format!("{{{}}}", items.join(", "))
}

pub fn cmd_inspect(
    target: InspectTarget,
    n: Option<usize>,
    config: &CliConfig,
    out: &mut dyn Write,
) -> Result<()> {
    config.validate()?;
    match target {
        InspectTarget::Siamese => {
            let n = n.unwrap_or(5);
            let grid = magic::siamese(n)?;
            writeln!(out, "Siamese magic square, n = {n}, M = {}", magic::magic_constant(n)?)?;
            writeln!(out, "{}", grid.to_matrix_string())?;
        }
        InspectTarget::Resources => {
            let estimate = revcircuit::oracle_resources(n.unwrap_or(3))?;
            write!(out, "{estimate}")?;
        }
        InspectTarget::DemoCircuit => {
            let circuit = revcircuit::demo_circuit();
            let mut state = StateVector::basis(circuit.num_qubits(), 0)?;
            revcircuit::run_gatelist(&mut state, &circuit)?;
            let hist = state.sample(config.shots, config.seed)?;
            write!(out, "{}", draw_circuit(&circuit))?;
            writeln!(out, "Measurement counts: {}", format_histogram(&hist))?;
        }
    }
    Ok(())
}
