use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qsearch::bench::ReportFormat;
use qsearch::cli::{self, CliConfig, Comparison, DomainChoice, InitChoice, InspectTarget};

#[derive(Parser)]
#[command(name = "qsearch", version, about = "Grover search for magic squares, with classical baselines")]
struct Args {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Measurement shots for histogram output.
    #[arg(long, global = true, default_value_t = 1024)]
    shots: u64,
    /// Initial superposition: uniform over the domain, or over the whole register.
    #[arg(long, global = true, value_enum, default_value_t = InitArg::Exact)]
    init: InitArg,
    /// Override the planned Grover iteration count.
    #[arg(long, global = true)]
    iterations: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum InitArg {
    Exact,
    Padded,
}

#[derive(Clone, Copy, ValueEnum)]
enum DomainArg {
    Full,
    Reduced,
}

#[derive(Clone, Copy, ValueEnum)]
enum CompareArg {
    Brute,
    Backtrack,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum InspectArg {
    Siamese,
    Resources,
    DemoCircuit,
}

#[derive(Subcommand)]
enum Command {
    /// Interactive index-search game on a Siamese square.
    Game {
        #[arg(long, default_value_t = 5)]
        size: usize,
    },
    /// Grover constraint search for an n×n magic square.
    Generate {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value_t = DomainArg::Full)]
        domain: DomainArg,
    },
    /// Compare a classical search with the simulated Grover search.
    Bench {
        #[arg(long, value_enum)]
        compare: CompareArg,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Markdown)]
        format: FormatArg,
        /// Write the report here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report zero elapsed times so output is reproducible.
        #[arg(long)]
        no_timings: bool,
    },
    /// Print a Siamese square, an oracle resource estimate, or run the 3-qubit demo circuit.
    Inspect {
        #[arg(value_enum)]
        target: InspectArg,
        #[arg(long)]
        n: Option<usize>,
    },
}

fn run(args: Args) -> qsearch::Result<i32> {
    let mut config = CliConfig {
        seed: args.seed,
        shots: args.shots,
        init_mode: match args.init {
            InitArg::Exact => InitChoice::Exact,
            InitArg::Padded => InitChoice::Padded,
        },
        iterations_override: args.iterations,
        ..CliConfig::default()
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match args.command {
        Command::Game { size } => {
            let stdin = io::stdin();
            cli::cmd_game(size, &config, &mut stdin.lock(), &mut out)?;
        }
        Command::Generate { n, domain } => {
            let domain = match domain {
                DomainArg::Full => DomainChoice::Full,
                DomainArg::Reduced => DomainChoice::Reduced,
            };
            eprintln!("running Grover constraint search for n = {n}...");
            cli::cmd_generate(n, domain, &config, &mut out)?;
        }
        Command::Bench { compare, n, format, out: path, no_timings } => {
            config.report_format = match format {
                FormatArg::Json => ReportFormat::Json,
                FormatArg::Csv => ReportFormat::Csv,
                FormatArg::Markdown => ReportFormat::Markdown,
            };
            config.output_path = path;
            config.record_timings = !no_timings;
            let comparison = match compare {
                CompareArg::Brute => Comparison::Brute,
                CompareArg::Backtrack => Comparison::Backtrack,
            };
            eprintln!("running comparison for n = {n}...");
            let outcome = cli::cmd_bench(comparison, n, &config)?;
            cli::write_output(&config, &outcome.text, &mut out)?;
            return Ok(outcome.exit_code());
        }
        Command::Inspect { target, n } => {
            let target = match target {
                InspectArg::Siamese => InspectTarget::Siamese,
                InspectArg::Resources => InspectTarget::Resources,
                InspectArg::DemoCircuit => InspectTarget::DemoCircuit,
            };
            cli::cmd_inspect(target, n, &config, &mut out)?;
        }
    }
    out.flush()?;
    Ok(cli::EXIT_OK)
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(cli::exit_code(&err) as u8)
        }
    }
}
