use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use schwarz_core::harness::{
    corpus_generate, emit_plot_data, parse_suites, run_suite, search_runs, weierstrass_corpus, CorpusEntry, SuiteConfig,
};
use schwarz_core::harness::suites::SEARCH_RESTARTS;
use schwarz_core::search::{sharpness_report, FamilySpec};

#[derive(Parser)]
#[command(name = "schwarz", version, about = "Numerical checks of boundary Schwarz-type inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and write report.json, margins.csv and timing.json.
    Verify(VerifyArgs),
    /// Multi-start sharpness search over one family; prints or writes the JSON report.
    Search(SearchArgs),
    /// Dump the seeded corpus as JSON.
    Corpus(CorpusArgs),
    /// Write CSV files for plotting.
    PlotData(PlotArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Flat key = value file; command-line flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Comma-separated subset of ball,holo,minimal,search.
    #[arg(long)]
    suites: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    /// Comma-separated complex dimensions for the ball and holo suites.
    #[arg(long)]
    dimensions: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override one check tolerance, NAME=VALUE; repeatable.
    #[arg(long = "tolerance", value_name = "NAME=VALUE")]
    tolerances: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    /// `λ z b_c(z)` over modulus and phase.
    OneD,
    /// The same with phase restricted to [π/4, π].
    OneDRestricted,
    /// `φ_{−b}(z b_c(z) u)` in C^m.
    Md,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum, default_value = "one-d")]
    family: FamilyArg,
    /// Dimension for the md family.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = SEARCH_RESTARTS)]
    restarts: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Complex dimension of the holomorphic corpus.
    #[arg(long, default_value_t = 1)]
    dim: usize,
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Dump the Weierstrass corpus instead.
    #[arg(long)]
    minimal: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = SEARCH_RESTARTS)]
    restarts: usize,
    #[arg(long)]
    out: PathBuf,
}

fn emit(body: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let mut config = match &args.config {
        Some(path) => SuiteConfig::load(path).with_context(|| format!("reading config {}", path.display()))?,
        None => SuiteConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(s) = &args.suites {
        config.suites = parse_suites(s)?;
    }
    if let Some(n) = args.samples {
        config.samples_per_check = n;
    }
    if let Some(d) = &args.dimensions {
        config.apply("dimensions", d)?;
    }
    if let Some(out) = args.out {
        config.out = Some(out);
    }
    for t in &args.tolerances {
        config.apply("tolerance", t)?;
    }
    let report = run_suite(&config)?;
    let dir = config.out.clone().unwrap_or_else(|| PathBuf::from("schwarz-report"));
    report.write(&dir)?;
    for (name, suite) in &report.suites {
        let status = if suite.pass() { "pass" } else { "FAIL" };
        println!(
            "{name:8} {status}  cases={} failures={} errors={} min_margin={:e}",
            suite.cases,
            suite.failures.len(),
            suite.errors.len(),
            suite.min_margin
        );
    }
    println!("report written to {}", dir.display());
    Ok(report.pass)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::Search(args) => {
            let spec = match args.family {
                FamilyArg::OneD => FamilySpec::family_1d(),
                FamilyArg::OneDRestricted => FamilySpec::family_1d_phases(std::f64::consts::FRAC_PI_4, std::f64::consts::PI),
                FamilyArg::Md => {
                    if args.dim == 0 {
                        bail!("--dim must be positive");
                    }
                    FamilySpec::family_md(args.dim)
                }
            };
            let report = sharpness_report(&spec, args.restarts, args.seed)?;
            emit(&(serde_json::to_string_pretty(&report)? + "\n"), args.out.as_ref())?;
            Ok(true)
        }
        Command::Corpus(args) => {
            let entries: Vec<CorpusEntry> = if args.minimal {
                weierstrass_corpus(args.seed, args.count).iter().map(CorpusEntry::from).collect()
            } else {
                if args.dim == 0 {
                    bail!("--dim must be positive");
                }
                corpus_generate(args.seed, args.dim, args.count)?.iter().map(CorpusEntry::from).collect()
            };
            emit(&(serde_json::to_string_pretty(&entries)? + "\n"), args.out.as_ref())?;
            Ok(true)
        }
        Command::PlotData(args) => {
            let searches = search_runs(args.seed, args.restarts)?;
            for path in emit_plot_data(&searches, &args.out)? {
                println!("{}", path.display());
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
