use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tradeoff_curves::adaptation::{bound_report, DaInstance};
use tradeoff_curves::dist::{discretize_gmm, DistPair, DEFAULT_GRID_POINTS, DEFAULT_SIGMA_SPAN};
use tradeoff_curves::duality::{lorenz_curve_from_pr, pr_from_lorenz};
use tradeoff_curves::io;
use tradeoff_curves::lorenz::{lorenz_curve, roc_curve};
use tradeoff_curves::pr::{default_lambda_grid, pr_curve, DEFAULT_LAMBDA_COUNT};
use tradeoff_curves::renyi::frontier_from_pr;
use tradeoff_curves::scenario::{run_scenario, RunConfig, ScenarioSpec};
use tradeoff_curves::verify::{run_verification, VerifyConfig};
use tradeoff_curves::{Error, Result};

#[derive(Parser)]
#[command(name = "tradeoff", version, about = "Precision-recall, Lorenz, ROC and Renyi frontier curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Paired distribution JSON: {"atoms": [{"p": .., "q": ..}, ..]}
    #[arg(long = "p")]
    p: Option<PathBuf>,
    /// Paired JSON whose "q" column replaces Q from --p
    #[arg(long = "q", requires = "p")]
    q: Option<PathBuf>,
    /// Mixture JSON for P: {"components": [{"weight", "mean", "std"}, ..]}
    #[arg(long = "gmm-p", conflicts_with = "p", requires = "gmm_q")]
    gmm_p: Option<PathBuf>,
    #[arg(long = "gmm-q", requires = "gmm_p")]
    gmm_q: Option<PathBuf>,
    /// Discretization grid points for mixtures
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    grid: usize,
    /// Discretization half-width in units of the largest std
    #[arg(long, default_value_t = DEFAULT_SIGMA_SPAN)]
    span: f64,
}

impl Input {
    fn load(&self) -> Result<DistPair> {
        match (&self.p, &self.gmm_p, &self.gmm_q) {
            (Some(p), _, _) => {
                let pair = io::parse_distribution(p)?;
                match &self.q {
                    Some(q) => {
                        let other = io::parse_distribution(q)?;
                        DistPair::new(pair.p().clone(), other.q().clone())
                    }
                    None => Ok(pair),
                }
            }
            (None, Some(gp), Some(gq)) => {
                discretize_gmm(&io::parse_gmm(gp)?, &io::parse_gmm(gq)?, self.grid, self.span)
            }
            _ => Err(Error::Parse("need --p, or both --gmm-p and --gmm-q".into())),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct Output {
    /// Directory to write into instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

impl Output {
    fn emit(
        &self,
        stem: &str,
        csv: impl FnOnce(&mut Vec<u8>) -> Result<()>,
        json: impl FnOnce() -> serde_json::Value,
    ) -> Result<()> {
        let mut buf = Vec::new();
        let ext = match self.format {
            Format::Csv => {
                csv(&mut buf)?;
                "csv"
            }
            Format::Json => {
                buf = serde_json::to_vec_pretty(&json())?;
                buf.push(b'\n');
                "json"
            }
        };
        write_out(self.out.as_deref(), &format!("{stem}.{ext}"), &buf)
    }
}

fn write_out(dir: Option<&Path>, name: &str, bytes: &[u8]) -> Result<()> {
    match dir {
        Some(dir) => io::write_file(dir, name, bytes),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Error::Parse(format!("stdout: {e}"))),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    PrToLorenz,
    LorenzToPr,
}

#[derive(Subcommand)]
enum Command {
    /// Precision-recall curve
    Pr {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_LAMBDA_COUNT)]
        lambdas: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Lorenz curve breakpoints
    Lorenz {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// ROC curve (Lorenz curve reflected across the diagonal)
    Roc {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Order-infinity Renyi divergence frontier
    Frontier {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_LAMBDA_COUNT)]
        lambdas: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Convert between PR and Lorenz CSV files
    Convert {
        #[arg(long, value_enum)]
        direction: Direction,
        /// Input CSV in the source curve's schema
        input: PathBuf,
        /// Grid size for lorenz-to-pr
        #[arg(long, default_value_t = DEFAULT_LAMBDA_COUNT)]
        lambdas: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Domain-adaptation bounds for a classifier's error set
    DaBound {
        #[command(flatten)]
        input: Input,
        /// Mask JSON: {"error_atoms": [indices]}
        #[arg(long)]
        mask: PathBuf,
    },
    /// Run a named scenario and write all curves plus summary.json
    Scenario {
        /// identical, singular, mode-drop, mode-invent, mode-reweight or fig2-like
        name: String,
        #[arg(long, default_value_t = DEFAULT_LAMBDA_COUNT)]
        lambdas: usize,
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_SIGMA_SPAN)]
        span: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Optional error mask over the discretized support
        #[arg(long)]
        mask: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check closed forms against brute-force oracles on random instances
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        #[arg(long, default_value_t = 12)]
        max_support: usize,
    },
}

/// `Ok(false)` means a check ran and failed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Pr {
            input,
            lambdas,
            output,
        } => {
            let pr = pr_curve(&input.load()?, &default_lambda_grid(lambdas))?;
            output.emit("pr", |b| io::write_pr_csv(b, &pr), || io::pr_json(&pr))?;
        }
        Command::Lorenz { input, output } => {
            let curve = lorenz_curve(&input.load()?);
            output.emit(
                "lorenz",
                |b| io::write_lorenz_csv(b, &curve),
                || io::lorenz_json(&curve),
            )?;
        }
        Command::Roc { input, output } => {
            let roc = roc_curve(&lorenz_curve(&input.load()?));
            output.emit("roc", |b| io::write_roc_csv(b, &roc), || io::roc_json(&roc))?;
        }
        Command::Frontier {
            input,
            lambdas,
            output,
        } => {
            let pr = pr_curve(&input.load()?, &default_lambda_grid(lambdas))?;
            let f = frontier_from_pr(&pr);
            output.emit(
                "frontier",
                |b| io::write_frontier_csv(b, &f),
                || io::frontier_json(&f),
            )?;
        }
        Command::Convert {
            direction,
            input,
            lambdas,
            output,
        } => {
            let file = std::fs::File::open(&input).map_err(|e| Error::Io {
                path: input.clone(),
                source: e,
            })?;
            match direction {
                Direction::PrToLorenz => {
                    let curve = lorenz_curve_from_pr(&io::read_pr_csv(file)?)?;
                    output.emit(
                        "lorenz",
                        |b| io::write_lorenz_csv(b, &curve),
                        || io::lorenz_json(&curve),
                    )?;
                }
                Direction::LorenzToPr => {
                    let curve = io::read_lorenz_csv(file)?;
                    let pr = pr_from_lorenz(&curve, &default_lambda_grid(lambdas))?;
                    output.emit("pr", |b| io::write_pr_csv(b, &pr), || io::pr_json(&pr))?;
                }
            }
        }
        Command::DaBound { input, mask } => {
            let pair = input.load()?;
            let mask = io::parse_mask(&mask, pair.len())?;
            let report = bound_report(&DaInstance::new(pair, mask)?)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
        }
        Command::Scenario {
            name,
            lambdas,
            grid,
            span,
            out,
            mask,
            seed,
        } => {
            let spec = ScenarioSpec::by_name(&name)?;
            let cfg = RunConfig {
                lambda_count: lambdas,
                grid_points: grid,
                sigma_span: span,
                seed,
                out_dir: out,
            };
            let mask = match mask {
                Some(path) => Some(io::parse_mask(&path, spec.expand(&cfg)?.len())?),
                None => None,
            };
            let run = run_scenario(&spec, &cfg, mask.as_deref())?;
            println!("{}", serde_json::to_string_pretty(&run.summary)?);
            for c in run.summary.checks.iter().filter(|c| !c.passed) {
                eprintln!("check failed: {} ({})", c.name, c.detail);
            }
            return Ok(run.summary.passed());
        }
        Command::Verify {
            seed,
            instances,
            max_support,
        } => {
            let summary = run_verification(&VerifyConfig {
                seed,
                instances,
                max_support,
                ..VerifyConfig::default()
            })?;
            for r in &summary.worst {
                println!("{r}");
            }
            for v in &summary.violations {
                println!("VIOLATION {v}");
            }
            println!(
                "{} instances, {} checks, {} violations (seed {seed})",
                summary.instances,
                summary.checks,
                summary.violations.len()
            );
            return Ok(summary.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_violation() { 2 } else { 1 })
        }
    }
}
