//! Command-line front end: reads a JSON configuration of `ρ̄`, runs one
//! computation, and writes a JSON report.

pub mod commands;
pub mod config;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use modp_kisin::d0::JhReading;
use modp_kisin::sweep::{with_threads, Execution};
use modp_kisin::{ErrorKind, ExtendedWeylElt};

use commands::TangentFlags;
use config::{Config, ModeArg};
use report::{Body, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] modp_kisin::Error),
    #[error("i/o: {0}")]
    Io(String),
    /// A computed check came out false.
    #[error("check failed: {0}")]
    Check(String),
}

impl CliError {
    /// 1 for bad input, 2 for a violated precondition, 3 for an internal
    /// failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => 1,
            CliError::Core(e) => match e.kind() {
                ErrorKind::Invalid => 1,
                ErrorKind::Precondition => 2,
                ErrorKind::Internal => 3,
            },
            CliError::Check(_) => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    #[default]
    Absolute,
    Signed,
}

#[derive(Debug, Parser)]
#[command(name = "modp-kisin", version, about = "Kisin modules, Serre weights and tangent checks for mod-p GL2 representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON configuration of rho.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Override the configured genericity mode.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    /// Override the configured seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Restrict to one w~, as comma-separated indices (1 = t(2,1), 2 = wt(2,1), 3 = t(1,2)).
    #[arg(long, global = true, value_delimiter = ',')]
    pub wtilde: Option<Vec<u8>>,
    /// Restrict to one Serre weight by its b-vector, comma-separated.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub sigma: Option<Vec<i64>>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Inertia exponents and genericity.
    Describe,
    /// The Serre weights W(rho).
    Weights,
    /// The admissible set and its star images.
    Adm,
    /// X(rho) and each X(sigma).
    Xset,
    /// Lowest alcove presentations of the types tau_w for w in Adm.
    Types,
    /// Kisin matrices with shape, gauge, height and recovery checks.
    Kisin {
        /// Every w~ in X(rho) (the default unless --wtilde is given).
        #[arg(long)]
        all: bool,
    },
    /// Assemble and solve the tangent system.
    Tangent {
        /// Truncation degree D.
        #[arg(long)]
        degree: Option<i64>,
        /// Drop the x22 vanishing row at j0.
        #[arg(long)]
        drop_x22: bool,
    },
    /// Jordan-Hölder structure of the components of D0.
    D0 {
        #[arg(long, value_enum, default_value_t)]
        reading: ReadingArg,
    },
    /// Brute-force oracle suites.
    Oracle {
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

fn exec(jobs: Option<usize>) -> Execution {
    match jobs {
        Some(1) => Execution::Sequential,
        _ => Execution::default(),
    }
}

/// Compute the report; `Err` carries the failure class.
pub fn build_report(cli: &Cli, mut config: Config) -> Result<Report, CliError> {
    if let Some(m) = cli.mode {
        config.mode = m;
    }
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    let rho = config.rho()?;
    let w_tilde = cli.wtilde.as_deref().map(ExtendedWeylElt::from_indices).transpose()?;
    let sigma = cli.sigma.as_ref();
    let ex = exec(cli.jobs);
    let body = with_threads(cli.jobs, || -> Result<Body, CliError> {
        Ok(match &cli.command {
            Command::Describe => Body::Describe(commands::describe(&rho)),
            Command::Weights => Body::Weights(commands::weights(&rho)?),
            Command::Adm => Body::Adm(commands::adm(rho.f)),
            Command::Xset => Body::Xset(commands::xset(&rho, sigma)?),
            Command::Types => Body::Types(commands::types(&rho, w_tilde.as_ref())?),
            Command::Kisin { all } => {
                let only = if *all { None } else { w_tilde.as_ref() };
                Body::Kisin(commands::kisin(&rho, only, ex)?)
            }
            Command::Tangent { degree, drop_x22 } => {
                let flags = TangentFlags { degree: *degree, drop_x22_j0: *drop_x22 };
                Body::Tangent(commands::tangent(&rho, sigma, &flags, ex)?)
            }
            Command::D0 { reading } => {
                let r = match reading {
                    ReadingArg::Absolute => JhReading::Absolute,
                    ReadingArg::Signed => JhReading::Signed,
                };
                Body::D0(commands::d0(&rho, r, ex)?)
            }
            Command::Oracle { samples } => Body::Oracle(commands::oracle(&rho, config.seed, *samples, ex)?),
        })
    })?;
    Ok(Report { config, body })
}

/// Checks that should hold on every valid input; a false one is an
/// internal failure.
pub fn failed_checks(report: &Report) -> Vec<String> {
    let mut out = Vec::new();
    match &report.body {
        Body::Kisin(ks) => {
            for k in ks {
                if !k.recovery || !k.height.iter().all(|&h| h) {
                    out.push(format!("kisin {}", k.w_tilde.name));
                }
            }
        }
        Body::Xset(x) if !x.union_matches => out.push("X(rho) differs from the union of X(sigma)".into()),
        Body::D0(d) => {
            if !(d.multiplicity_free && d.weights_occur_once && d.socles_enumerate && d.downward_closed && d.partial_orders) {
                out.push("D0 checks".into());
            }
        }
        Body::Oracle(o)
            if o.coset_agree != o.coset_targets || o.recovery_agree != o.recovery_pairs || o.table_agree != o.table_rows =>
        {
            out.push("oracle disagreement".into())
        }
        _ => {}
    }
    out
}

pub fn render(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize") + "\n"
}

/// Run the parsed command line; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match run_inner(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn run_inner(cli: &Cli) -> Result<(), CliError> {
    let path = cli.config.as_ref().ok_or_else(|| CliError::Config("--config is required".into()))?;
    let config = Config::load(path)?;
    let report = build_report(cli, config)?;
    let text = render(&report);
    match &cli.out {
        Some(p) => std::fs::write(p, &text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        None => print!("{text}"),
    }
    let failed = failed_checks(&report);
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Check(failed.join("; ")))
    }
}
