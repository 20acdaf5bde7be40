//! Command-line front end of the `qrenyi` binary.
//!
//! Exit codes: 0 on success, 1 when a suite reports violations or a
//! computation fails, 2 on usage and parameter-range errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::alpha::{parse_alpha_list, Alpha};
use crate::conditional::{entropy, EntropyKind, OptimizerConfig};
use crate::divergence::{d_alpha_z, d_old, d_sandwiched};
use crate::error::{Error, Result};
use crate::io::{read_operator, read_state, Document};
use crate::layout::SubsystemLayout;
use crate::objects::{random_density, random_pure_state, KrausChannel, Povm, PureState, SeededRng};
use crate::verify::{self, Suite, SuiteSpec, DEFAULT_GRID};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "qrenyi",
    version,
    about = "Quantum Rényi divergences and conditional entropies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one conditional entropy or divergence of a state file.
    Compute(ComputeArgs),
    /// Run a randomized property suite and write its report.
    Verify(VerifyArgs),
    /// Tabulate entropies over a grid of orders as CSV.
    Sweep(SweepArgs),
    /// Write a random state, channel or measurement file.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Quantity {
    OldDown,
    OldUp,
    SandwichedDown,
    SandwichedUp,
    DOld,
    DSandwiched,
    DAlphaZ,
}

impl Quantity {
    fn entropy_kind(self) -> Option<EntropyKind> {
        match self {
            Quantity::OldDown => Some(EntropyKind::OLD_DOWN),
            Quantity::OldUp => Some(EntropyKind::OLD_UP),
            Quantity::SandwichedDown => Some(EntropyKind::SANDWICHED_DOWN),
            Quantity::SandwichedUp => Some(EntropyKind::SANDWICHED_UP),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Quantity::DOld => "d-old",
            Quantity::DSandwiched => "d-sandwiched",
            Quantity::DAlphaZ => "d-alpha-z",
            other => other.entropy_kind().expect("entropy kinds").name(),
        }
    }
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[arg(long, value_enum)]
    kind: Quantity,
    /// Order: a number, or `inf`.
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    #[arg(long, default_value = "A")]
    target: String,
    #[arg(long, default_value = "B")]
    cond: String,
    #[arg(long)]
    state: PathBuf,
    /// Second argument of the divergences.
    #[arg(long)]
    sigma: Option<PathBuf>,
    /// `z` of the α-z divergence.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<f64>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    /// Comma-separated dimensions, e.g. `2,3,2`.
    #[arg(long)]
    dims: Option<String>,
    /// Comma-separated orders, e.g. `0,0.5,inf`.
    #[arg(long, allow_hyphen_values = true)]
    alphas: Option<String>,
    #[arg(long, default_value_t = verify::DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, allow_hyphen_values = true)]
    tolerance: Option<f64>,
    /// Report path; the summary always goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    state: PathBuf,
    /// Entropy kinds to tabulate; all four when omitted.
    #[arg(long, value_enum, value_delimiter = ',')]
    kind: Vec<Quantity>,
    #[arg(long, allow_hyphen_values = true)]
    alphas: Option<String>,
    #[arg(long, default_value = "A")]
    target: String,
    #[arg(long, default_value = "B")]
    cond: String,
    /// CSV path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(subcommand)]
    what: GenKind,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output path; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GenKind {
    /// Random mixed state (Hilbert-Schmidt ensemble at full rank).
    Density {
        #[arg(long)]
        dims: String,
        #[arg(long)]
        labels: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Haar-random pure state.
    Pure {
        #[arg(long)]
        dims: String,
        #[arg(long)]
        labels: Option<String>,
    },
    /// Maximally entangled state on `A ⊗ B`.
    MaxEntangled {
        #[arg(long, default_value_t = 2)]
        dim: usize,
    },
    /// Random channel from a Haar isometry.
    Channel {
        #[arg(long)]
        dim_in: usize,
        #[arg(long)]
        dim_out: usize,
        #[arg(long, default_value_t = 2)]
        env: usize,
    },
    /// Random measurement; `--basis` gives a random orthonormal basis.
    Povm {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        outcomes: Option<usize>,
        #[arg(long)]
        basis: bool,
    },
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Output goes to stdout, diagnostics to stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let outcome = match cli.command {
        Command::Compute(a) => compute(a, &mut out),
        Command::Verify(a) => verify_suite(a, &mut out),
        Command::Sweep(a) => sweep(a, &mut out),
        Command::Gen(a) => gen(a, &mut out),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidAlpha(_) | Error::InvalidSuite(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidSuite(msg.into())
}

fn parse_dims(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("cannot parse dimension `{t}` in `{s}`")))
        })
        .collect()
}

fn layout_from(dims: &str, labels: Option<&str>) -> Result<SubsystemLayout> {
    let dims = parse_dims(dims)?;
    match labels {
        None => SubsystemLayout::from_dims(&dims),
        Some(l) => SubsystemLayout::new(l.split(',').map(str::trim).collect(), dims),
    }
    .map_err(|e| usage(e.to_string()))
}

fn compute(a: ComputeArgs, out: &mut impl Write) -> Result<i32> {
    let alpha_text = a.alpha.trim();
    let (value, extra) = match a.kind.entropy_kind() {
        Some(kind) => {
            let alpha: Alpha = alpha_text.parse()?;
            let rho = read_state(&a.state)?;
            let r = entropy(
                kind,
                &rho,
                &a.target,
                &a.cond,
                alpha,
                &OptimizerConfig::default(),
            )?;
            let sigma = r
                .optimizer_sigma
                .as_ref()
                .map(|s| Document::Density(s.clone()).to_value());
            (
                r.value,
                json!({
                    "target": a.target,
                    "cond": a.cond,
                    "converged": r.converged,
                    "best_effort": r.best_effort,
                    "iterations": r.iterations,
                    "optimizer_sigma": sigma,
                }),
            )
        }
        None => {
            let sigma_path = a
                .sigma
                .as_ref()
                .ok_or_else(|| usage(format!("--kind {} needs --sigma", a.kind.name())))?;
            let (rho, _) = read_operator(&a.state)?;
            let (sigma, _) = read_operator(sigma_path)?;
            let value = match a.kind {
                Quantity::DOld => d_old(&rho, &sigma, alpha_text.parse()?)?,
                Quantity::DSandwiched => d_sandwiched(&rho, &sigma, alpha_text.parse()?)?,
                _ => {
                    let z = a.z.ok_or_else(|| usage("--kind d-alpha-z needs --z"))?;
                    let alpha: f64 = alpha_text.parse().map_err(|_| {
                        Error::InvalidAlpha(format!("cannot parse `{alpha_text}` as an order"))
                    })?;
                    d_alpha_z(&rho, &sigma, alpha, z)?
                }
            };
            (value, json!({ "z": a.z }))
        }
    };
    if a.json {
        let mut doc = json!({ "kind": a.kind.name(), "alpha": alpha_text, "value": value });
        if let (Some(d), Some(e)) = (doc.as_object_mut(), extra.as_object()) {
            d.extend(
                e.iter()
                    .filter(|(_, v)| !v.is_null())
                    .map(|(k, v)| (k.clone(), v.clone())),
            );
        }
        writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
    } else {
        writeln!(out, "{value}")?;
    }
    Ok(EXIT_OK)
}

fn verify_suite(a: VerifyArgs, out: &mut impl Write) -> Result<i32> {
    let suite: Suite = a.suite.parse()?;
    let mut spec = SuiteSpec::new(suite).trials(a.trials).seed(a.seed);
    if let Some(d) = &a.dims {
        spec = spec.dims(&parse_dims(d)?);
    }
    if let Some(list) = &a.alphas {
        spec = spec.alphas(&parse_alpha_list(list)?);
    }
    if let Some(t) = a.tolerance {
        spec = spec.tolerance(t);
    }
    let report = verify::run(&spec)?;
    if let Some(path) = &a.out {
        std::fs::write(path, report.to_json() + "\n")?;
    }
    writeln!(out, "{report}")?;
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}

fn sweep(a: SweepArgs, out: &mut impl Write) -> Result<i32> {
    let kinds: Vec<EntropyKind> = if a.kind.is_empty() {
        EntropyKind::ALL.to_vec()
    } else {
        a.kind
            .iter()
            .map(|q| {
                q.entropy_kind()
                    .ok_or_else(|| usage(format!("sweep tabulates entropies, not {}", q.name())))
            })
            .collect::<Result<_>>()?
    };
    let alphas = match &a.alphas {
        Some(list) => parse_alpha_list(list)?,
        None => DEFAULT_GRID.to_vec(),
    };
    let rho = read_state(&a.state)?;
    let config = OptimizerConfig::default();
    let sink: Box<dyn Write + '_> = match &a.out {
        Some(path) => Box::new(std::fs::File::create(path)?),
        None => Box::new(out),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["alpha", "kind", "value"])
        .map_err(csv_error)?;
    for &alpha in &alphas {
        for &kind in &kinds {
            let r = entropy(kind, &rho, &a.target, &a.cond, alpha, &config)?;
            w.write_record([
                alpha.to_string(),
                kind.name().to_string(),
                r.value.to_string(),
            ])
            .map_err(csv_error)?;
        }
    }
    w.flush()?;
    Ok(EXIT_OK)
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

fn gen(a: GenArgs, out: &mut impl Write) -> Result<i32> {
    let mut rng = SeededRng::new(a.seed);
    let doc = match a.what {
        GenKind::Density { dims, labels, rank } => {
            let layout = layout_from(&dims, labels.as_deref())?;
            let rank = rank.unwrap_or(layout.total_dim());
            Document::Density(
                random_density(&layout, rank, &mut rng).map_err(|e| usage(e.to_string()))?,
            )
        }
        GenKind::Pure { dims, labels } => {
            let layout = layout_from(&dims, labels.as_deref())?;
            Document::Pure(random_pure_state(&layout, &mut rng))
        }
        GenKind::MaxEntangled { dim } => {
            Document::Pure(PureState::maximally_entangled(dim, ["A", "B"])?)
        }
        GenKind::Channel {
            dim_in,
            dim_out,
            env,
        } => Document::Channel(
            KrausChannel::random(dim_in, dim_out, env, &mut rng)
                .map_err(|e| usage(e.to_string()))?,
        ),
        GenKind::Povm {
            dim,
            outcomes,
            basis,
        } => {
            if basis {
                Document::Povm(Povm::random_basis(dim, &mut rng))
            } else {
                let n = outcomes.unwrap_or(dim);
                Document::Povm(Povm::random(dim, n, &mut rng).map_err(|e| usage(e.to_string()))?)
            }
        }
    };
    match &a.out {
        Some(path) => doc.write(path)?,
        None => writeln!(out, "{}", doc.to_json())?,
    }
    Ok(EXIT_OK)
}
