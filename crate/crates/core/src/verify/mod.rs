//! Randomized property suites and their reports.
//!
//! A [`SuiteSpec`] names a suite, the subsystem dimensions, the orders to test,
//! the number of trials and a seed. [`run`] samples one independent input per
//! trial, evaluates every check of the suite and merges the records in trial
//! order, so that a report depends only on its spec.
//!
//! Residuals are signed for inequalities: positive means the inequality is
//! violated by that amount. Equalities use the absolute difference. A record
//! is a violation when its residual exceeds the tolerance or is not a number.

mod classical;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::alpha::Alpha;
use crate::error::{Error, Result};
use crate::objects::{Povm, SeededRng};
use crate::operator::{ComplexMatrix, HermitianOperator};

pub use classical::JointTable;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_SEED: u64 = 0;
/// Largest total dimension a suite accepts.
pub const MAX_TOTAL_DIM: usize = 64;

/// Orders used when a [`SuiteSpec`] lists none, before filtering by the suite's range.
pub const DEFAULT_GRID: [Alpha; 9] = [
    Alpha::Zero,
    Alpha::Finite(0.25),
    Alpha::Finite(0.5),
    Alpha::Finite(0.75),
    Alpha::One,
    Alpha::Finite(1.5),
    Alpha::Finite(2.0),
    Alpha::Finite(3.0),
    Alpha::Infinity,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Duality1,
    Duality2,
    Duality3,
    Ordering,
    Corollary,
    MonotoneAlpha,
    Dpi,
    Holder,
    ConverseBound,
    Uncertainty1,
    Uncertainty2,
    Uncertainty3,
    MaassenUffink,
    ClassicalOracle,
}

/// Number of subsystem dimensions a suite expects in `dims`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum DimsShape {
    Exactly(usize),
    /// A list of single-system dimensions, one drawn per trial.
    Choices,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::Duality1,
        Suite::Duality2,
        Suite::Duality3,
        Suite::Ordering,
        Suite::Corollary,
        Suite::MonotoneAlpha,
        Suite::Dpi,
        Suite::Holder,
        Suite::ConverseBound,
        Suite::Uncertainty1,
        Suite::Uncertainty2,
        Suite::Uncertainty3,
        Suite::MaassenUffink,
        Suite::ClassicalOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Duality1 => "duality1",
            Suite::Duality2 => "duality2",
            Suite::Duality3 => "duality3",
            Suite::Ordering => "ordering",
            Suite::Corollary => "corollary",
            Suite::MonotoneAlpha => "monotone-alpha",
            Suite::Dpi => "dpi",
            Suite::Holder => "holder",
            Suite::ConverseBound => "converse-bound",
            Suite::Uncertainty1 => "uncertainty1",
            Suite::Uncertainty2 => "uncertainty2",
            Suite::Uncertainty3 => "uncertainty3",
            Suite::MaassenUffink => "maassen-uffink",
            Suite::ClassicalOracle => "classical-oracle",
        }
    }

    pub fn default_dims(self) -> Vec<usize> {
        match self {
            Suite::Duality1 | Suite::Duality2 | Suite::Duality3 => vec![2, 2, 2],
            Suite::Uncertainty1 | Suite::Uncertainty2 | Suite::Uncertainty3 => vec![2, 2, 2],
            Suite::Ordering | Suite::Corollary | Suite::MonotoneAlpha | Suite::Dpi => vec![2, 2],
            Suite::Holder => vec![2, 3, 4, 5, 6],
            Suite::ConverseBound => vec![2, 3, 4],
            Suite::MaassenUffink => vec![2],
            Suite::ClassicalOracle => vec![2, 3],
        }
    }

    fn dims_shape(self) -> DimsShape {
        match self {
            Suite::Duality1 | Suite::Duality2 | Suite::Duality3 => DimsShape::Exactly(3),
            Suite::Uncertainty1 | Suite::Uncertainty2 | Suite::Uncertainty3 => {
                DimsShape::Exactly(3)
            }
            Suite::Ordering | Suite::Corollary | Suite::MonotoneAlpha | Suite::Dpi => {
                DimsShape::Exactly(2)
            }
            Suite::ClassicalOracle => DimsShape::Exactly(2),
            Suite::MaassenUffink => DimsShape::Exactly(1),
            Suite::Holder | Suite::ConverseBound => DimsShape::Choices,
        }
    }

    /// Whether the suite is defined at this order. For the Hölder suite the
    /// orders are the exponents `p`.
    pub fn admits(self, a: Alpha) -> bool {
        match self {
            Suite::Duality1 | Suite::Uncertainty1 | Suite::Uncertainty3 => a.in_range(0.0, 2.0),
            Suite::Duality2 | Suite::Corollary | Suite::Uncertainty2 | Suite::MaassenUffink => {
                a.in_range(0.5, f64::INFINITY)
            }
            Suite::Duality3
            | Suite::Ordering
            | Suite::MonotoneAlpha
            | Suite::Dpi
            | Suite::ClassicalOracle => true,
            Suite::Holder => matches!(a, Alpha::Finite(_)),
            Suite::ConverseBound => matches!(a, Alpha::Finite(_) | Alpha::One),
        }
    }

    /// Human-readable form of [`Suite::admits`] for diagnostics.
    fn range_text(self) -> &'static str {
        match self {
            Suite::Duality1 => "α ∈ [0, 2] so that β = 2 − α ∈ [0, 2]",
            Suite::Uncertainty1 => "α ∈ [0, 2] so that β = 2 − α ∈ [0, 2]",
            Suite::Uncertainty3 => "α ∈ [0, 2] so that β = 1/α ∈ [½, ∞]",
            Suite::Duality2 | Suite::Uncertainty2 | Suite::MaassenUffink => {
                "α ∈ [½, ∞] so that 1/α + 1/β = 2 has β ∈ [½, ∞]"
            }
            Suite::Corollary => "α ∈ [½, ∞]",
            Suite::Holder => "finite exponents p > 0 with p ≠ 1",
            Suite::ConverseBound => "finite α > 0",
            _ => "α ≥ 0",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('_', "-");
        if key == "mosonyi" {
            return Ok(Suite::ConverseBound);
        }
        Suite::ALL
            .into_iter()
            .find(|suite| {
                suite.name() == key || suite.name().replace('-', "") == key.replace('-', "")
            })
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
                Error::InvalidSuite(format!(
                    "unknown suite `{s}`; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

impl Serialize for Suite {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Parameters of one suite run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteSpec {
    pub suite: Suite,
    pub dims: Vec<usize>,
    /// Empty means the default grid filtered by [`Suite::admits`]. Reports
    /// echo the resolved list.
    pub alphas: Vec<Alpha>,
    pub trials: usize,
    pub seed: u64,
    /// Overrides the per-check default tolerances.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl SuiteSpec {
    pub fn new(suite: Suite) -> Self {
        Self {
            suite,
            dims: suite.default_dims(),
            alphas: Vec::new(),
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            tolerance: None,
        }
    }

    pub fn dims(mut self, dims: &[usize]) -> Self {
        self.dims = dims.to_vec();
        self
    }

    pub fn alphas(mut self, alphas: &[Alpha]) -> Self {
        self.alphas = alphas.to_vec();
        self
    }

    pub fn trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = Some(tolerance);
        self
    }

    /// The orders a run will use.
    pub fn resolved_alphas(&self) -> Vec<Alpha> {
        if self.alphas.is_empty() {
            DEFAULT_GRID
                .into_iter()
                .filter(|&a| self.suite.admits(a))
                .collect()
        } else {
            self.alphas.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let suite = self.suite;
        let bad = |msg: String| Err(Error::InvalidSuite(format!("{suite}: {msg}")));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if let Some(t) = self.tolerance {
            if !(t >= 0.0) || !t.is_finite() {
                return bad(format!(
                    "tolerance must be a finite non-negative number, got {t}"
                ));
            }
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return bad(format!("dimensions must be positive, got {:?}", self.dims));
        }
        match suite.dims_shape() {
            DimsShape::Exactly(n) if self.dims.len() != n => {
                return bad(format!("expects {n} dimensions, got {:?}", self.dims));
            }
            DimsShape::Exactly(_) => {
                let total: usize = self.dims.iter().product();
                if total > MAX_TOTAL_DIM {
                    return bad(format!("total dimension {total} exceeds {MAX_TOTAL_DIM}"));
                }
            }
            DimsShape::Choices => {
                if let Some(&d) = self.dims.iter().find(|&&d| d > MAX_TOTAL_DIM) {
                    return bad(format!("dimension {d} exceeds {MAX_TOTAL_DIM}"));
                }
            }
        }
        let measured_dim = match suite {
            Suite::Uncertainty1
            | Suite::Uncertainty2
            | Suite::Uncertainty3
            | Suite::MaassenUffink => Some(self.dims[0]),
            _ => None,
        };
        if measured_dim == Some(1) {
            return bad("the measured system needs dimension at least 2".into());
        }
        for &a in &self.alphas {
            if !suite.admits(a) {
                return bad(format!(
                    "order {a} is outside the valid range ({})",
                    suite.range_text()
                ));
            }
        }
        let alphas = self.resolved_alphas();
        if alphas.is_empty() {
            return bad("no orders to test".into());
        }
        if suite == Suite::MonotoneAlpha && alphas.len() < 2 {
            return bad("needs at least two orders".into());
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    /// `lhs = rhs`; residual `|lhs − rhs|`.
    #[serde(rename = "eq")]
    Equal,
    /// `lhs ≤ rhs`; residual `lhs − rhs`.
    #[serde(rename = "le")]
    AtMost,
    /// `lhs ≥ rhs`; residual `rhs − lhs`.
    #[serde(rename = "ge")]
    AtLeast,
}

impl Relation {
    pub fn residual(self, lhs: f64, rhs: f64) -> f64 {
        match self {
            Relation::Equal if lhs == rhs => 0.0,
            Relation::Equal => (lhs - rhs).abs(),
            Relation::AtMost if lhs == rhs => 0.0,
            Relation::AtMost => lhs - rhs,
            Relation::AtLeast if lhs == rhs => 0.0,
            Relation::AtLeast => rhs - lhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub check: String,
    pub alpha: Alpha,
    /// Second order of the check, when it has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Alpha>,
    /// First 64 bits of the SHA-256 of the sampled inputs.
    pub digest: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub converged: bool,
    pub violated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub checks: usize,
    /// Over converged records only.
    pub max_residual: f64,
    pub mean_residual: f64,
    pub violations: usize,
    pub not_converged: usize,
    pub errors: usize,
    pub runtime_ms: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub suite: SuiteSpec,
    pub trials: Vec<TrialRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.summary.violations == 0 && self.summary.errors == 0
    }

    /// Fraction of records whose optimizations converged.
    pub fn convergence_rate(&self) -> f64 {
        let n = self.trials.len().max(1) as f64;
        1.0 - self.summary.not_converged as f64 / n
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// The per-trial records alone, which do not depend on timing.
    pub fn trials_json(&self) -> String {
        serde_json::to_string(&self.trials).expect("reports always serialize")
    }

    pub fn records(&self, check: &str) -> impl Iterator<Item = &TrialRecord> + '_ {
        let check = check.to_string();
        self.trials.iter().filter(move |r| r.check == check)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = &self.summary;
        write!(
            f,
            "{}: {} checks over {} trials, max residual {:.3e}, mean {:.3e}, {} violations, {} not converged, {} errors ({} ms)",
            self.suite.suite,
            s.checks,
            self.suite.trials,
            s.max_residual,
            s.mean_residual,
            s.violations,
            s.not_converged,
            s.errors,
            s.runtime_ms
        )
    }
}

/// Hashes every input of a trial.
#[derive(Default)]
pub(crate) struct InputDigest(Sha256);

impl InputDigest {
    pub fn operator(&mut self, m: &HermitianOperator) -> &mut Self {
        self.matrix(m.matrix())
    }

    pub fn matrix(&mut self, m: &ComplexMatrix) -> &mut Self {
        for z in m.iter() {
            self.0.update(z.re.to_le_bytes());
            self.0.update(z.im.to_le_bytes());
        }
        self
    }

    pub fn finish(self) -> String {
        self.0.finalize()[..8]
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

/// Collects the records of one trial.
pub(crate) struct TrialLog {
    trial: usize,
    digest: String,
    tolerance: Option<f64>,
    records: Vec<TrialRecord>,
}

/// One evaluated check before tolerance resolution.
pub(crate) struct Check<'a> {
    pub name: &'a str,
    pub alpha: Alpha,
    pub beta: Option<Alpha>,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub tolerance: f64,
    pub converged: bool,
}

impl Check<'_> {
    pub fn residual(&self) -> f64 {
        self.relation.residual(self.lhs, self.rhs)
    }
}

impl TrialLog {
    fn new(trial: usize, tolerance: Option<f64>) -> Self {
        Self {
            trial,
            digest: String::new(),
            tolerance,
            records: Vec::new(),
        }
    }

    pub fn set_digest(&mut self, digest: String) {
        self.digest = digest;
    }

    pub fn push(&mut self, check: Check<'_>) {
        let residual = check.residual();
        self.push_with_residual(check, residual);
    }

    pub fn push_with_residual(&mut self, check: Check<'_>, residual: f64) {
        let tolerance = self.tolerance.unwrap_or(check.tolerance);
        let violated = check.converged && !(residual <= tolerance);
        self.records.push(TrialRecord {
            trial: self.trial,
            check: check.name.to_string(),
            alpha: check.alpha,
            beta: check.beta,
            digest: self.digest.clone(),
            lhs: check.lhs,
            rhs: check.rhs,
            residual,
            tolerance,
            relation: check.relation,
            converged: check.converged,
            violated,
            error: None,
        });
    }

    fn failed(trial: usize, digest: String, err: &Error) -> TrialRecord {
        TrialRecord {
            trial,
            check: "error".into(),
            alpha: Alpha::One,
            beta: None,
            digest,
            lhs: f64::NAN,
            rhs: f64::NAN,
            residual: f64::NAN,
            tolerance: f64::NAN,
            relation: Relation::Equal,
            converged: false,
            violated: false,
            error: Some(err.to_string()),
        }
    }
}

/// Runs a suite, with the computational and Fourier bases as the
/// measurement pair of the uncertainty suites.
pub fn run(spec: &SuiteSpec) -> Result<VerificationReport> {
    let d = spec.dims.first().copied().unwrap_or(2);
    run_with_measurements(spec, &Povm::computational(d), &Povm::fourier(d))
}

/// Runs a suite; `m` and `n` are the measurements on `A` of the uncertainty suites.
pub fn run_with_measurements(spec: &SuiteSpec, m: &Povm, n: &Povm) -> Result<VerificationReport> {
    spec.validate()?;
    let started = Instant::now();
    let plan = suites::Plan::new(spec, m, n)?;
    let per_trial: Vec<Vec<TrialRecord>> = (0..spec.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = SeededRng::for_trial(spec.seed, t as u64);
            let mut log = TrialLog::new(t, spec.tolerance);
            match plan.run_trial(&mut rng, &mut log) {
                Ok(()) => log.records,
                Err(e) => {
                    let mut records = log.records;
                    records.push(TrialLog::failed(t, log.digest, &e));
                    records
                }
            }
        })
        .collect();
    let trials: Vec<TrialRecord> = per_trial.into_iter().flatten().collect();
    let summary = summarize(&trials, started.elapsed().as_millis());
    let mut echo = spec.clone();
    echo.alphas = spec.resolved_alphas();
    Ok(VerificationReport {
        schema: SCHEMA_VERSION,
        suite: echo,
        trials,
        summary,
    })
}

fn summarize(trials: &[TrialRecord], runtime_ms: u128) -> Summary {
    let errors = trials.iter().filter(|r| r.error.is_some()).count();
    let not_converged = trials
        .iter()
        .filter(|r| r.error.is_none() && !r.converged)
        .count();
    let counted: Vec<f64> = trials
        .iter()
        .filter(|r| r.error.is_none() && r.converged)
        .map(|r| r.residual)
        .collect();
    let max_residual = if counted.iter().any(|r| r.is_nan()) {
        f64::NAN
    } else {
        counted.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    };
    let mean_residual = if counted.is_empty() {
        0.0
    } else {
        counted.iter().sum::<f64>() / counted.len() as f64
    };
    Summary {
        checks: trials.len(),
        max_residual: if counted.is_empty() {
            0.0
        } else {
            max_residual
        },
        mean_residual,
        violations: trials.iter().filter(|r| r.violated).count(),
        not_converged,
        errors,
        runtime_ms,
    }
}

#[cfg(test)]
mod tests;
