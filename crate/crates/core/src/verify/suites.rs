use std::cell::RefCell;

use rand::Rng;

use crate::alpha::Alpha;
use crate::conditional::{entropy_of, Bipartite, EntropyKind, OptimizerConfig};
use crate::divergence::{d_old, d_sandwiched, renyi_entropy};
use crate::error::{Error, Result};
use crate::layout::SubsystemLayout;
use crate::objects::{
    overlap, post_measurement_states, random_density, random_pure_state, KrausChannel, Povm,
    SeededRng,
};
use crate::operator::{holder_pair_check, ComplexMatrix, HermitianOperator, HolderDirection};
use crate::state::DensityOperator;

use super::classical::JointTable;
use super::{Check, InputDigest, Relation, Suite, SuiteSpec, TrialLog};

pub const CLOSED_FORM_TOLERANCE: f64 = 1e-8;
pub const OPTIMIZED_DUALITY_TOLERANCE: f64 = 1e-5;
pub const ENTROPY_TOLERANCE: f64 = 1e-6;
pub const UNCERTAINTY_TOLERANCE: f64 = 1e-6;
pub const CLASSICAL_TOLERANCE: f64 = 1e-9;

const KINDS: [EntropyKind; 4] = EntropyKind::ALL;

#[derive(Clone, Copy, Debug)]
struct Value {
    value: f64,
    converged: bool,
}

/// Conditional entropies of one reduced state, each evaluated at most once.
struct Entropies<'a> {
    bp: Bipartite,
    config: &'a OptimizerConfig,
    cache: RefCell<Vec<(EntropyKind, Alpha, Value)>>,
}

impl<'a> Entropies<'a> {
    fn new(
        rho: &DensityOperator,
        target: &str,
        cond: &str,
        config: &'a OptimizerConfig,
    ) -> Result<Self> {
        Ok(Self {
            bp: Bipartite::new(rho, target, cond)?,
            config,
            cache: RefCell::new(Vec::new()),
        })
    }

    fn get(&self, kind: EntropyKind, alpha: Alpha) -> Result<Value> {
        if let Some(&(_, _, v)) = self
            .cache
            .borrow()
            .iter()
            .find(|(k, a, _)| *k == kind && *a == alpha)
        {
            return Ok(v);
        }
        let r = entropy_of(kind, &self.bp, alpha, self.config)?;
        let v = Value {
            value: r.value,
            converged: r.converged && !r.best_effort,
        };
        self.cache.borrow_mut().push((kind, alpha, v));
        Ok(v)
    }
}

fn labelled(labels: &[&str], dims: &[usize]) -> Result<SubsystemLayout> {
    SubsystemLayout::new(labels.to_vec(), dims.to_vec())
}

fn sandwiched_reliable(a: Alpha) -> bool {
    a.value() >= 0.5
}

/// Records `H_k1(α1) ≤ H_k2(α2)` on one state.
fn entropy_le(
    log: &mut TrialLog,
    h: &Entropies,
    (k1, a1): (EntropyKind, Alpha),
    (k2, a2): (EntropyKind, Alpha),
    name: &str,
) -> Result<()> {
    let lhs = h.get(k1, a1)?;
    let rhs = h.get(k2, a2)?;
    log.push(Check {
        name,
        alpha: a1,
        beta: (a1 != a2).then_some(a2),
        lhs: lhs.value,
        rhs: rhs.value,
        relation: Relation::AtMost,
        tolerance: ENTROPY_TOLERANCE,
        converged: lhs.converged && rhs.converged,
    });
    Ok(())
}

fn kinds_name(k1: EntropyKind, k2: EntropyKind) -> String {
    format!("{}<={}", k1.name(), k2.name())
}

pub(crate) struct Plan<'a> {
    suite: Suite,
    dims: Vec<usize>,
    alphas: Vec<Alpha>,
    m: &'a Povm,
    n: &'a Povm,
    bound: f64,
    config: OptimizerConfig,
}

impl<'a> Plan<'a> {
    pub fn new(spec: &SuiteSpec, m: &'a Povm, n: &'a Povm) -> Result<Self> {
        let measured = matches!(
            spec.suite,
            Suite::Uncertainty1 | Suite::Uncertainty2 | Suite::Uncertainty3 | Suite::MaassenUffink
        );
        let bound = if measured {
            let d = spec.dims[0];
            if m.dim() != d || n.dim() != d {
                return Err(Error::InvalidSuite(format!(
                    "{}: measurements act on dimension {} and {}, system A has dimension {d}",
                    spec.suite,
                    m.dim(),
                    n.dim()
                )));
            }
            -overlap(m, n)?.log2()
        } else {
            0.0
        };
        let mut alphas = spec.resolved_alphas();
        if spec.suite == Suite::MonotoneAlpha {
            alphas.sort_by(|a, b| a.value().total_cmp(&b.value()));
            alphas.dedup();
        }
        Ok(Self {
            suite: spec.suite,
            dims: spec.dims.clone(),
            alphas,
            m,
            n,
            bound,
            config: OptimizerConfig::default(),
        })
    }

    pub fn run_trial(&self, rng: &mut SeededRng, log: &mut TrialLog) -> Result<()> {
        match self.suite {
            Suite::Duality1 | Suite::Duality2 | Suite::Duality3 => self.duality(rng, log),
            Suite::Ordering => self.ordering(rng, log),
            Suite::Corollary => self.corollary(rng, log),
            Suite::MonotoneAlpha => self.monotone(rng, log),
            Suite::Dpi => self.dpi(rng, log),
            Suite::Holder => self.holder(rng, log),
            Suite::ConverseBound => self.converse_ordering(rng, log),
            Suite::Uncertainty1 | Suite::Uncertainty2 | Suite::Uncertainty3 => {
                self.uncertainty(rng, log)
            }
            Suite::MaassenUffink => self.trivial_side_information(rng, log),
            Suite::ClassicalOracle => self.classical(rng, log),
        }
    }

    fn random_bipartite(&self, rng: &mut SeededRng) -> Result<DensityOperator> {
        let layout = labelled(&["A", "B"], &self.dims)?;
        random_density(&layout, layout.total_dim(), rng)
    }

    fn duality(&self, rng: &mut SeededRng, log: &mut TrialLog) -> Result<()> {
        let layout = labelled(&["A", "B", "C"], &self.dims)?;
        let rho = random_pure_state(&layout, rng).density();
        let mut digest = InputDigest::default();
        digest.operator(&rho);
        log.set_digest(digest.finish());
        let ab = Entropies::new(&rho, "A", "B", &self.config)?;
        let ac = Entropies::new(&rho, "A", "C", &self.config)?;
        for &alpha in &self.alphas {
            let (k1, k2, beta, tolerance) = match self.suite {
                Suite::Duality1 => (
                    EntropyKind::OLD_DOWN,
                    EntropyKind::OLD_DOWN,
                    alpha.dual_sum()?,
                    CLOSED_FORM_TOLERANCE,
                ),
                Suite::Duality2 => (
                    EntropyKind::SANDWICHED_UP,
                    EntropyKind::SANDWICHED_UP,
                    alpha.dual_harmonic()?,
                    OPTIMIZED_DUALITY_TOLERANCE,
                ),
                _ => (
                    EntropyKind::OLD_UP,
                    EntropyKind::SANDWICHED_DOWN,
                    alpha.dual_product()?,
                    CLOSED_FORM_TOLERANCE,
                ),
            };
            let h = ab.get(k1, alpha)?;
            let g = ac.get(k2, beta)?;
            log.push(Check {
                name: "duality",
                alpha,
                beta: Some(beta),
                lhs: h.value,
                rhs: -g.value,
                relation: Relation::Equal,
                tolerance,
                converged: h.converged && g.converged,
            });
        }
        Ok(())
    }

    fn ordering(&self, rng: &mut SeededRng, log: &mut TrialLog) -> Result<()> {
        let rho = self.random_bipartite(rng)?;
        let mut digest = InputDigest::default();
        digest.operator(&rho);
        log.set_digest(digest.finish());
        let h = Entropies::new(&rho, "A", "B", &self.config)?;
        let (od, ou, sd, su) = (
            EntropyKind::OLD_DOWN,
            EntropyKind::OLD_UP,
            EntropyKind::SANDWICHED_DOWN,
            EntropyKind::SANDWICHED_UP,
        );
        for &a in &self.alphas {
            let mut pairs = vec![(od, ou), (od, sd)];
            if sandwiched_reliable(a) {
                pairs.extend([(sd, su), (ou, su)]);
            }
            for (k1, k2) in pairs {
                entropy_le(log, &h, (k1, a), (k2, a), &kinds_name(k1, k2))?;
            }
        }
        Ok(())
    }

    fn corollary(&self, rng: &mut SeededRng, log: &mut TrialLog) -> Result<()> {
        let rho = self.random_bipartite(rng)?;
        let mut digest = InputDigest::default();
        digest.operator(&rho);
        log.set_digest(digest.finish());
        let h = Entropies::new(&rho, "A", "B", &self.config)?;
        let (od, ou, sd, su) = (
            EntropyKind::OLD_DOWN,
            EntropyKind::OLD_UP,
            EntropyKind::SANDWICHED_DOWN,
            EntropyKind::SANDWICHED_UP,
        );
        for &a in &self.alphas {
            let upper = a.sandwich_upper()?;
            for (low, mid, high) in [(ou, su, ou), (od, ou, od), (sd, su, sd), (od, sd, od)] {
                entropy_le(log, &h, (low, a), (mid, a), &kinds_name(low, mid))?;
                entropy_le(log, &h, (mid, a), (high, upper), &kinds_name(mid, high))?;
            }
        }
        Ok(())
    }

    fn monotone(&self, rng: &mut SeededRng, log: &mut TrialLog) -> Result<()> {
        let rho = self.random_bipartite(rng)?;
        let sigma = self.random_bipartite(rng)?;
        let mut digest = InputDigest::default();
        digest.operator(&rho).operator(&sigma);
        log.set_digest(digest.finish());
        let h = Entropies::new(&rho, "A", "B", &self.config)?;
        for w in self.alphas.windows(2) {
            let (a, b) = (w[0], w[1]);
            for (name, f) in [
                (
                    "d-old",
                    d_old as fn(&HermitianOperator, &HermitianOperator, Alpha) -> Result<f64>,
                ),
                ("d-sandwiched", d_sandwiched),
            ] {
                log.push(Check {
                    name,
                    alpha: a,
                    beta: Some(b),
                    lhs: f(&rho, &sigma, a)?,
                    rhs: f(&rho, &sigma, b)?,
                    relation: Relation::AtMost,
                    tolerance: CLOSED_FORM_TOLERANCE,
                    converged: true,
                });
            }
            for kind in KINDS {
                if kind == EntropyKind::SANDWICHED_UP && !sandwiched_reliable(a) {
                    continue;
                }
                entropy_le(log, &h, (kind, b), (kind, a), kind.name())?;
            }
        }
        Ok(())
    }

    fn dpi(&self, rng: &mut SeededRng, log: &mut TrialLog) -> Result<()> {
        let rho = self.random_bipartite(rng)?;
        let sigma = self.random_bipartite(rng)?;
        let d_b = self.dims[1];
        let channel = KrausChannel::random(d_b, d_b, d_b, rng)?;
        let mut digest = InputDigest::default();
        digest.operator(&rho).operator(&sigma);
        for k in channel.kraus() {
            digest.matrix(k);
        }
        log.set_digest(digest.finish());
        dpi_checks(log, &rho, &sigma, &channel, &self.alphas, &self.config)
    }

    fn holder(&self, rng: &mut SeededRng, log: &mut TrialLog) -> Result<()> {
        let d = self.dims[rng.random_range(0..self.dims.len())];
        let rank = rng.random_range(1..=d);
        let a = random_psd(d, rank, rng);
        let b = random_psd(d, d, rng);
        let mut digest = InputDigest::default();
        digest.operator(&a).operator(&b);
        log.set_digest(digest.finish());
        for &p in &self.alphas {
            let check = holder_pair_check(&a, &b, p.value())?;
            let (name, relation) = match check.direction {
                HolderDirection::Leq => ("holder", Relation::AtMost),
                HolderDirection::Geq => ("reverse-holder", Relation::AtLeast),
            };
            log.push_with_residual(
                Check {
                    name,
                    alpha: p,
                    beta: None,
                    lhs: check.lhs,
                    rhs: check.rhs,
                    relation,
                    tolerance: CLOSED_FORM_TOLERANCE,
                    converged: true,
                },
                check.relative_violation(),
            );
        }
        Ok(())
    }

    /// `D̃ ≤ D_old` together with the lower bound
    /// `D̃ ≥ α·D_old + log tr ρ^α + (α − 1) log ‖σ‖_∞`.
    fn converse_ordering(&self, rng: &mut SeededRng, log: &mut TrialLog) -> Result<()> {
        let d = self.dims[rng.random_range(0..self.dims.len())];
        let layout = SubsystemLayout::single("A", d)?;
        let rho = random_density(&layout, d, rng)?;
        let scale = (2.0 * rng.uniform() - 1.0).exp();
        let sigma = random_density(&layout, d, rng)?.operator().scale(scale);
        let mut digest = InputDigest::default();
        digest.operator(&rho).operator(&sigma);
        log.set_digest(digest.finish());
        let norm = sigma.operator_norm()?;
        for &alpha in &self.alphas {
            let old = d_old(&rho, &sigma, alpha)?;
            let sandwiched = d_sandwiched(&rho, &sigma, alpha)?;
            log.push(Check {
                name: "ordering",
                alpha,
                beta: None,
                lhs: sandwiched,
                rhs: old,
                relation: Relation::AtMost,
                tolerance: CLOSED_FORM_TOLERANCE,
                converged: true,
            });
            let a = alpha.value();
            let log_trace_power = (1.0 - a) * renyi_entropy(&rho, alpha)?;
            log.push(Check {
                name: "converse-bound",
                alpha,
                beta: None,
                lhs: a * old + log_trace_power + (a - 1.0) * norm.log2(),
                rhs: sandwiched,
                relation: Relation::AtMost,
                tolerance: CLOSED_FORM_TOLERANCE,
                converged: true,
            });
        }
        Ok(())
    }

    fn uncertainty(&self, rng: &mut SeededRng, log: &mut TrialLog) -> Result<()> {
        let layout = labelled(&["A", "B", "C"], &self.dims)?;
        let psi = random_pure_state(&layout, rng);
        let mut digest = InputDigest::default();
        digest.operator(&psi.density());
        log.set_digest(digest.finish());
        let (xb, yc) = post_measurement_states(&psi, self.m, self.n, "A", "B", "C")?;
        let hx = Entropies::new(&xb, "X", "B", &self.config)?;
        let hy = Entropies::new(&yc, "Y", "C", &self.config)?;
        for &alpha in &self.alphas {
            let (k1, k2, beta) = match self.suite {
                Suite::Uncertainty1 => (
                    EntropyKind::OLD_DOWN,
                    EntropyKind::OLD_DOWN,
                    alpha.dual_sum()?,
                ),
                Suite::Uncertainty2 => (
                    EntropyKind::SANDWICHED_UP,
                    EntropyKind::SANDWICHED_UP,
                    alpha.dual_harmonic()?,
                ),
                _ => (
                    EntropyKind::OLD_UP,
                    EntropyKind::SANDWICHED_DOWN,
                    alpha.dual_product()?,
                ),
            };
            let x = hx.get(k1, alpha)?;
            let y = hy.get(k2, beta)?;
            log.push(Check {
                name: "uncertainty",
                alpha,
                beta: Some(beta),
                lhs: x.value + y.value,
                rhs: self.bound,
                relation: Relation::AtLeast,
                tolerance: UNCERTAINTY_TOLERANCE,
                converged: x.converged && y.converged,
            });
        }
        Ok(())
    }

    /// Pure state on `A` alone. Besides the harmonic pairing, records the
    /// slack of the sum and product pairings, which also hold here.
    fn trivial_side_information(&self, rng: &mut SeededRng, log: &mut TrialLog) -> Result<()> {
        let layout = SubsystemLayout::single("A", self.dims[0])?;
        let rho = random_pure_state(&layout, rng).density();
        let mut digest = InputDigest::default();
        digest.operator(&rho);
        log.set_digest(digest.finish());
        let outcomes = |povm: &Povm| -> HermitianOperator {
            let p: Vec<f64> = povm
                .elements()
                .iter()
                .map(|e| e.trace_with(&rho).max(0.0))
                .collect();
            HermitianOperator::from_real_diagonal(&p)
        };
        let (px, py) = (outcomes(self.m), outcomes(self.n));
        let mut pairings = vec![(
            "maassen-uffink",
            Alpha::dual_harmonic as fn(Alpha) -> Result<Alpha>,
        )];
        pairings.push(("sum-pairing", Alpha::dual_sum));
        pairings.push(("product-pairing", Alpha::dual_product));
        for &alpha in &self.alphas {
            for &(name, dual) in &pairings {
                if name != "maassen-uffink" && !alpha.in_range(0.0, 2.0) {
                    continue;
                }
                let beta = dual(alpha)?;
                let lhs = renyi_entropy(&px, alpha)? + renyi_entropy(&py, beta)?;
                log.push(Check {
                    name,
                    alpha,
                    beta: Some(beta),
                    lhs,
                    rhs: self.bound,
                    relation: Relation::AtLeast,
                    tolerance: UNCERTAINTY_TOLERANCE,
                    converged: true,
                });
            }
        }
        Ok(())
    }

    fn classical(&self, rng: &mut SeededRng, log: &mut TrialLog) -> Result<()> {
        let table = JointTable::random(self.dims[0], self.dims[1], 0.15, rng);
        let rho = table.to_state()?;
        let mut digest = InputDigest::default();
        digest.operator(&rho);
        log.set_digest(digest.finish());
        let h = Entropies::new(&rho, "X", "Y", &self.config)?;
        for &alpha in &self.alphas {
            for kind in KINDS {
                let v = h.get(kind, alpha)?;
                log.push(Check {
                    name: kind.name(),
                    alpha,
                    beta: None,
                    lhs: v.value,
                    rhs: table.entropy(kind, alpha),
                    relation: Relation::Equal,
                    tolerance: CLASSICAL_TOLERANCE,
                    converged: v.converged,
                });
            }
        }
        Ok(())
    }
}

/// `G G†` for a `d × rank` Ginibre `G`, rescaled by a random factor in `[e⁻¹, e]`.
fn random_psd(d: usize, rank: usize, rng: &mut SeededRng) -> HermitianOperator {
    let g: ComplexMatrix = rng.ginibre(d, rank);
    let scale = (2.0 * rng.uniform() - 1.0).exp();
    HermitianOperator::new(&g * g.adjoint())
        .expect("G G† is Hermitian up to rounding")
        .scale(scale)
}

/// Contractivity of both divergences under `id_A ⊗ E_B` and monotonicity of
/// the four conditional entropies under `E_B`, at the orders where each holds.
pub(crate) fn dpi_checks(
    log: &mut TrialLog,
    rho: &DensityOperator,
    sigma: &DensityOperator,
    channel: &KrausChannel,
    alphas: &[Alpha],
    config: &OptimizerConfig,
) -> Result<()> {
    let out_rho = channel.apply(rho, "B")?;
    let out_sigma = channel.apply(sigma, "B")?;
    let before = Entropies::new(rho, "A", "B", config)?;
    let after = Entropies::new(&out_rho, "A", "B", config)?;
    for &alpha in alphas {
        let old = alpha.in_range(0.0, 2.0);
        let sandwiched = sandwiched_reliable(alpha);
        for (name, run, f) in [
            (
                "d-old",
                old,
                d_old as fn(&HermitianOperator, &HermitianOperator, Alpha) -> Result<f64>,
            ),
            ("d-sandwiched", sandwiched, d_sandwiched),
        ] {
            if !run {
                continue;
            }
            log.push(Check {
                name,
                alpha,
                beta: None,
                lhs: f(&out_rho, &out_sigma, alpha)?,
                rhs: f(rho, sigma, alpha)?,
                relation: Relation::AtMost,
                tolerance: CLOSED_FORM_TOLERANCE,
                converged: true,
            });
        }
        for kind in KINDS {
            let run = match kind.divergence {
                crate::divergence::Family::Old => old,
                crate::divergence::Family::Sandwiched => sandwiched,
            };
            if !run {
                continue;
            }
            let h0 = before.get(kind, alpha)?;
            let h1 = after.get(kind, alpha)?;
            log.push(Check {
                name: kind.name(),
                alpha,
                beta: None,
                lhs: h0.value,
                rhs: h1.value,
                relation: Relation::AtMost,
                tolerance: ENTROPY_TOLERANCE,
                converged: h0.converged && h1.converged,
            });
        }
    }
    Ok(())
}
