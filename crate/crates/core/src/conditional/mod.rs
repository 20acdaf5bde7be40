//! Conditional Rényi entropies `H(A|B)` of a bipartite state.
//!
//! Four variants are built from the two divergences:
//!
//! | kind              | definition                                        |
//! |-------------------|---------------------------------------------------|
//! | `old-down`        | `−D_α(ρ_AB ‖ 1_A ⊗ ρ_B)`                          |
//! | `old-up`          | `sup_σ −D_α(ρ_AB ‖ 1_A ⊗ σ_B)`                    |
//! | `sandwiched-down` | `−D̃_α(ρ_AB ‖ 1_A ⊗ ρ_B)`                          |
//! | `sandwiched-up`   | `sup_σ −D̃_α(ρ_AB ‖ 1_A ⊗ σ_B)`                    |
//!
//! The `old-up` supremum has a closed form. The `sandwiched-up` supremum is
//! found numerically, see [`optimizer`].

pub mod optimizer;

use std::fmt;
use std::str::FromStr;

use crate::alpha::Alpha;
use crate::divergence::{d_old, d_sandwiched, divergence, Family};
use crate::error::{Error, Result};
use crate::layout::SubsystemLayout;
use crate::operator::{
    fidelity, permute_subsystems, power_from_spectrum, trace_on_support, ComplexMatrix,
    HermitianOperator, DEGENERACY_TOLERANCE,
};
use crate::state::DensityOperator;

use optimizer::{lift, min_trace_dominating, minimize_from, trace_out_first, SandwichedObjective};
pub use optimizer::{OptimizerConfig, StepRule};

/// Duality gap at which the order-∞ barrier method stops.
pub const BARRIER_GAP: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Arrow {
    /// Conditioning on the marginal `ρ_B`.
    Down,
    /// Optimized over `σ_B`.
    Up,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EntropyKind {
    pub divergence: Family,
    pub arrow: Arrow,
}

impl EntropyKind {
    pub const OLD_DOWN: Self = Self::new(Family::Old, Arrow::Down);
    pub const OLD_UP: Self = Self::new(Family::Old, Arrow::Up);
    pub const SANDWICHED_DOWN: Self = Self::new(Family::Sandwiched, Arrow::Down);
    pub const SANDWICHED_UP: Self = Self::new(Family::Sandwiched, Arrow::Up);
    pub const ALL: [Self; 4] = [
        Self::OLD_DOWN,
        Self::OLD_UP,
        Self::SANDWICHED_DOWN,
        Self::SANDWICHED_UP,
    ];

    pub const fn new(divergence: Family, arrow: Arrow) -> Self {
        Self { divergence, arrow }
    }

    pub fn name(self) -> &'static str {
        match (self.divergence, self.arrow) {
            (Family::Old, Arrow::Down) => "old-down",
            (Family::Old, Arrow::Up) => "old-up",
            (Family::Sandwiched, Arrow::Down) => "sandwiched-down",
            (Family::Sandwiched, Arrow::Up) => "sandwiched-up",
        }
    }
}

impl fmt::Display for EntropyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EntropyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Precondition(format!(
                "unknown entropy kind {s:?}; expected one of old-down, old-up, sandwiched-down, sandwiched-up"
            )))
    }
}

impl serde::Serialize for EntropyKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct EntropyResult {
    /// Entropy in bits.
    pub value: f64,
    /// Maximizing `σ_B` of the `up` kinds.
    pub optimizer_sigma: Option<DensityOperator>,
    pub iterations: Option<usize>,
    pub converged: bool,
    /// Set where no convergence guarantee exists (sandwiched-up below ½).
    pub best_effort: bool,
    /// At α = ½ for sandwiched-up: `2 log₂ F(ρ_AB, 1_A ⊗ σ*_B)`.
    pub fidelity_value: Option<f64>,
}

impl EntropyResult {
    fn exact(value: f64) -> Self {
        Self {
            value,
            optimizer_sigma: None,
            iterations: None,
            converged: true,
            best_effort: false,
            fidelity_value: None,
        }
    }

    fn with_sigma(value: f64, sigma: DensityOperator) -> Self {
        Self {
            optimizer_sigma: Some(sigma),
            ..Self::exact(value)
        }
    }
}

/// `ρ` reordered as `target ⊗ cond`, with every other subsystem traced out.
#[derive(Clone, Debug)]
pub struct Bipartite {
    pub rho: HermitianOperator,
    pub d_a: usize,
    pub d_b: usize,
    pub cond_label: String,
}

impl Bipartite {
    pub fn new(rho: &DensityOperator, target: &str, cond: &str) -> Result<Self> {
        if target == cond {
            return Err(Error::Layout(format!(
                "target and conditioning system are both {target}"
            )));
        }
        let layout = rho.layout();
        layout.position(target)?;
        layout.position(cond)?;
        let reduced = rho.marginal(&[target, cond])?;
        let (op, _) = permute_subsystems(reduced.operator(), reduced.layout(), &[target, cond])?;
        Ok(Self {
            rho: op,
            d_a: layout.dim_of(target)?,
            d_b: layout.dim_of(cond)?,
            cond_label: cond.to_string(),
        })
    }

    pub fn marginal_b(&self) -> HermitianOperator {
        HermitianOperator::from_matrix_unchecked(trace_out_first(
            self.rho.matrix(),
            self.d_a,
            self.d_b,
        ))
    }

    /// `1_A ⊗ σ`.
    pub fn lift(&self, sigma: &HermitianOperator) -> HermitianOperator {
        HermitianOperator::from_matrix_unchecked(lift(self.d_a, sigma.matrix()))
    }

    fn cond_state(&self, sigma: HermitianOperator) -> DensityOperator {
        let tr = sigma.trace();
        let layout = SubsystemLayout::single(&self.cond_label, self.d_b).expect("label is valid");
        DensityOperator::from_parts_unchecked(sigma.scale(1.0 / tr), layout)
    }

    /// `−D(ρ_AB ‖ 1_A ⊗ σ)` for the given divergence.
    pub fn objective(
        &self,
        family: Family,
        sigma: &HermitianOperator,
        alpha: Alpha,
    ) -> Result<f64> {
        Ok(-divergence(family, &self.rho, &self.lift(sigma), alpha)?)
    }

    /// `H(AB) − H(B)`.
    pub fn von_neumann(&self) -> Result<f64> {
        let h = |m: &HermitianOperator| -> Result<f64> {
            Ok(-trace_on_support(&m.eig()?, |x| x * x.log2()))
        };
        Ok(h(&self.rho)? - h(&self.marginal_b())?)
    }
}

pub fn h_down_old(rho: &DensityOperator, target: &str, cond: &str, alpha: Alpha) -> Result<f64> {
    let bp = Bipartite::new(rho, target, cond)?;
    bp.objective(Family::Old, &bp.marginal_b(), alpha)
}

pub fn h_down_sandwiched(
    rho: &DensityOperator,
    target: &str,
    cond: &str,
    alpha: Alpha,
) -> Result<f64> {
    let bp = Bipartite::new(rho, target, cond)?;
    bp.objective(Family::Sandwiched, &bp.marginal_b(), alpha)
}

/// Conditional collision entropy `−log₂ tr{(ρ_AB (1_A ⊗ ρ_B^{−½}))²}`.
pub fn collision_entropy(rho: &DensityOperator, target: &str, cond: &str) -> Result<f64> {
    let bp = Bipartite::new(rho, target, cond)?;
    let w = bp.lift(&bp.marginal_b().power(-0.5)?);
    let x = bp.rho.matrix() * w.matrix();
    let tr = (&x * &x).trace();
    Ok(-tr.re.log2())
}

pub fn h_up_old(
    rho: &DensityOperator,
    target: &str,
    cond: &str,
    alpha: Alpha,
) -> Result<EntropyResult> {
    let bp = Bipartite::new(rho, target, cond)?;
    up_old(&bp, alpha)
}

fn up_old(bp: &Bipartite, alpha: Alpha) -> Result<EntropyResult> {
    let spec = bp.rho.eig()?;
    match alpha {
        Alpha::One => Ok(EntropyResult::with_sigma(
            bp.von_neumann()?,
            bp.cond_state(bp.marginal_b()),
        )),
        Alpha::Zero => {
            let proj = power_from_spectrum(&spec, 0.0)?;
            let reduced = HermitianOperator::from_matrix_unchecked(trace_out_first(
                proj.matrix(),
                bp.d_a,
                bp.d_b,
            ));
            let rs = reduced.eig()?;
            let best = rs.projector_onto([0]);
            Ok(EntropyResult::with_sigma(
                rs.max_eigenvalue().log2(),
                bp.cond_state(best),
            ))
        }
        Alpha::Finite(a) => {
            // ρ' = ρ/ν_max keeps ρ'^α representable for large α
            let top = spec.max_eigenvalue();
            let scaled = power_from_spectrum(&spec, a)?.scale(top.powf(-a));
            let reduced = HermitianOperator::from_matrix_unchecked(trace_out_first(
                scaled.matrix(),
                bp.d_a,
                bp.d_b,
            ));
            let y = reduced.power(1.0 / a)?;
            let t = y.trace();
            let value = a / (1.0 - a) * (top.log2() + t.log2());
            Ok(EntropyResult::with_sigma(value, bp.cond_state(y)))
        }
        Alpha::Infinity => {
            // limit of (Σ_j ν_j^α tr_A P_j)^{1/α}: ν_j on the part of the
            // range of Σ_{i≤j} tr_A P_i not already covered by earlier blocks
            let cut = spec.support_threshold();
            let mut partial = ComplexMatrix::zeros(bp.d_b, bp.d_b);
            let mut previous = HermitianOperator::zeros(bp.d_b);
            let mut limit = HermitianOperator::zeros(bp.d_b);
            for space in spec
                .eigenspaces(DEGENERACY_TOLERANCE)
                .iter()
                .filter(|s| s.value > cut)
            {
                partial += trace_out_first(space.projector.matrix(), bp.d_a, bp.d_b);
                let range = HermitianOperator::from_matrix_unchecked(partial.clone())
                    .support_projector()?;
                limit = limit.add(&range.sub(&previous).scale(space.value));
                previous = range;
                if previous.trace() > bp.d_b as f64 - 0.5 {
                    break;
                }
            }
            let t = limit.trace();
            Ok(EntropyResult::with_sigma(-t.log2(), bp.cond_state(limit)))
        }
    }
}

pub fn h_up_sandwiched(
    rho: &DensityOperator,
    target: &str,
    cond: &str,
    alpha: Alpha,
    config: &OptimizerConfig,
) -> Result<EntropyResult> {
    config.validate()?;
    let bp = Bipartite::new(rho, target, cond)?;
    up_sandwiched(&bp, alpha, config)
}

fn up_sandwiched(bp: &Bipartite, alpha: Alpha, config: &OptimizerConfig) -> Result<EntropyResult> {
    if bp.d_b == 1 {
        let one = HermitianOperator::identity(1);
        let value = bp.objective(Family::Sandwiched, &one, alpha)?;
        return Ok(EntropyResult::with_sigma(value, bp.cond_state(one)));
    }
    match alpha {
        Alpha::One => Ok(EntropyResult::with_sigma(
            bp.von_neumann()?,
            bp.cond_state(bp.marginal_b()),
        )),
        Alpha::Zero => up_sandwiched_zero(bp),
        Alpha::Infinity => {
            let m = min_trace_dominating(&bp.rho, bp.d_a, bp.d_b, BARRIER_GAP)?;
            let sigma = m.sigma.scale(1.0 / m.value);
            let value = bp.objective(Family::Sandwiched, &sigma, Alpha::Infinity)?;
            Ok(EntropyResult {
                value,
                optimizer_sigma: Some(bp.cond_state(sigma)),
                iterations: Some(m.iterations),
                converged: m.converged,
                best_effort: false,
                fidelity_value: None,
            })
        }
        Alpha::Finite(a) => {
            let objective = SandwichedObjective {
                rho: &bp.rho,
                d_a: bp.d_a,
                d_b: bp.d_b,
                alpha: a,
            };
            let mut best: Option<optimizer::Minimum> = None;
            let mut iterations = 0;
            let mut starts: Vec<HermitianOperator> = starting_points(bp, a)?
                .into_iter()
                .take(config.restarts.clamp(1, 3))
                .collect();
            if a < 0.5 {
                // near-pure starts for the boundary maxima
                let spec = bp.marginal_b().eig()?;
                let mixed = HermitianOperator::identity(bp.d_b).scale(0.02 / bp.d_b as f64);
                starts
                    .extend((0..bp.d_b).map(|j| spec.projector_onto([j]).scale(0.98).add(&mixed)));
            }
            for start in starts {
                let m = minimize_from(&objective, &start, config)?;
                iterations += m.iterations;
                if best.as_ref().is_none_or(|b| m.value < b.value) {
                    best = Some(m);
                }
            }
            let best = best.expect("at least one start");
            let sigma = best.sigma.scale(1.0 / best.sigma.trace());
            let value = bp.objective(Family::Sandwiched, &sigma, alpha)?;
            let fidelity_value = if a == 0.5 {
                Some(2.0 * fidelity(&bp.rho, &bp.lift(&sigma))?.log2())
            } else {
                None
            };
            Ok(EntropyResult {
                value,
                optimizer_sigma: Some(bp.cond_state(sigma)),
                iterations: Some(iterations),
                converged: best.converged,
                best_effort: a < 0.5,
                fidelity_value,
            })
        }
    }
}

/// `ρ_B`, `1/d_B` and the normalized `(tr_A ρ^α)^{1/α}`.
fn starting_points(bp: &Bipartite, a: f64) -> Result<Vec<HermitianOperator>> {
    let guess = up_old(bp, Alpha::Finite(a))?
        .optimizer_sigma
        .expect("closed form has a maximizer")
        .operator()
        .clone();
    Ok(vec![
        bp.marginal_b(),
        HermitianOperator::identity(bp.d_b).scale(1.0 / bp.d_b as f64),
        guess,
    ])
}

/// Best value over `ρ_B`, `1/d_B`, the eigenprojectors of `ρ_B` and their
/// uniform top-k mixtures. Not an optimizer; flagged as such.
fn up_sandwiched_zero(bp: &Bipartite) -> Result<EntropyResult> {
    let rb = bp.marginal_b();
    let spec = rb.eig()?;
    let mut candidates = vec![
        rb.clone(),
        HermitianOperator::identity(bp.d_b).scale(1.0 / bp.d_b as f64),
    ];
    for j in 0..bp.d_b {
        candidates.push(spec.projector_onto([j]));
        candidates.push(spec.projector_onto(0..=j).scale(1.0 / (j + 1) as f64));
    }
    let mut best: Option<(f64, HermitianOperator)> = None;
    for c in candidates {
        let v = bp.objective(Family::Sandwiched, &c, Alpha::Zero)?;
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, c));
        }
    }
    let (value, sigma) = best.expect("candidates are non-empty");
    Ok(EntropyResult {
        value,
        optimizer_sigma: Some(bp.cond_state(sigma)),
        iterations: None,
        converged: false,
        best_effort: true,
        fidelity_value: None,
    })
}

/// Any of the four conditional entropies.
pub fn entropy(
    kind: EntropyKind,
    rho: &DensityOperator,
    target: &str,
    cond: &str,
    alpha: Alpha,
    config: &OptimizerConfig,
) -> Result<EntropyResult> {
    let bp = Bipartite::new(rho, target, cond)?;
    entropy_of(kind, &bp, alpha, config)
}

/// [`entropy`] on an already reduced state.
pub fn entropy_of(
    kind: EntropyKind,
    bp: &Bipartite,
    alpha: Alpha,
    config: &OptimizerConfig,
) -> Result<EntropyResult> {
    match kind.arrow {
        Arrow::Down => Ok(EntropyResult::exact(bp.objective(
            kind.divergence,
            &bp.marginal_b(),
            alpha,
        )?)),
        Arrow::Up => match kind.divergence {
            Family::Old => up_old(bp, alpha),
            Family::Sandwiched => {
                config.validate()?;
                up_sandwiched(bp, alpha, config)
            }
        },
    }
}

/// `−D_α(ρ_AB ‖ 1_A ⊗ σ_B)` for a user-supplied `σ_B` (Petz family).
pub fn old_objective(
    rho: &DensityOperator,
    target: &str,
    cond: &str,
    sigma: &HermitianOperator,
    alpha: Alpha,
) -> Result<f64> {
    let bp = Bipartite::new(rho, target, cond)?;
    Ok(-d_old(&bp.rho, &bp.lift(sigma), alpha)?)
}

/// `−D̃_α(ρ_AB ‖ 1_A ⊗ σ_B)` for a user-supplied `σ_B`.
pub fn sandwiched_objective(
    rho: &DensityOperator,
    target: &str,
    cond: &str,
    sigma: &HermitianOperator,
    alpha: Alpha,
) -> Result<f64> {
    let bp = Bipartite::new(rho, target, cond)?;
    Ok(-d_sandwiched(&bp.rho, &bp.lift(sigma), alpha)?)
}

#[cfg(test)]
mod tests;
