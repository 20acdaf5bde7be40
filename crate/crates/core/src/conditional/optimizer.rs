//! Minimization of `σ ↦ D̃_α(ρ_AB ‖ 1_A ⊗ σ_B)` over states of B.
//!
//! Finite orders use a spectral projected gradient method with an analytic
//! gradient. The order ∞ is the semidefinite program
//! `min tr{S} s.t. 1_A ⊗ S ⪰ ρ_AB`, solved with a log-det barrier and
//! Newton steps.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::{ComplexMatrix, HermitianOperator, SpectralDecomposition};

/// Lower bound on the eigenvalues of `σ_B` inside the optimizer.
pub const EIGENVALUE_FLOOR: f64 = 1e-12;

const ARMIJO: f64 = 1e-4;
const STEP_MIN: f64 = 1e-10;
const STEP_MAX: f64 = 1e10;
/// Newton decrement `λ²/2` at which a centering step stops. Below about
/// 1e-8 the barrier gradient is dominated by cancellation at large `t`.
const NEWTON_TOLERANCE: f64 = 1e-7;
/// Relative primal-dual gap below which the barrier result counts as converged.
const CERTIFIED_GAP: f64 = 1e-9;

/// How the step length of the projected gradient method is chosen.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepRule {
    /// Barzilai-Borwein steps with a nonmonotone Armijo search over the last
    /// `memory` objective values.
    BarzilaiBorwein { memory: usize },
    /// Plain projected gradient with monotone Armijo backtracking.
    Backtracking,
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct OptimizerConfig {
    pub max_iterations: usize,
    /// Stop once the projected gradient norm falls below this.
    pub tolerance: f64,
    /// Number of starting points used, at most three.
    pub restarts: usize,
    pub step_rule: StepRule,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            max_iterations: 5000,
            tolerance: 1e-9,
            restarts: 3,
            step_rule: StepRule::BarzilaiBorwein { memory: 10 },
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::Precondition(format!(
                "optimizer tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.max_iterations == 0 {
            return Err(Error::Precondition(
                "optimizer needs at least one iteration".into(),
            ));
        }
        if let StepRule::BarzilaiBorwein { memory: 0 } = self.step_rule {
            return Err(Error::Precondition(
                "nonmonotone memory must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Minimum {
    pub sigma: HermitianOperator,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

pub(crate) fn trace_out_first(m: &ComplexMatrix, d_a: usize, d_b: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(d_b, d_b, |i, j| {
        (0..d_a).map(|a| m[(a * d_b + i, a * d_b + j)]).sum()
    })
}

pub(crate) fn lift(d_a: usize, x: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::identity(d_a, d_a).kronecker(x)
}

fn real_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

fn from_spectrum(vectors: &ComplexMatrix, values: &[f64]) -> ComplexMatrix {
    let mut scaled = vectors.clone();
    for (j, &v) in values.iter().enumerate() {
        for z in scaled.column_mut(j).iter_mut() {
            *z *= v;
        }
    }
    scaled * vectors.adjoint()
}

/// Euclidean projection of `x` onto `{y : Σ y = 1, y ≥ floor}`.
pub(crate) fn project_simplex(x: &[f64], floor: f64) -> Vec<f64> {
    let n = x.len();
    let budget = 1.0 - floor * n as f64;
    let mut sorted: Vec<f64> = x.iter().map(|v| v - floor).collect();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cum = 0.0;
    let mut theta = 0.0;
    for (k, &v) in sorted.iter().enumerate() {
        cum += v;
        let t = (cum - budget) / (k + 1) as f64;
        if v - t > 0.0 {
            theta = t;
        }
    }
    x.iter()
        .map(|v| (v - floor - theta).max(0.0) + floor)
        .collect()
}

/// Projection onto density operators with spectrum bounded below by the floor.
pub(crate) fn project_density(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    let spec = HermitianOperator::from_matrix_unchecked(x.clone()).eig()?;
    let values = project_simplex(&spec.eigenvalues, EIGENVALUE_FLOOR);
    Ok(from_spectrum(&spec.eigenvectors, &values))
}

/// Divided difference `(a^p − b^p)/(a − b)` for positive `a`, `b`.
fn divided_power(a: f64, b: f64, p: f64) -> f64 {
    let r = (a / b).ln();
    if r == 0.0 {
        p * b.powf(p - 1.0)
    } else {
        b.powf(p - 1.0) * (p * r).exp_m1() / r.exp_m1()
    }
}

/// `σ ↦ D̃_α(ρ ‖ 1_A ⊗ σ)` in bits, for finite `α ≠ 1`, with its gradient.
pub(crate) struct SandwichedObjective<'a> {
    pub rho: &'a HermitianOperator,
    pub d_a: usize,
    pub d_b: usize,
    pub alpha: f64,
}

struct Evaluation {
    value: f64,
    gamma_spec: SpectralDecomposition,
    tau_pow: ComplexMatrix,
    sigma_values: Vec<f64>,
    sigma_vectors: ComplexMatrix,
}

impl SandwichedObjective<'_> {
    fn exponent(&self) -> f64 {
        (1.0 - self.alpha) / (2.0 * self.alpha)
    }

    fn evaluate(&self, sigma: &ComplexMatrix) -> Result<Evaluation> {
        let spec = HermitianOperator::from_matrix_unchecked(sigma.clone()).eig()?;
        let values: Vec<f64> = spec
            .eigenvalues
            .iter()
            .map(|&v| v.max(EIGENVALUE_FLOOR))
            .collect();
        let g = self.exponent();
        let powered: Vec<f64> = values.iter().map(|&v| v.powf(g)).collect();
        let tau_pow = lift(self.d_a, &from_spectrum(&spec.eigenvectors, &powered));
        let gamma =
            HermitianOperator::from_matrix_unchecked(&tau_pow * self.rho.matrix() * &tau_pow);
        let gamma_spec = gamma.eig()?;
        let value =
            crate::divergence::log2_trace_power(&gamma_spec, self.alpha) / (self.alpha - 1.0);
        Ok(Evaluation {
            value,
            gamma_spec,
            tau_pow,
            sigma_values: values,
            sigma_vectors: spec.eigenvectors,
        })
    }

    pub fn value(&self, sigma: &ComplexMatrix) -> Result<f64> {
        Ok(self.evaluate(sigma)?.value)
    }

    /// Value and gradient with respect to the Hilbert-Schmidt inner product.
    pub fn value_and_gradient(&self, sigma: &ComplexMatrix) -> Result<(f64, ComplexMatrix)> {
        let ev = self.evaluate(sigma)?;
        let a = self.alpha;
        let top = ev.gamma_spec.max_eigenvalue();
        let cut = ev.gamma_spec.support_threshold();
        let scaled_trace: f64 = ev
            .gamma_spec
            .eigenvalues
            .iter()
            .filter(|&&x| x > cut)
            .map(|&x| (x / top).powf(a))
            .sum();
        let gamma_pow = ev.gamma_spec.compose(|x| {
            if x > cut {
                (x / top).powf(a - 1.0)
            } else {
                0.0
            }
        });
        let k = self.rho.matrix() * &ev.tau_pow * gamma_pow.matrix();
        let k = &k + k.adjoint();
        let m = trace_out_first(&k, self.d_a, self.d_b);
        let u = &ev.sigma_vectors;
        let mut inner = u.adjoint() * m * u;
        let g = self.exponent();
        for i in 0..self.d_b {
            for j in 0..self.d_b {
                inner[(i, j)] *= divided_power(ev.sigma_values[i], ev.sigma_values[j], g);
            }
        }
        let grad_q_over_q = u * inner * u.adjoint() * Complex64::new(a / (top * scaled_trace), 0.0);
        let grad = grad_q_over_q * Complex64::new(1.0 / ((a - 1.0) * std::f64::consts::LN_2), 0.0);
        let grad = (&grad + grad.adjoint()) * Complex64::new(0.5, 0.0);
        Ok((ev.value, grad))
    }
}

/// Spectral projected gradient from one starting point.
pub(crate) fn minimize_from(
    objective: &SandwichedObjective<'_>,
    start: &HermitianOperator,
    config: &OptimizerConfig,
) -> Result<Minimum> {
    let memory = match config.step_rule {
        StepRule::BarzilaiBorwein { memory } => memory,
        StepRule::Backtracking => 1,
    };
    let bb = matches!(config.step_rule, StepRule::BarzilaiBorwein { .. });
    let mut x = project_density(start.matrix())?;
    let (mut f, mut g) = objective.value_and_gradient(&x)?;
    let mut history = vec![f];
    let mut step = 1.0;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < config.max_iterations {
        let pg = project_density(&(&x - &g))? - &x;
        if pg.norm() < config.tolerance {
            converged = true;
            break;
        }
        iterations += 1;
        let d = project_density(&(&x - &g * Complex64::new(step, 0.0)))? - &x;
        let slope = real_inner(&g, &d);
        let reference = history
            .iter()
            .rev()
            .take(memory)
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        let mut t = 1.0;
        let mut accepted = None;
        while t > 1e-30 {
            let trial = &x + &d * Complex64::new(t, 0.0);
            let ft = objective.value(&trial)?;
            if ft <= reference + ARMIJO * t * slope {
                accepted = Some(trial);
                break;
            }
            t *= 0.5;
        }
        let Some(next) = accepted else {
            // no decrease representable in floating point
            converged = pg.norm() < config.tolerance.sqrt();
            break;
        };
        let (fn_, gn) = objective.value_and_gradient(&next)?;
        let s = &next - &x;
        let y = &gn - &g;
        let sy = real_inner(&s, &y);
        step = if bb {
            if sy > 0.0 {
                (real_inner(&s, &s) / sy).clamp(STEP_MIN, STEP_MAX)
            } else {
                STEP_MAX.min(1.0 / g.norm().max(f64::MIN_POSITIVE))
            }
        } else {
            (2.0 * t * step).min(STEP_MAX)
        };
        x = next;
        f = fn_;
        g = gn;
        history.push(f);
    }
    Ok(Minimum {
        sigma: HermitianOperator::from_matrix_unchecked(x),
        value: f,
        iterations,
        converged,
    })
}

/// Orthonormal Hermitian basis of `d × d` matrices: diagonal units, then
/// symmetric and antisymmetric off-diagonal pairs.
fn hermitian_basis(d: usize) -> Vec<ComplexMatrix> {
    let mut basis = Vec::with_capacity(d * d);
    let one = Complex64::new(1.0, 0.0);
    let w = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..d {
        let mut e = ComplexMatrix::zeros(d, d);
        e[(i, i)] = one;
        basis.push(e);
    }
    for i in 0..d {
        for j in i + 1..d {
            let mut s = ComplexMatrix::zeros(d, d);
            s[(i, j)] = Complex64::new(w, 0.0);
            s[(j, i)] = Complex64::new(w, 0.0);
            basis.push(s);
            let mut a = ComplexMatrix::zeros(d, d);
            a[(i, j)] = Complex64::new(0.0, -w);
            a[(j, i)] = Complex64::new(0.0, w);
            basis.push(a);
        }
    }
    basis
}

struct BarrierPoint {
    inverse: ComplexMatrix,
    log_det: f64,
}

fn barrier_point(rho: &HermitianOperator, d_a: usize, s: &ComplexMatrix) -> Option<BarrierPoint> {
    let m = HermitianOperator::from_matrix_unchecked(lift(d_a, s) - rho.matrix());
    let spec = m.eig().ok()?;
    if !(spec.min_eigenvalue() > 0.0) {
        return None;
    }
    let log_det = spec.eigenvalues.iter().map(|v| v.ln()).sum::<f64>();
    let inv: Vec<f64> = spec.eigenvalues.iter().map(|v| 1.0 / v).collect();
    Some(BarrierPoint {
        inverse: from_spectrum(&spec.eigenvectors, &inv),
        log_det,
    })
}

/// Lower bound `tr{ρ Y}` on the minimum trace from the central-path dual point
/// `Y ∝ (1_A ⊗ S − ρ)^{−1}`, rescaled by `1_A ⊗ (tr_A Y)^{−½}` so that
/// `tr_A Y = 1_B` holds exactly.
fn dual_bound(
    rho: &HermitianOperator,
    d_a: usize,
    d_b: usize,
    s: &ComplexMatrix,
    t: f64,
) -> Result<f64> {
    let p = barrier_point(rho, d_a, s)
        .ok_or_else(|| Error::Precondition("barrier iterate left the feasible region".into()))?;
    let y = p.inverse.unscale(t);
    let yb = HermitianOperator::from_matrix_unchecked(trace_out_first(&y, d_a, d_b));
    let root = lift(d_a, yb.power(-0.5)?.matrix());
    let feasible = HermitianOperator::from_matrix_unchecked(&root * y * &root);
    Ok(rho.trace_with(&feasible))
}

/// Minimizes `tr{S}` subject to `1_A ⊗ S ⪰ ρ` by a barrier method with
/// Newton centering. Returns the unnormalized minimizer.
pub(crate) fn min_trace_dominating(
    rho: &HermitianOperator,
    d_a: usize,
    d_b: usize,
    gap: f64,
) -> Result<Minimum> {
    let basis = hermitian_basis(d_b);
    let n = basis.len();
    let constraints = (d_a * d_b) as f64;
    let lifted: Vec<ComplexMatrix> = basis.iter().map(|e| lift(d_a, e)).collect();
    let traces: Vec<f64> = basis.iter().map(|e| e.trace().re).collect();
    let start = rho.max_eigenvalue()? + 1e-3;
    let mut x = DVector::<f64>::from_fn(n, |k, _| if k < d_b { start } else { 0.0 });
    let build = |x: &DVector<f64>| -> ComplexMatrix {
        let mut s = ComplexMatrix::zeros(d_b, d_b);
        for (k, e) in basis.iter().enumerate() {
            s += e * Complex64::new(x[k], 0.0);
        }
        s
    };
    let phi = |t: f64, x: &DVector<f64>| -> Option<f64> {
        let p = barrier_point(rho, d_a, &build(x))?;
        let tr: f64 = (0..n).map(|k| traces[k] * x[k]).sum();
        Some(t * tr - p.log_det)
    };
    let mut t = constraints / (start * d_b as f64);
    let mut iterations = 0;
    let mut lower = f64::NEG_INFINITY;
    loop {
        let mut inner_ok = false;
        for _ in 0..200 {
            let p = barrier_point(rho, d_a, &build(&x)).ok_or_else(|| {
                Error::Precondition("barrier iterate left the feasible region".into())
            })?;
            let w: Vec<ComplexMatrix> = lifted.iter().map(|e| &p.inverse * e).collect();
            let grad = DVector::<f64>::from_fn(n, |k, _| t * traces[k] - w[k].trace().re);
            let hess = DMatrix::<f64>::from_fn(n, n, |k, l| {
                let (a, b) = (&w[k], &w[l]);
                let mut acc = 0.0;
                for i in 0..a.nrows() {
                    for j in 0..a.ncols() {
                        acc += (a[(i, j)] * b[(j, i)]).re;
                    }
                }
                acc
            });
            let hess = (&hess + hess.transpose()) * 0.5;
            let delta = match hess.clone().cholesky() {
                Some(c) => c.solve(&(-&grad)),
                None => match hess.lu().solve(&(-&grad)) {
                    Some(d) => d,
                    None => break,
                },
            };
            let decrement = -grad.dot(&delta);
            iterations += 1;
            if decrement / 2.0 < NEWTON_TOLERANCE {
                inner_ok = true;
                break;
            }
            let f0 = phi(t, &x).expect("current iterate is feasible");
            let mut step = 1.0;
            let mut moved = false;
            while step > 1e-20 {
                let cand = &x + &delta * step;
                if let Some(fc) = phi(t, &cand) {
                    if fc <= f0 - 0.25 * step * decrement {
                        x = cand;
                        moved = true;
                        break;
                    }
                }
                step *= 0.5;
            }
            if !moved {
                inner_ok = false;
                break;
            }
        }
        if inner_ok {
            lower = lower.max(dual_bound(rho, d_a, d_b, &build(&x), t)?);
        }
        if constraints / t < gap {
            break;
        }
        t *= 10.0;
    }
    let s = HermitianOperator::from_matrix_unchecked(build(&x));
    let value = s.trace();
    Ok(Minimum {
        sigma: s,
        value,
        iterations,
        converged: value - lower <= CERTIFIED_GAP * value.abs().max(f64::MIN_POSITIVE),
    })
}
