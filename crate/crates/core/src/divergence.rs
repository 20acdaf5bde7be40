//! Quantum Rényi divergences in bits.
//!
//! Two generalizations of the classical Rényi divergence are provided:
//!
//! - the Petz-type quantum Rényi relative entropy
//!   `D_α(ρ‖σ) = 1/(α-1) log tr{ρ^α σ^{1-α}}` ([`d_old`]),
//! - the sandwiched Rényi divergence
//!   `D̃_α(ρ‖σ) = 1/(α-1) log tr{(σ^{(1-α)/2α} ρ σ^{(1-α)/2α})^α}` ([`d_sandwiched`]),
//!
//! together with the α-z family that contains both ([`d_alpha_z`]).
//! The orders 0, 1 and ∞ are evaluated through their closed-form limits.
//!
//! `σ` may be any positive semi-definite operator, not only a state, so that
//! conditional entropies can pass `1_A ⊗ σ_B`. When the supports of `ρ` and
//! `σ` are orthogonal and `α < 1` the divergence is reported as `+∞`.

use itertools::Itertools;

use crate::alpha::Alpha;
use crate::error::{Error, Result};
use crate::operator::{
    dominates, jacobi_singular_values, max_abs_diff, power_from_spectrum, trace_on_support,
    ComplexMatrix, HermitianOperator, SpectralDecomposition, DEGENERACY_TOLERANCE, SUPPORT_CUTOFF,
};

/// Overlap threshold between eigenspaces in the α = ∞ Petz limit.
pub const OVERLAP_CUTOFF: f64 = 1e-8;
/// Linear independence threshold (smallest singular value) for the α = 0
/// sandwiched limit.
pub const INDEPENDENCE_CUTOFF: f64 = 1e-8;
/// Largest support of `σ` for which the α = 0 sandwiched limit is searched exhaustively.
pub const MAX_SUBSET_SEARCH_RANK: usize = 14;

/// Which of the two divergences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Petz quantum Rényi relative entropy.
    Old,
    Sandwiched,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Old => "old",
            Family::Sandwiched => "sandwiched",
        })
    }
}

pub fn divergence(
    family: Family,
    rho: &HermitianOperator,
    sigma: &HermitianOperator,
    alpha: Alpha,
) -> Result<f64> {
    match family {
        Family::Old => d_old(rho, sigma, alpha),
        Family::Sandwiched => d_sandwiched(rho, sigma, alpha),
    }
}

struct Pair {
    rho: SpectralDecomposition,
    sigma: SpectralDecomposition,
}

fn prepare(rho: &HermitianOperator, sigma: &HermitianOperator) -> Result<Pair> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    let rs = rho.eig()?;
    let ss = sigma.eig()?;
    rs.check_psd()?;
    ss.check_psd()?;
    if ss.max_eigenvalue() <= 0.0 {
        return Err(Error::Precondition("σ must be non-zero".into()));
    }
    if rs.max_eigenvalue() <= 0.0 {
        return Err(Error::Precondition("ρ must be non-zero".into()));
    }
    Ok(Pair { rho: rs, sigma: ss })
}

fn support_of(spec: &SpectralDecomposition) -> HermitianOperator {
    let cut = spec.support_threshold();
    spec.compose(|x| if x > cut { 1.0 } else { 0.0 })
}

fn require_domination(
    rho: &HermitianOperator,
    sigma: &HermitianOperator,
    alpha: Alpha,
) -> Result<()> {
    if !dominates(rho, sigma)? {
        return Err(Error::Precondition(format!(
            "ρ ≪ σ (support of σ containing that of ρ) is required at α = {alpha}"
        )));
    }
    Ok(())
}

fn supports_orthogonal(pair: &Pair) -> bool {
    let prod = support_of(&pair.rho).matrix() * support_of(&pair.sigma).matrix();
    max_abs_diff(&prod, &ComplexMatrix::zeros(prod.nrows(), prod.ncols())) <= OVERLAP_CUTOFF
}

/// Quantum relative entropy `tr{ρ(log ρ - log σ)}` in bits. Requires `ρ ≪ σ`.
pub fn relative_entropy(rho: &HermitianOperator, sigma: &HermitianOperator) -> Result<f64> {
    let pair = prepare(rho, sigma)?;
    require_domination(rho, sigma, Alpha::One)?;
    let neg_entropy = trace_on_support(&pair.rho, |x| x * x.log2());
    let cut = pair.sigma.support_threshold();
    let log_sigma = pair.sigma.compose(|x| if x > cut { x.log2() } else { 0.0 });
    Ok(neg_entropy - rho.trace_with(&log_sigma))
}

/// `log2 Σ_ij ν_i^α μ_j^{1-α} |⟨e_i|f_j⟩|²`, accumulated in the log domain.
fn petz_log2_trace(pair: &Pair, a: f64) -> f64 {
    let rcut = pair.rho.support_threshold();
    let scut = pair.sigma.support_threshold();
    let overlaps = pair.rho.eigenvectors.adjoint() * &pair.sigma.eigenvectors;
    let mut terms = Vec::new();
    for (i, &nu) in pair.rho.eigenvalues.iter().enumerate() {
        if nu <= rcut {
            continue;
        }
        for (j, &mu) in pair.sigma.eigenvalues.iter().enumerate() {
            let w = overlaps[(i, j)].norm_sqr();
            if mu > scut && w > 0.0 {
                terms.push(a * nu.log2() + (1.0 - a) * mu.log2() + w.log2());
            }
        }
    }
    let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return top;
    }
    top + terms.iter().map(|t| (t - top).exp2()).sum::<f64>().log2()
}

/// Petz quantum Rényi relative entropy `D_α(ρ‖σ)`.
pub fn d_old(rho: &HermitianOperator, sigma: &HermitianOperator, alpha: Alpha) -> Result<f64> {
    let pair = prepare(rho, sigma)?;
    match alpha {
        Alpha::One => relative_entropy(rho, sigma),
        Alpha::Zero => {
            if supports_orthogonal(&pair) {
                return Ok(f64::INFINITY);
            }
            Ok(-support_of(&pair.rho).trace_with(sigma).log2())
        }
        Alpha::Finite(a) => {
            if a > 1.0 {
                require_domination(rho, sigma, alpha)?;
            } else if supports_orthogonal(&pair) {
                return Ok(f64::INFINITY);
            }
            Ok(petz_log2_trace(&pair, a) / (a - 1.0))
        }
        Alpha::Infinity => {
            require_domination(rho, sigma, alpha)?;
            let rcut = pair.rho.support_threshold();
            let scut = pair.sigma.support_threshold();
            let rho_spaces = pair.rho.eigenspaces(DEGENERACY_TOLERANCE);
            let sigma_spaces = pair.sigma.eigenspaces(DEGENERACY_TOLERANCE);
            let mut best = f64::NEG_INFINITY;
            for p in rho_spaces.iter().filter(|s| s.value > rcut) {
                for q in sigma_spaces.iter().filter(|s| s.value > scut) {
                    let overlap = (p.projector.matrix() * q.projector.matrix()).norm();
                    if overlap > OVERLAP_CUTOFF {
                        best = best.max(p.value / q.value);
                    }
                }
            }
            Ok(best.log2())
        }
    }
}

/// Sandwiched Rényi divergence `D̃_α(ρ‖σ)`.
pub fn d_sandwiched(
    rho: &HermitianOperator,
    sigma: &HermitianOperator,
    alpha: Alpha,
) -> Result<f64> {
    let pair = prepare(rho, sigma)?;
    match alpha {
        Alpha::One => relative_entropy(rho, sigma),
        Alpha::Zero => sandwiched_zero(rho, &pair),
        Alpha::Finite(a) => {
            if a > 1.0 {
                require_domination(rho, sigma, alpha)?;
            } else if supports_orthogonal(&pair) {
                return Ok(f64::INFINITY);
            }
            Ok(
                graded_log2_trace_power(&pair.sigma, (1.0 - a) / (2.0 * a), &pair.rho, 1.0, a)
                    / (a - 1.0),
            )
        }
        Alpha::Infinity => {
            require_domination(rho, sigma, alpha)?;
            let w = power_from_spectrum(&pair.sigma, -0.5)?;
            Ok(rho.sandwich(&w).max_eigenvalue()?.log2())
        }
    }
}

/// `log2 tr{X^p}` on the support, scaled by the largest eigenvalue so large
/// exponents neither overflow nor underflow.
pub(crate) fn log2_trace_power(spec: &SpectralDecomposition, p: f64) -> f64 {
    let top = spec.max_eigenvalue();
    if top <= 0.0 {
        return f64::NEG_INFINITY;
    }
    let sum = trace_on_support(spec, |x| (x / top).powf(p));
    p * top.log2() + sum.log2()
}

/// `log2 tr{(L^a R^b L^a)^p}` with both powers taken on the supports.
///
/// The nonzero eigenvalues are the squared singular values of
/// `N_L^a (V_L† V_R) N_R^{b/2}` in the two eigenbases. The side with the wider
/// spread of scaled eigenvalues is placed on the columns so the Jacobi
/// singular values resolve tiny eigenvalues to relative accuracy, which
/// matters when `p` is small.
fn graded_log2_trace_power(
    l: &SpectralDecomposition,
    a: f64,
    r: &SpectralDecomposition,
    b: f64,
    p: f64,
) -> f64 {
    let support = |s: &SpectralDecomposition| -> Vec<usize> {
        let cut = s.support_threshold();
        (0..s.eigenvalues.len())
            .filter(|&i| s.eigenvalues[i] > cut)
            .collect()
    };
    let (li, ri) = (support(l), support(r));
    let overlap = ComplexMatrix::from_fn(li.len(), ri.len(), |i, j| {
        l.eigenvectors
            .column(li[i])
            .dotc(&r.eigenvectors.column(ri[j]))
    });
    let rank = overlap
        .clone()
        .singular_values()
        .iter()
        .filter(|&&s| s > SUPPORT_CUTOFF)
        .count();
    if rank == 0 {
        return f64::NEG_INFINITY;
    }
    let lw: Vec<f64> = li.iter().map(|&i| l.eigenvalues[i].powf(a)).collect();
    let rw: Vec<f64> = ri.iter().map(|&j| r.eigenvalues[j].powf(b / 2.0)).collect();
    let spread = |w: &[f64]| {
        let (lo, hi) = w.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
        hi / lo
    };
    let scaled =
        ComplexMatrix::from_fn(li.len(), ri.len(), |i, j| overlap[(i, j)] * (lw[i] * rw[j]));
    let scaled = if spread(&lw) > spread(&rw) {
        scaled.adjoint()
    } else {
        scaled
    };
    let logs: Vec<f64> = jacobi_singular_values(&scaled)
        .into_iter()
        .take(rank)
        .map(|s| 2.0 * p * s.log2())
        .collect();
    let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    top + logs.iter().map(|x| (x - top).exp2()).sum::<f64>().log2()
}

/// Numerical rank from singular values above the relative support cutoff.
fn numerical_rank(m: &ComplexMatrix) -> usize {
    let sv = m.clone().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter()
        .filter(|&&s| s > SUPPORT_CUTOFF * max && s > 0.0)
        .count()
}

fn smallest_singular_value(m: &ComplexMatrix) -> f64 {
    m.clone()
        .singular_values()
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

/// `D̃_0(ρ‖σ) = -log max Σ_j λ_{i_j}` over size-`s` subsets of eigenvectors
/// of `σ` whose projections onto the support of `ρ` are linearly
/// independent, `s = rank(Π_ρ σ)`.
fn sandwiched_zero(rho: &HermitianOperator, pair: &Pair) -> Result<f64> {
    let cut = pair.sigma.support_threshold();
    let support: Vec<usize> = (0..pair.sigma.dim())
        .filter(|&j| pair.sigma.eigenvalues[j] > cut)
        .collect();
    if support.len() > MAX_SUBSET_SEARCH_RANK {
        return Err(Error::Capability(format!(
            "α = 0 sandwiched divergence searches subsets exhaustively and supports rank(σ) ≤ {MAX_SUBSET_SEARCH_RANK}, got {}",
            support.len()
        )));
    }
    let proj = support_of(&pair.rho);
    let sigma_op = pair.sigma.reconstruct();
    let s = numerical_rank(&(proj.matrix() * sigma_op.matrix()));
    if s == 0 {
        return Ok(f64::INFINITY);
    }
    let projected = proj.matrix() * &pair.sigma.eigenvectors;
    let d = rho.dim();
    let mut best: Option<f64> = None;
    for subset in support.iter().copied().combinations(s) {
        let mut cols = ComplexMatrix::zeros(d, s);
        for (k, &j) in subset.iter().enumerate() {
            cols.set_column(k, &projected.column(j));
        }
        if smallest_singular_value(&cols) > INDEPENDENCE_CUTOFF {
            let weight: f64 = subset.iter().map(|&j| pair.sigma.eigenvalues[j]).sum();
            best = Some(best.map_or(weight, |b: f64| b.max(weight)));
        }
    }
    match best {
        Some(w) => Ok(-w.log2()),
        None => Err(Error::Precondition(
            "no linearly independent subset of projected eigenvectors found".into(),
        )),
    }
}

/// α-z Rényi relative entropy `1/(α-1) log tr{(ρ^{α/z} σ^{(1-α)/z})^z}`,
/// evaluated through the Hermitian form `ρ^{α/2z} σ^{(1-α)/z} ρ^{α/2z}`.
pub fn d_alpha_z(
    rho: &HermitianOperator,
    sigma: &HermitianOperator,
    alpha: f64,
    z: f64,
) -> Result<f64> {
    Alpha::finite(alpha)?;
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::InvalidAlpha(format!(
            "z must be a positive real, got {z}"
        )));
    }
    let pair = prepare(rho, sigma)?;
    if alpha > 1.0 {
        require_domination(rho, sigma, Alpha::Finite(alpha))?;
    } else if supports_orthogonal(&pair) {
        return Ok(f64::INFINITY);
    }
    Ok(graded_log2_trace_power(
        &pair.rho,
        alpha / (2.0 * z),
        &pair.sigma,
        (1.0 - alpha) / z,
        z,
    ) / (alpha - 1.0))
}

/// Unconditional Rényi entropy `1/(1-α) log tr{ρ^α}` of a state, in bits.
pub fn renyi_entropy(rho: &HermitianOperator, alpha: Alpha) -> Result<f64> {
    let spec = rho.eig()?;
    spec.check_psd()?;
    Ok(match alpha {
        Alpha::Zero => (spec.rank() as f64).log2(),
        Alpha::One => -trace_on_support(&spec, |x| x * x.log2()),
        Alpha::Infinity => -spec.max_eigenvalue().log2(),
        Alpha::Finite(a) => trace_on_support(&spec, |x| x.powf(a)).log2() / (1.0 - a),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::ComplexVector;
    use num_complex::Complex64;

    const GRID: [Alpha; 8] = [
        Alpha::Zero,
        Alpha::Finite(0.3),
        Alpha::Finite(0.5),
        Alpha::One,
        Alpha::Finite(1.5),
        Alpha::Finite(2.0),
        Alpha::Finite(3.0),
        Alpha::Infinity,
    ];

    fn diag(v: &[f64]) -> HermitianOperator {
        HermitianOperator::from_real_diagonal(v)
    }

    fn plus() -> HermitianOperator {
        HermitianOperator::from_real_rows(2, &[0.5, 0.5, 0.5, 0.5]).unwrap()
    }

    fn lcg_state(dim: usize, seed: u64) -> HermitianOperator {
        let mut s = seed.wrapping_add(0x9E3779B97F4A7C15);
        let mut next = || {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let g = ComplexMatrix::from_fn(dim, dim, |_, _| Complex64::new(next(), next()));
        let m = HermitianOperator::from_matrix_unchecked(&g * g.adjoint());
        m.scale(1.0 / m.trace())
    }

    /// Classical Rényi divergence of probability vectors, the scalar oracle
    /// for commuting arguments.
    fn classical(p: &[f64], q: &[f64], alpha: Alpha) -> f64 {
        let pairs = p.iter().zip(q).filter(|(&a, _)| a > 0.0);
        match alpha {
            Alpha::Zero => -p
                .iter()
                .zip(q)
                .filter(|(&a, _)| a > 0.0)
                .map(|(_, &b)| b)
                .sum::<f64>()
                .log2(),
            Alpha::One => pairs.map(|(&a, &b)| a * (a / b).log2()).sum(),
            Alpha::Infinity => pairs.map(|(&a, &b)| a / b).fold(0.0, f64::max).log2(),
            Alpha::Finite(x) => {
                p.iter()
                    .zip(q)
                    .filter(|(&a, &b)| a > 0.0 && b > 0.0)
                    .map(|(&a, &b)| a.powf(x) * b.powf(1.0 - x))
                    .sum::<f64>()
                    .log2()
                    / (x - 1.0)
            }
        }
    }

    fn qubit(d0: f64, re: f64, im: f64) -> HermitianOperator {
        let m = ComplexMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(d0, 0.0),
                Complex64::new(re, im),
                Complex64::new(re, -im),
                Complex64::new(1.0 - d0, 0.0),
            ],
        );
        HermitianOperator::new(m).unwrap()
    }

    /// Reference values from 60-digit arithmetic.
    #[test]
    fn sandwiched_small_orders_keep_tiny_eigenvalues() {
        let rho = qubit(
            0.7491922335422592,
            -0.19216368595476602,
            0.11219180386909307,
        );
        let sigma = qubit(
            0.10237434041828468,
            0.16314079834606765,
            0.12987026363679272,
        );
        for (a, expected) in [
            (0.05, 0.087_725_457_852_648_5),
            (0.1, 0.181_905_904_859_436_5),
        ] {
            let v = d_sandwiched(&rho, &sigma, Alpha::Finite(a)).unwrap();
            assert!((v - expected).abs() < 1e-12, "{a}: {v} vs {expected}");
            assert!(v <= d_old(&rho, &sigma, Alpha::Finite(a)).unwrap());
        }
    }

    #[test]
    fn identical_arguments_give_zero() {
        for seed in 0..5 {
            let rho = lcg_state(3, seed);
            for a in GRID {
                assert!(d_old(&rho, &rho, a).unwrap().abs() < 1e-9, "old {a}");
                assert!(
                    d_sandwiched(&rho, &rho, a).unwrap().abs() < 1e-9,
                    "sandwiched {a}"
                );
            }
        }
    }

    #[test]
    fn classical_examples() {
        let rho = diag(&[0.5, 0.5]);
        let v = d_old(&rho, &diag(&[0.25, 0.75]), Alpha::Finite(2.0)).unwrap();
        assert!((v - (4.0f64 / 3.0).log2()).abs() < 1e-14);
        let v = d_old(&rho, &HermitianOperator::identity(2), Alpha::Finite(2.0)).unwrap();
        assert!((v + 1.0).abs() < 1e-14);
    }

    #[test]
    fn commuting_pairs_match_scalar_formula() {
        let p = [0.5, 0.3, 0.2, 0.0];
        let q = [0.1, 0.4, 0.25, 0.25];
        for a in GRID {
            let expected = classical(&p, &q, a);
            let o = d_old(&diag(&p), &diag(&q), a).unwrap();
            let s = d_sandwiched(&diag(&p), &diag(&q), a).unwrap();
            assert!((o - expected).abs() < 1e-12, "old {a}: {o} vs {expected}");
            assert!(
                (s - expected).abs() < 1e-12,
                "sandwiched {a}: {s} vs {expected}"
            );
            if let Alpha::Finite(x) = a {
                for z in [0.5, 1.0, 2.0, 3.7] {
                    assert!(
                        (d_alpha_z(&diag(&p), &diag(&q), x, z).unwrap() - expected).abs() < 1e-12
                    );
                }
            }
        }
    }

    #[test]
    fn sandwiched_plus_state_fixture() {
        // Γ is rank one with trace ⟨+|σ^{-1/2}|+⟩ = 1 + 1/√3,
        // so D̃_2 = 2 log2(1 + 1/√3) = 1.3150061...
        let v = d_sandwiched(&plus(), &diag(&[0.75, 0.25]), Alpha::Finite(2.0)).unwrap();
        assert!((v - 1.315_006_126_231_835_5).abs() < 1e-13, "{v}");
        assert!((v - 2.0 * (1.0 + 1.0 / 3f64.sqrt()).log2()).abs() < 1e-13);
    }

    #[test]
    fn alpha_z_specializations() {
        for seed in 0..10 {
            let rho = lcg_state(3, seed);
            let sigma = lcg_state(3, seed + 50);
            for a in [0.3, 0.7, 1.5, 2.0, 3.0] {
                let z1 = d_alpha_z(&rho, &sigma, a, 1.0).unwrap();
                let za = d_alpha_z(&rho, &sigma, a, a).unwrap();
                assert!((z1 - d_old(&rho, &sigma, Alpha::Finite(a)).unwrap()).abs() < 1e-10);
                assert!((za - d_sandwiched(&rho, &sigma, Alpha::Finite(a)).unwrap()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn domination_errors() {
        let rho = diag(&[0.5, 0.5]);
        let sigma = diag(&[1.0, 0.0]);
        for a in [Alpha::Finite(2.0), Alpha::One, Alpha::Infinity] {
            assert!(matches!(
                d_old(&rho, &sigma, a),
                Err(Error::Precondition(_))
            ));
            assert!(matches!(
                d_sandwiched(&rho, &sigma, a),
                Err(Error::Precondition(_))
            ));
        }
        // below one, no domination needed
        assert!(d_old(&rho, &sigma, Alpha::Finite(0.5)).unwrap().is_finite());
        assert!(matches!(
            d_old(&rho, &HermitianOperator::zeros(2), Alpha::Finite(0.5)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn orthogonal_supports_below_one_are_infinite() {
        let rho = diag(&[1.0, 0.0]);
        let sigma = diag(&[0.0, 1.0]);
        for a in [Alpha::Zero, Alpha::Finite(0.5)] {
            assert_eq!(d_old(&rho, &sigma, a).unwrap(), f64::INFINITY);
            assert_eq!(d_sandwiched(&rho, &sigma, a).unwrap(), f64::INFINITY);
        }
    }

    #[test]
    fn ordering_and_monotonicity() {
        for seed in 0..30 {
            let rho = lcg_state(3, seed);
            let sigma = lcg_state(3, seed + 1000);
            let mut prev_o = f64::NEG_INFINITY;
            let mut prev_s = f64::NEG_INFINITY;
            for a in GRID {
                let o = d_old(&rho, &sigma, a).unwrap();
                let s = d_sandwiched(&rho, &sigma, a).unwrap();
                if !matches!(a, Alpha::Zero | Alpha::Infinity | Alpha::One) {
                    assert!(o >= s - 1e-8, "seed {seed} α {a}: {o} < {s}");
                }
                assert!(
                    o >= prev_o - 1e-8 && s >= prev_s - 1e-8,
                    "seed {seed} α {a}"
                );
                prev_o = o;
                prev_s = s;
            }
        }
    }

    #[test]
    fn limits_are_consistent() {
        for seed in 0..10 {
            let rho = lcg_state(3, seed);
            let sigma = lcg_state(3, seed + 77);
            for fam in [Family::Old, Family::Sandwiched] {
                let one = divergence(fam, &rho, &sigma, Alpha::One).unwrap();
                let lo = divergence(fam, &rho, &sigma, Alpha::Finite(1.0 - 1e-5)).unwrap();
                let hi = divergence(fam, &rho, &sigma, Alpha::Finite(1.0 + 1e-5)).unwrap();
                assert!(lo <= one + 1e-9 && one <= hi + 1e-9);
                assert!((hi - lo).abs() < 1e-3);
            }
            let inf = d_sandwiched(&rho, &sigma, Alpha::Infinity).unwrap();
            let big = d_sandwiched(&rho, &sigma, Alpha::Finite(1e3)).unwrap();
            assert!((inf - big).abs() < 1e-2, "{inf} vs {big}");
            assert!(big <= inf + 1e-9);
            let inf = d_old(&rho, &sigma, Alpha::Infinity).unwrap();
            let big = d_old(&rho, &sigma, Alpha::Finite(1e3)).unwrap();
            assert!(
                (inf - big).abs() < 1e-2 && big <= inf + 1e-9,
                "{inf} vs {big}"
            );
        }
    }

    /// Greedy max-weight basis of the projected eigenvectors, an independent
    /// route to the α = 0 sandwiched limit via the matroid exchange property.
    fn greedy_zero(rho: &HermitianOperator, sigma: &HermitianOperator) -> f64 {
        let proj = rho.support_projector().unwrap();
        let s = sigma.eig().unwrap();
        let mut chosen: Vec<ComplexVector> = Vec::new();
        let mut weight = 0.0;
        for j in 0..s.dim() {
            if s.eigenvalues[j] <= s.support_threshold() {
                continue;
            }
            let w = proj.matrix() * s.eigenvector(j);
            let mut cand = chosen.clone();
            cand.push(w);
            let m = ComplexMatrix::from_columns(&cand);
            if smallest_singular_value(&m) > INDEPENDENCE_CUTOFF {
                chosen = cand;
                weight += s.eigenvalues[j];
            }
        }
        -weight.log2()
    }

    #[test]
    fn sandwiched_zero_matches_greedy_oracle() {
        for seed in 0..20 {
            // rank-deficient ρ makes the subset structure non-trivial
            let a = lcg_state(4, seed);
            let sa = a.eig().unwrap();
            let rho = sa.compose(|x| x).sandwich(&sa.projector_onto([0, 1]));
            let rho = rho.scale(1.0 / rho.trace());
            let sigma = lcg_state(4, seed + 300);
            let v = d_sandwiched(&rho, &sigma, Alpha::Zero).unwrap();
            assert!((v - greedy_zero(&rho, &sigma)).abs() < 1e-12);
            let small = d_sandwiched(&rho, &sigma, Alpha::Finite(0.1)).unwrap();
            assert!(small >= v - 1e-9, "{small} vs {v}");
        }
    }

    #[test]
    fn sandwiched_zero_capability_limit() {
        let rho = HermitianOperator::identity(15).scale(1.0 / 15.0);
        assert!(matches!(
            d_sandwiched(&rho, &rho, Alpha::Zero),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn petz_infinity_handles_degenerate_spectra() {
        // ρ ∝ 1 in any basis: max ratio is (1/2)/(min μ)
        let rho = HermitianOperator::identity(2).scale(0.5);
        let v = d_old(&rho, &diag(&[0.25, 0.75]), Alpha::Infinity).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        let big = d_old(&plus(), &diag(&[0.75, 0.25]), Alpha::Finite(400.0)).unwrap();
        let inf = d_old(&plus(), &diag(&[0.75, 0.25]), Alpha::Infinity).unwrap();
        assert!((inf - 2.0).abs() < 1e-12 && (big - inf).abs() < 1e-2);
    }

    #[test]
    fn renyi_entropy_of_qubit() {
        let rho = diag(&[0.5, 0.5]);
        for a in GRID {
            assert!((renyi_entropy(&rho, a).unwrap() - 1.0).abs() < 1e-14);
        }
        let p: f64 = 0.2;
        let rho = diag(&[p, 1.0 - p]);
        let h2 = -(p * p + (1.0 - p) * (1.0 - p)).log2();
        assert!((renyi_entropy(&rho, Alpha::Finite(2.0)).unwrap() - h2).abs() < 1e-14);
    }
}
