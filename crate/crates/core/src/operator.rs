//! Dense complex Hermitian linear algebra and the operator functions every
//! divergence and entropy is built from.
//!
//! Matrix functions follow the support convention: a function of an operator
//! is applied to the eigenvalues above the support cutoff and the remaining
//! eigenvalues are mapped to zero. In particular `0^p = 0` for every `p`,
//! including negative exponents.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::layout::SubsystemLayout;

pub type ComplexMatrix = DMatrix<Complex64>;
pub type ComplexVector = DVector<Complex64>;

/// Relative eigenvalue cutoff: `λ ≤ SUPPORT_CUTOFF · λ_max` counts as zero.
pub const SUPPORT_CUTOFF: f64 = 1e-10;
/// Absolute tolerance for Hermiticity, reconstruction and domination on
/// unit-normalized inputs.
pub const TOLERANCE: f64 = 1e-9;
/// Relative gap below which eigenvalues share a pinching block.
pub const DEGENERACY_TOLERANCE: f64 = 1e-8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn max_abs_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn max_abs(a: &ComplexMatrix) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Hilbert-Schmidt inner product `Re tr{A† B}`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x.conj() * y).re).sum()
}

/// A square matrix equal to its conjugate transpose (up to tolerance).
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    matrix: ComplexMatrix,
}

impl HermitianOperator {
    /// Validates squareness, finiteness and Hermiticity, then stores the
    /// symmetrized matrix `(M + M†)/2`.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if matrix
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let adj = matrix.adjoint();
        let deviation = max_abs_diff(&matrix, &adj);
        if deviation > TOLERANCE * max_abs(&matrix).max(1.0) {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self::from_matrix_unchecked(matrix))
    }

    /// Symmetrizes without checking. Used for products that are Hermitian
    /// analytically.
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix) -> Self {
        let adj = matrix.adjoint();
        Self {
            matrix: (matrix + adj) * Complex64::new(0.5, 0.0),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::zeros(dim, dim),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d = DVector::from_iterator(diag.len(), diag.iter().map(|&x| Complex64::new(x, 0.0)));
        Self {
            matrix: ComplexMatrix::from_diagonal(&d),
        }
    }

    /// Builds an operator from real row-major entries.
    pub fn from_real_rows(dim: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Self::new(ComplexMatrix::from_row_iterator(
            dim,
            dim,
            entries.iter().map(|&x| Complex64::new(x, 0.0)),
        ))
    }

    /// The rank-one operator `|v⟩⟨v|`.
    pub fn outer(v: &ComplexVector) -> Self {
        Self {
            matrix: v * v.adjoint(),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn eig(&self) -> Result<SpectralDecomposition> {
        eig_hermitian(self)
    }

    pub fn power(&self, p: f64) -> Result<Self> {
        operator_power(self, p)
    }

    pub fn sqrt(&self) -> Result<Self> {
        operator_power(self, 0.5)
    }

    /// Base-2 logarithm on the support, zero on the kernel.
    pub fn log2(&self) -> Result<Self> {
        let spec = self.eig()?;
        spec.check_psd()?;
        let cut = spec.support_threshold();
        Ok(spec.compose(|x| if x > cut { x.log2() } else { 0.0 }))
    }

    pub fn support_projector(&self) -> Result<Self> {
        support_projector(self)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            matrix: &self.matrix * Complex64::new(s, 0.0),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            matrix: &self.matrix + &other.matrix,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            matrix: &self.matrix - &other.matrix,
        }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        tensor(self, other)
    }

    /// `X M X` for Hermitian `X`.
    pub fn sandwich(&self, x: &Self) -> Self {
        Self::from_matrix_unchecked(&x.matrix * &self.matrix * &x.matrix)
    }

    /// `K M K†` for an arbitrary (possibly rectangular) `K`.
    pub fn conjugate_by(&self, k: &ComplexMatrix) -> Self {
        Self::from_matrix_unchecked(k * &self.matrix * k.adjoint())
    }

    /// `Re tr{M X}`.
    pub fn trace_with(&self, other: &Self) -> f64 {
        // tr{AB} = Σ_ij A_ij B_ji; for Hermitian B, B_ji = conj(B_ij).
        hs_inner(&other.matrix, &self.matrix)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs_diff(&self.matrix, &other.matrix)
    }

    pub fn max_abs_entry(&self) -> f64 {
        max_abs(&self.matrix)
    }

    /// Largest absolute eigenvalue.
    pub fn operator_norm(&self) -> Result<f64> {
        let spec = self.eig()?;
        Ok(spec.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max))
    }

    pub fn max_eigenvalue(&self) -> Result<f64> {
        Ok(self.eig()?.max_eigenvalue())
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.eig()?.min_eigenvalue())
    }

    /// Checks positivity up to the clipping tolerance.
    pub fn check_psd(&self) -> Result<()> {
        self.eig()?.check_psd()
    }
}

/// Eigendecomposition with eigenvalues sorted in descending order.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `eigenvalues`.
    pub eigenvectors: ComplexMatrix,
}

/// One eigenspace: an eigenvalue (block mean) and the projector onto it.
#[derive(Clone, Debug)]
pub struct Eigenspace {
    pub value: f64,
    pub multiplicity: usize,
    pub projector: HermitianOperator,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// Eigenvalues at or below this value are outside the support.
    pub fn support_threshold(&self) -> f64 {
        SUPPORT_CUTOFF * self.max_eigenvalue().max(0.0)
    }

    pub fn rank(&self) -> usize {
        let cut = self.support_threshold();
        self.eigenvalues.iter().filter(|&&x| x > cut).count()
    }

    fn negative_tolerance(&self) -> f64 {
        let scale = self.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max);
        TOLERANCE * scale.max(f64::MIN_POSITIVE)
    }

    pub fn check_psd(&self) -> Result<()> {
        let min = self.min_eigenvalue();
        if min < -self.negative_tolerance() {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(())
    }

    /// `V diag(f(λ)) V†`.
    pub fn compose(&self, f: impl Fn(f64) -> f64) -> HermitianOperator {
        let mut scaled = self.eigenvectors.clone();
        for (j, &lam) in self.eigenvalues.iter().enumerate() {
            let fl = Complex64::new(f(lam), 0.0);
            for z in scaled.column_mut(j).iter_mut() {
                *z *= fl;
            }
        }
        HermitianOperator::from_matrix_unchecked(scaled * self.eigenvectors.adjoint())
    }

    pub fn reconstruct(&self) -> HermitianOperator {
        self.compose(|x| x)
    }

    pub fn eigenvector(&self, j: usize) -> ComplexVector {
        self.eigenvectors.column(j).into_owned()
    }

    /// Projector onto the span of the eigenvectors with indices in `range`.
    pub fn projector_onto(&self, indices: impl IntoIterator<Item = usize>) -> HermitianOperator {
        let d = self.dim();
        let mut p = ComplexMatrix::zeros(d, d);
        for j in indices {
            let v = self.eigenvectors.column(j);
            p += v * v.adjoint();
        }
        HermitianOperator::from_matrix_unchecked(p)
    }

    /// Groups eigenvalues into eigenspaces: consecutive sorted eigenvalues
    /// closer than `rel_tol · max|λ|` share a block.
    pub fn eigenspaces(&self, rel_tol: f64) -> Vec<Eigenspace> {
        let scale = self.eigenvalues.iter().map(|x| x.abs()).fold(0.0, f64::max);
        let gap = rel_tol * scale;
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (j, &lam) in self.eigenvalues.iter().enumerate() {
            match blocks.last_mut() {
                Some(block) if self.eigenvalues[*block.last().unwrap()] - lam <= gap => {
                    block.push(j)
                }
                _ => blocks.push(vec![j]),
            }
        }
        blocks
            .into_iter()
            .map(|block| {
                let value =
                    block.iter().map(|&j| self.eigenvalues[j]).sum::<f64>() / block.len() as f64;
                Eigenspace {
                    value,
                    multiplicity: block.len(),
                    projector: self.projector_onto(block),
                }
            })
            .collect()
    }
}

/// Full eigendecomposition of a Hermitian operator, eigenvalues descending.
pub fn eig_hermitian(m: &HermitianOperator) -> Result<SpectralDecomposition> {
    let dim = m.dim();
    if m.matrix
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::NonFinite);
    }
    let eig = SymmetricEigen::try_new(m.matrix.clone(), f64::EPSILON, 10_000 * dim.max(1))
        .ok_or(Error::EigenNoConvergence { dim })?;
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues = order.iter().map(|&j| eig.eigenvalues[j]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(dim, dim);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Real power `M^p` under the support convention.
///
/// Positive integer powers are applied to every eigenvalue, so they are
/// defined for indefinite operators too. Any other exponent requires
/// `M ⪰ -tolerance`; eigenvalues at or below the support cutoff map to zero.
pub fn operator_power(m: &HermitianOperator, p: f64) -> Result<HermitianOperator> {
    if !p.is_finite() {
        return Err(Error::Precondition(format!("exponent {p} is not finite")));
    }
    let spec = m.eig()?;
    power_from_spectrum(&spec, p)
}

pub(crate) fn power_from_spectrum(
    spec: &SpectralDecomposition,
    p: f64,
) -> Result<HermitianOperator> {
    if p == 1.0 {
        return Ok(spec.reconstruct());
    }
    if p > 0.0 && p.fract() == 0.0 {
        let n = p as i32;
        return Ok(spec.compose(|x| x.powi(n)));
    }
    spec.check_psd()?;
    let cut = spec.support_threshold();
    Ok(spec.compose(|x| if x > cut { x.powf(p) } else { 0.0 }))
}

/// `Σ_λ f(λ)` over the support, the trace of `f(M)` under the support convention.
pub(crate) fn trace_on_support(spec: &SpectralDecomposition, f: impl Fn(f64) -> f64) -> f64 {
    let cut = spec.support_threshold();
    spec.eigenvalues
        .iter()
        .filter(|&&x| x > cut)
        .map(|&x| f(x))
        .sum()
}

/// Singular values by one-sided Jacobi rotations on the columns, in
/// descending order. Small singular values keep high relative accuracy when
/// the matrix is a well-conditioned one times a diagonal column scaling.
pub fn jacobi_singular_values(m: &ComplexMatrix) -> Vec<f64> {
    const MAX_SWEEPS: usize = 80;
    let mut g = m.clone();
    let n = g.ncols();
    let tol = f64::EPSILON * (g.nrows().max(1) as f64);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let a = g.column(i).norm_squared();
                let b = g.column(j).norm_squared();
                let c = g.column(i).dotc(&g.column(j));
                let cn = c.norm();
                if cn == 0.0 || cn <= tol * (a * b).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = c / cn;
                let zeta = (b - a) / (2.0 * cn);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for k in 0..g.nrows() {
                    let x = g[(k, i)];
                    let y = g[(k, j)] * phase.conj();
                    g[(k, i)] = x * cs - y * sn;
                    g[(k, j)] = x * sn + y * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = (0..n).map(|j| g.column(j).norm()).collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

pub fn support_projector(m: &HermitianOperator) -> Result<HermitianOperator> {
    let spec = m.eig()?;
    spec.check_psd()?;
    let cut = spec.support_threshold();
    Ok(spec.compose(|x| if x > cut { 1.0 } else { 0.0 }))
}

/// `ρ ≪ σ`: the kernel of `σ` lies inside the kernel of `ρ`.
pub fn dominates(rho: &HermitianOperator, sigma: &HermitianOperator) -> Result<bool> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: sigma.dim(),
            found: rho.dim(),
        });
    }
    let proj = support_projector(sigma)?;
    let compressed = rho.sandwich(&proj);
    Ok(compressed.max_abs_diff(rho) <= TOLERANCE * rho.max_abs_entry().max(1.0))
}

pub fn tensor(a: &HermitianOperator, b: &HermitianOperator) -> HermitianOperator {
    HermitianOperator {
        matrix: a.matrix.kronecker(&b.matrix),
    }
}

/// `1 ⊗ … ⊗ op ⊗ … ⊗ 1` with `op` acting on subsystem `label`.
/// `op` may be rectangular (a map into a subsystem of another dimension).
pub fn local_operator(
    layout: &SubsystemLayout,
    label: &str,
    op: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    let pos = layout.position(label)?;
    if op.ncols() != layout.dims()[pos] {
        return Err(Error::DimensionMismatch {
            expected: layout.dims()[pos],
            found: op.ncols(),
        });
    }
    let mut acc = ComplexMatrix::from_element(1, 1, ONE);
    for (i, &d) in layout.dims().iter().enumerate() {
        acc = if i == pos {
            acc.kronecker(op)
        } else {
            acc.kronecker(&ComplexMatrix::identity(d, d))
        };
    }
    Ok(acc)
}

/// Hermitian version of [`local_operator`]: `1 ⊗ X ⊗ 1`.
pub fn embed(
    layout: &SubsystemLayout,
    label: &str,
    x: &HermitianOperator,
) -> Result<HermitianOperator> {
    Ok(HermitianOperator {
        matrix: local_operator(layout, label, &x.matrix)?,
    })
}

/// Splits every basis index of `layout` into (kept index, traced index).
fn index_split(layout: &SubsystemLayout, keep: &[bool]) -> (usize, usize, Vec<Vec<usize>>) {
    let dims = layout.dims();
    let kept_dim: usize = dims
        .iter()
        .zip(keep)
        .filter(|(_, &k)| k)
        .map(|(d, _)| d)
        .product();
    let traced_dim = layout.total_dim() / kept_dim;
    let mut table = vec![vec![0usize; traced_dim]; kept_dim];
    let n = dims.len();
    let mut digits = vec![0usize; n];
    for full in 0..layout.total_dim() {
        let (mut ki, mut ti) = (0usize, 0usize);
        for s in 0..n {
            if keep[s] {
                ki = ki * dims[s] + digits[s];
            } else {
                ti = ti * dims[s] + digits[s];
            }
        }
        table[ki][ti] = full;
        for s in (0..n).rev() {
            digits[s] += 1;
            if digits[s] < dims[s] {
                break;
            }
            digits[s] = 0;
        }
    }
    (kept_dim, traced_dim, table)
}

/// Partial trace over every subsystem not in `keep`. Returns the reduced
/// operator and its layout (kept labels in the original order).
pub fn partial_trace(
    m: &HermitianOperator,
    layout: &SubsystemLayout,
    keep: &[&str],
) -> Result<(HermitianOperator, SubsystemLayout)> {
    layout.check_dim(m.dim())?;
    let reduced = layout.keep(keep)?;
    let mask: Vec<bool> = layout
        .labels()
        .iter()
        .map(|l| keep.contains(&l.as_str()))
        .collect();
    let (kd, td, table) = index_split(layout, &mask);
    let mut out = ComplexMatrix::zeros(kd, kd);
    for i in 0..kd {
        for j in 0..kd {
            let mut acc = ZERO;
            for t in 0..td {
                acc += m.matrix[(table[i][t], table[j][t])];
            }
            out[(i, j)] = acc;
        }
    }
    Ok((HermitianOperator::from_matrix_unchecked(out), reduced))
}

/// Reorders the tensor factors of `m` so that they follow `order`, which
/// must list every label of `layout` exactly once.
pub fn permute_subsystems(
    m: &HermitianOperator,
    layout: &SubsystemLayout,
    order: &[&str],
) -> Result<(HermitianOperator, SubsystemLayout)> {
    layout.check_dim(m.dim())?;
    if order.len() != layout.len() {
        return Err(Error::Layout(format!(
            "permutation lists {} labels, layout {layout} has {}",
            order.len(),
            layout.len()
        )));
    }
    let src: Vec<usize> = order
        .iter()
        .map(|l| layout.position(l))
        .collect::<Result<_>>()?;
    let new_dims: Vec<usize> = src.iter().map(|&p| layout.dims()[p]).collect();
    let new_layout = SubsystemLayout::new(order.to_vec(), new_dims.clone())?;
    let old_dims = layout.dims();
    let mut strides = vec![1usize; old_dims.len()];
    for s in (0..old_dims.len().saturating_sub(1)).rev() {
        strides[s] = strides[s + 1] * old_dims[s + 1];
    }
    let total = layout.total_dim();
    let mut map = vec![0usize; total];
    let mut digits = vec![0usize; new_dims.len()];
    for slot in map.iter_mut() {
        *slot = digits.iter().zip(&src).map(|(&d, &p)| d * strides[p]).sum();
        for s in (0..new_dims.len()).rev() {
            digits[s] += 1;
            if digits[s] < new_dims[s] {
                break;
            }
            digits[s] = 0;
        }
    }
    let out = ComplexMatrix::from_fn(total, total, |i, j| m.matrix[(map[i], map[j])]);
    Ok((HermitianOperator { matrix: out }, new_layout))
}

/// Pinching `Σ_k P_k M P_k` in the eigenbasis of `basis_of`.
pub fn pinch(m: &HermitianOperator, basis_of: &HermitianOperator) -> Result<HermitianOperator> {
    if m.dim() != basis_of.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis_of.dim(),
            found: m.dim(),
        });
    }
    let spaces = basis_of.eig()?.eigenspaces(DEGENERACY_TOLERANCE);
    let mut acc = ComplexMatrix::zeros(m.dim(), m.dim());
    for space in &spaces {
        let p = &space.projector.matrix;
        acc += p * &m.matrix * p;
    }
    Ok(HermitianOperator::from_matrix_unchecked(acc))
}

/// Fidelity `‖√ρ √σ‖_1 = tr √(√σ ρ √σ)`. Neither argument needs unit trace.
pub fn fidelity(rho: &HermitianOperator, sigma: &HermitianOperator) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: sigma.dim(),
            found: rho.dim(),
        });
    }
    let (rs, ss) = (rho.eig()?, sigma.eig()?);
    rs.check_psd()?;
    ss.check_psd()?;
    // ‖√ρ √σ‖₁ from the singular values of N_ρ^½ (V_ρ† V_σ) N_σ^½
    let overlap = rs.eigenvectors.adjoint() * &ss.eigenvectors;
    let m = ComplexMatrix::from_fn(rho.dim(), rho.dim(), |i, j| {
        overlap[(i, j)] * (rs.eigenvalues[i].max(0.0) * ss.eigenvalues[j].max(0.0)).sqrt()
    });
    Ok(jacobi_singular_values(&m).iter().sum())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum HolderDirection {
    /// `tr{AB} ≤ ‖A‖_p ‖B‖_q` (p > 1).
    Leq,
    /// `tr{AB} ≥ ‖A‖_p ‖B‖_q` (p < 1, B ≫ A).
    Geq,
}

#[derive(Clone, Copy, Debug)]
pub struct HolderCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub direction: HolderDirection,
}

impl HolderCheck {
    /// Amount by which the inequality is violated, relative to the larger
    /// side. Non-positive when the inequality holds.
    pub fn relative_violation(&self) -> f64 {
        let scale = self.lhs.abs().max(self.rhs.abs()).max(f64::MIN_POSITIVE);
        match self.direction {
            HolderDirection::Leq => (self.lhs - self.rhs) / scale,
            HolderDirection::Geq => (self.rhs - self.lhs) / scale,
        }
    }
}

/// Evaluates both sides of the trace Hölder inequality (p > 1) or its
/// reverse (0 < p < 1), with `q = p/(p-1)` and `B^q` taken on the support of `B`.
pub fn holder_pair_check(
    a: &HermitianOperator,
    b: &HermitianOperator,
    p: f64,
) -> Result<HolderCheck> {
    if !(p > 0.0) || p == 1.0 || !p.is_finite() {
        return Err(Error::Precondition(format!(
            "Hölder exponent must satisfy p > 0, p ≠ 1 (got {p})"
        )));
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let q = p / (p - 1.0);
    let direction = if p > 1.0 {
        HolderDirection::Leq
    } else {
        if !dominates(a, b)? {
            return Err(Error::Precondition(
                "reverse Hölder inequality requires B ≫ A".into(),
            ));
        }
        HolderDirection::Geq
    };
    let sa = a.eig()?;
    let sb = b.eig()?;
    sa.check_psd()?;
    sb.check_psd()?;
    let norm_a = trace_on_support(&sa, |x| x.powf(p)).powf(1.0 / p);
    let norm_b = trace_on_support(&sb, |x| x.powf(q)).powf(1.0 / q);
    Ok(HolderCheck {
        lhs: a.trace_with(b),
        rhs: norm_a * norm_b,
        direction,
    })
}
