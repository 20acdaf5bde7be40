use nalgebra::QR;
use num_complex::Complex64;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::layout::SubsystemLayout;
use crate::operator::{partial_trace, ComplexMatrix, ComplexVector, HermitianOperator};
use crate::state::DensityOperator;

/// Deterministic generator: ChaCha20 keyed by a 64-bit seed, with one
/// independent stream per trial index.
#[derive(Clone, Debug)]
pub struct SeededRng {
    seed: u64,
    stream: u64,
    inner: ChaCha20Rng,
}

impl SeededRng {
    pub const ALGORITHM: &'static str = "chacha20";

    pub fn new(seed: u64) -> Self {
        Self::for_trial(seed, 0)
    }

    /// Stream `trial` of `seed`. Streams of one seed never overlap, so trials
    /// can be generated in any order.
    pub fn for_trial(seed: u64, trial: u64) -> Self {
        let mut inner = ChaCha20Rng::seed_from_u64(seed);
        inner.set_stream(trial);
        Self {
            seed,
            stream: trial,
            inner,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Standard complex Gaussian `(x + iy)/√2`.
    pub fn complex_gaussian(&mut self) -> Complex64 {
        let re: f64 = self.inner.sample(StandardNormal);
        let im: f64 = self.inner.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    pub fn ginibre(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        ComplexMatrix::from_fn(rows, cols, |_, _| self.complex_gaussian())
    }

    pub fn uniform(&mut self) -> f64 {
        self.inner.random()
    }
}

impl RngCore for SeededRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

/// Haar-random `dim × dim` unitary: QR of a Ginibre matrix with the phases of
/// `R`'s diagonal moved into `Q`.
pub fn haar_unitary(dim: usize, rng: &mut SeededRng) -> ComplexMatrix {
    let qr = QR::new(rng.ginibre(dim, dim));
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        for z in q.column_mut(j).iter_mut() {
            *z *= phase;
        }
    }
    q
}

/// Haar-random isometry `C^{dim_in} → C^{dim_out}` (first columns of a Haar unitary).
pub fn haar_isometry(dim_in: usize, dim_out: usize, rng: &mut SeededRng) -> Result<ComplexMatrix> {
    if dim_in == 0 || dim_in > dim_out {
        return Err(Error::Precondition(format!(
            "an isometry needs 1 ≤ input dim ≤ output dim, got {dim_in} → {dim_out}"
        )));
    }
    Ok(haar_unitary(dim_out, rng).columns(0, dim_in).into_owned())
}

/// Unit vector on a subsystem layout.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    vector: ComplexVector,
    layout: SubsystemLayout,
}

impl PureState {
    pub fn new(vector: ComplexVector, layout: SubsystemLayout) -> Result<Self> {
        layout.check_dim(vector.len())?;
        let norm = vector.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::Precondition(format!(
                "state vector must have unit norm, got {norm}"
            )));
        }
        Ok(Self { vector, layout })
    }

    /// Normalizes a non-zero vector.
    pub fn normalized(vector: ComplexVector, layout: SubsystemLayout) -> Result<Self> {
        let norm = vector.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::Precondition("state vector must be non-zero".into()));
        }
        Self::new(vector.unscale(norm), layout)
    }

    /// `Σ_i |ii⟩/√d` on two systems of dimension `d`.
    pub fn maximally_entangled(dim: usize, labels: [&str; 2]) -> Result<Self> {
        let layout = SubsystemLayout::new(labels.to_vec(), vec![dim, dim])?;
        let mut v = ComplexVector::zeros(dim * dim);
        for i in 0..dim {
            v[i * dim + i] = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        }
        Self::new(v, layout)
    }

    pub fn vector(&self) -> &ComplexVector {
        &self.vector
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn density(&self) -> DensityOperator {
        DensityOperator::from_parts_unchecked(
            HermitianOperator::outer(&self.vector),
            self.layout.clone(),
        )
    }

    pub fn marginal(&self, keep: &[&str]) -> Result<DensityOperator> {
        self.density().marginal(keep)
    }
}

pub fn random_pure_state(layout: &SubsystemLayout, rng: &mut SeededRng) -> PureState {
    let d = layout.total_dim();
    let v = ComplexVector::from_fn(d, |_, _| rng.complex_gaussian());
    let norm = v.norm();
    PureState {
        vector: v.unscale(norm),
        layout: layout.clone(),
    }
}

/// Random state of the given rank: the marginal of a Haar pure state on
/// `layout ⊗ C^rank`. Full rank gives the Hilbert-Schmidt ensemble.
pub fn random_density(
    layout: &SubsystemLayout,
    rank: usize,
    rng: &mut SeededRng,
) -> Result<DensityOperator> {
    let dim = layout.total_dim();
    if rank == 0 || rank > dim {
        return Err(Error::Precondition(format!(
            "rank must lie in 1..={dim}, got {rank}"
        )));
    }
    let g = rng.ginibre(dim, rank);
    let m = HermitianOperator::from_matrix_unchecked(&g * g.adjoint());
    let m = m.scale(1.0 / m.trace());
    Ok(DensityOperator::from_parts_unchecked(m, layout.clone()))
}

/// Purification on `system ⊗ env` with environment dimension `rank(ρ)`:
/// `|ψ⟩ = Σ_k √λ_k |v_k⟩|k⟩`.
pub fn purify(rho: &DensityOperator, env_label: &str) -> Result<PureState> {
    let spec = rho.eig()?;
    let rank = spec.rank().max(1);
    let layout = rho.layout().appended(env_label, rank)?;
    let d = rho.dim();
    let mut v = ComplexVector::zeros(d * rank);
    for k in 0..rank {
        let w = spec.eigenvalues[k].max(0.0).sqrt();
        for i in 0..d {
            v[i * rank + k] = spec.eigenvectors[(i, k)] * w;
        }
    }
    PureState::normalized(v, layout)
}

/// Spectrum check helper: eigenvalues of the marginal on `keep`, descending.
pub fn marginal_spectrum(psi: &PureState, keep: &[&str]) -> Result<Vec<f64>> {
    let (m, _) = partial_trace(&HermitianOperator::outer(psi.vector()), psi.layout(), keep)?;
    Ok(m.eig()?.eigenvalues)
}
