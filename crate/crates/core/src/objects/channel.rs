use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::layout::SubsystemLayout;
use crate::objects::random::{haar_isometry, SeededRng};
use crate::operator::{local_operator, max_abs_diff, ComplexMatrix, HermitianOperator};
use crate::state::DensityOperator;

/// Completeness tolerance `‖Σ K†K − 1‖_max`.
pub const KRAUS_TOLERANCE: f64 = 1e-9;

/// Completely positive trace-preserving map in Kraus form.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    kraus: Vec<ComplexMatrix>,
    dim_in: usize,
    dim_out: usize,
}

impl KrausChannel {
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::InvalidChannel("Kraus list is empty".into()))?;
        let (dim_out, dim_in) = first.shape();
        if dim_in == 0 || dim_out == 0 {
            return Err(Error::InvalidChannel(
                "Kraus operators must be non-empty".into(),
            ));
        }
        let mut sum = ComplexMatrix::zeros(dim_in, dim_in);
        for (i, k) in kraus.iter().enumerate() {
            if k.shape() != (dim_out, dim_in) {
                return Err(Error::InvalidChannel(format!(
                    "Kraus operator {i} is {}x{}, expected {dim_out}x{dim_in}",
                    k.nrows(),
                    k.ncols()
                )));
            }
            if k.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::InvalidChannel(format!(
                    "Kraus operator {i} has non-finite entries"
                )));
            }
            sum += k.adjoint() * k;
        }
        let dev = max_abs_diff(&sum, &ComplexMatrix::identity(dim_in, dim_in));
        if dev > KRAUS_TOLERANCE {
            return Err(Error::InvalidChannel(format!(
                "Kraus operators are not trace preserving: ‖Σ K†K − 1‖ = {dev:.3e}"
            )));
        }
        Ok(Self {
            kraus,
            dim_in,
            dim_out,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            kraus: vec![ComplexMatrix::identity(dim, dim)],
            dim_in: dim,
            dim_out: dim,
        }
    }

    /// `ρ ↦ tr{ρ} 1/d` with Kraus operators `|i⟩⟨j|/√d`.
    pub fn completely_depolarizing(dim: usize) -> Self {
        let w = Complex64::new(1.0 / (dim as f64).sqrt(), 0.0);
        let mut kraus = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut k = ComplexMatrix::zeros(dim, dim);
                k[(i, j)] = w;
                kraus.push(k);
            }
        }
        Self {
            kraus,
            dim_in: dim,
            dim_out: dim,
        }
    }

    /// Channel `ρ ↦ tr_env{V ρ V†}` of an isometry `V: in → out ⊗ env`.
    pub fn from_isometry(v: &ComplexMatrix, dim_out: usize, env_dim: usize) -> Result<Self> {
        if v.nrows() != dim_out * env_dim {
            return Err(Error::DimensionMismatch {
                expected: dim_out * env_dim,
                found: v.nrows(),
            });
        }
        let kraus = (0..env_dim)
            .map(|e| ComplexMatrix::from_fn(dim_out, v.ncols(), |o, i| v[(o * env_dim + e, i)]))
            .collect();
        Self::new(kraus)
    }

    /// Random channel from a Haar isometry into `out ⊗ env`.
    pub fn random(
        dim_in: usize,
        dim_out: usize,
        env_dim: usize,
        rng: &mut SeededRng,
    ) -> Result<Self> {
        if dim_in == 0 || dim_out == 0 || env_dim == 0 {
            return Err(Error::InvalidChannel(
                "channel dimensions must be positive".into(),
            ));
        }
        if dim_out * env_dim < dim_in {
            return Err(Error::InvalidChannel(format!(
                "output ⊗ environment ({dim_out}·{env_dim}) is smaller than the input ({dim_in})"
            )));
        }
        let v = haar_isometry(dim_in, dim_out * env_dim, rng)?;
        Self::from_isometry(&v, dim_out, env_dim)
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    /// Stinespring isometry `V = Σ_e K_e ⊗ |e⟩` into `out ⊗ env`.
    pub fn stinespring(&self) -> ComplexMatrix {
        let env = self.kraus.len();
        ComplexMatrix::from_fn(self.dim_out * env, self.dim_in, |r, i| {
            self.kraus[r % env][(r / env, i)]
        })
    }

    /// `Σ K X K†` on an operator of the input space.
    pub fn apply_operator(&self, x: &HermitianOperator) -> Result<HermitianOperator> {
        if x.dim() != self.dim_in {
            return Err(Error::DimensionMismatch {
                expected: self.dim_in,
                found: x.dim(),
            });
        }
        let mut acc = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            acc += k * x.matrix() * k.adjoint();
        }
        Ok(HermitianOperator::from_matrix_unchecked(acc))
    }

    /// Applies the channel to the subsystem `on` of a multipartite operator.
    pub fn apply_on(
        &self,
        x: &HermitianOperator,
        layout: &SubsystemLayout,
        on: &str,
    ) -> Result<(HermitianOperator, SubsystemLayout)> {
        layout.check_dim(x.dim())?;
        if layout.dim_of(on)? != self.dim_in {
            return Err(Error::DimensionMismatch {
                expected: self.dim_in,
                found: layout.dim_of(on)?,
            });
        }
        let out_layout = layout.with_dim(on, self.dim_out)?;
        let d = out_layout.total_dim();
        let mut acc = ComplexMatrix::zeros(d, d);
        for k in &self.kraus {
            let full = local_operator(layout, on, k)?;
            acc += &full * x.matrix() * full.adjoint();
        }
        Ok((HermitianOperator::from_matrix_unchecked(acc), out_layout))
    }

    pub fn apply(&self, rho: &DensityOperator, on: &str) -> Result<DensityOperator> {
        let (op, layout) = self.apply_on(rho.operator(), rho.layout(), on)?;
        Ok(DensityOperator::from_parts_unchecked(op, layout))
    }
}
