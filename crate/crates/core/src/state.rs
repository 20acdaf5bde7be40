use std::ops::Deref;

use crate::error::{Error, Result};
use crate::layout::SubsystemLayout;
use crate::operator::{partial_trace, ComplexVector, HermitianOperator, TOLERANCE};

/// Positive semi-definite, unit-trace operator with a subsystem layout.
#[derive(Clone, Debug)]
pub struct DensityOperator {
    op: HermitianOperator,
    layout: SubsystemLayout,
}

impl DensityOperator {
    pub fn new(op: HermitianOperator, layout: SubsystemLayout) -> Result<Self> {
        layout.check_dim(op.dim())?;
        let trace = op.trace();
        if (trace - 1.0).abs() > TOLERANCE {
            return Err(Error::NotNormalized { trace });
        }
        op.check_psd()?;
        Ok(Self { op, layout })
    }

    /// Skips validation; for operators that are states by construction
    /// (marginals, channel outputs).
    pub(crate) fn from_parts_unchecked(op: HermitianOperator, layout: SubsystemLayout) -> Self {
        debug_assert_eq!(op.dim(), layout.total_dim());
        Self { op, layout }
    }

    pub fn maximally_mixed(layout: SubsystemLayout) -> Self {
        let d = layout.total_dim();
        Self {
            op: HermitianOperator::identity(d).scale(1.0 / d as f64),
            layout,
        }
    }

    /// `|ψ⟩⟨ψ|` for a vector normalized here.
    pub fn pure(vector: &ComplexVector, layout: SubsystemLayout) -> Result<Self> {
        layout.check_dim(vector.len())?;
        let norm = vector.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::Precondition("state vector must be non-zero".into()));
        }
        Ok(Self {
            op: HermitianOperator::outer(&(vector / num_complex::Complex64::new(norm, 0.0))),
            layout,
        })
    }

    /// Diagonal state from a probability vector in the computational basis.
    pub fn diagonal(probs: &[f64], layout: SubsystemLayout) -> Result<Self> {
        if probs.iter().any(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::Precondition(
                "probabilities must be non-negative".into(),
            ));
        }
        Self::new(HermitianOperator::from_real_diagonal(probs), layout)
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn into_parts(self) -> (HermitianOperator, SubsystemLayout) {
        (self.op, self.layout)
    }

    pub fn marginal(&self, keep: &[&str]) -> Result<DensityOperator> {
        let (op, layout) = partial_trace(&self.op, &self.layout, keep)?;
        Ok(Self { op, layout })
    }

    pub fn relabel(self, layout: SubsystemLayout) -> Result<Self> {
        layout.check_dim(self.op.dim())?;
        Ok(Self {
            op: self.op,
            layout,
        })
    }
}

impl Deref for DensityOperator {
    type Target = HermitianOperator;

    fn deref(&self) -> &HermitianOperator {
        &self.op
    }
}
