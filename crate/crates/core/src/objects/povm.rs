use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::objects::random::{haar_isometry, haar_unitary, SeededRng};
use crate::operator::{max_abs_diff, ComplexMatrix, HermitianOperator, TOLERANCE};

/// Positive operator-valued measure on a `dim`-dimensional space.
#[derive(Clone, Debug, PartialEq)]
pub struct Povm {
    elements: Vec<HermitianOperator>,
    dim: usize,
}

impl Povm {
    pub fn new(elements: Vec<HermitianOperator>) -> Result<Self> {
        let dim = elements
            .first()
            .ok_or_else(|| Error::InvalidPovm("POVM has no elements".into()))?
            .dim();
        let mut sum = ComplexMatrix::zeros(dim, dim);
        for (i, e) in elements.iter().enumerate() {
            if e.dim() != dim {
                return Err(Error::InvalidPovm(format!(
                    "element {i} has dimension {}, expected {dim}",
                    e.dim()
                )));
            }
            e.check_psd()
                .map_err(|err| Error::InvalidPovm(format!("element {i}: {err}")))?;
            sum += e.matrix();
        }
        let dev = max_abs_diff(&sum, &ComplexMatrix::identity(dim, dim));
        if dev > TOLERANCE {
            return Err(Error::InvalidPovm(format!(
                "elements do not sum to the identity (deviation {dev:.3e})"
            )));
        }
        Ok(Self { elements, dim })
    }

    /// Rank-one projective measurement onto the columns of a unitary.
    pub fn from_basis(unitary: &ComplexMatrix) -> Result<Self> {
        let elements = (0..unitary.ncols())
            .map(|j| HermitianOperator::outer(&unitary.column(j).into_owned()))
            .collect();
        Self::new(elements)
    }

    pub fn computational(dim: usize) -> Self {
        Self::from_basis(&ComplexMatrix::identity(dim, dim))
            .expect("computational basis is complete")
    }

    /// Discrete Fourier basis; the Hadamard basis for a qubit.
    pub fn fourier(dim: usize) -> Self {
        let n = dim as f64;
        let f = ComplexMatrix::from_fn(dim, dim, |j, k| {
            Complex64::from_polar(
                1.0 / n.sqrt(),
                2.0 * std::f64::consts::PI * (j * k) as f64 / n,
            )
        });
        Self::from_basis(&f).expect("Fourier basis is complete")
    }

    /// The single-outcome measurement `{1}`.
    pub fn trivial(dim: usize) -> Self {
        Self {
            elements: vec![HermitianOperator::identity(dim)],
            dim,
        }
    }

    pub fn random_basis(dim: usize, rng: &mut SeededRng) -> Self {
        Self::from_basis(&haar_unitary(dim, rng)).expect("Haar unitary is complete")
    }

    /// Random POVM with `outcomes` elements `V†(|x⟩⟨x| ⊗ 1)V` for a Haar
    /// isometry `V: C^dim → C^outcomes ⊗ C^dim`.
    pub fn random(dim: usize, outcomes: usize, rng: &mut SeededRng) -> Result<Self> {
        if outcomes == 0 {
            return Err(Error::InvalidPovm(
                "a POVM needs at least one outcome".into(),
            ));
        }
        let v = haar_isometry(dim, outcomes * dim, rng)?;
        let elements = (0..outcomes)
            .map(|x| {
                let block = v.rows(x * dim, dim).into_owned();
                HermitianOperator::from_matrix_unchecked(block.adjoint() * block)
            })
            .collect();
        Self::new(elements)
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `c = max_{x,y} ‖√M_x √N_y‖_∞`, the largest singular value over all pairs.
pub fn overlap(m: &Povm, n: &Povm) -> Result<f64> {
    if m.dim() != n.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: n.dim(),
        });
    }
    let roots = |p: &Povm| -> Result<Vec<HermitianOperator>> {
        p.elements().iter().map(|e| e.sqrt()).collect()
    };
    let (rm, rn) = (roots(m)?, roots(n)?);
    let mut best = 0.0f64;
    for a in &rm {
        for b in &rn {
            let prod = a.matrix() * b.matrix();
            let s = prod.singular_values().iter().cloned().fold(0.0, f64::max);
            best = best.max(s);
        }
    }
    Ok(best)
}
