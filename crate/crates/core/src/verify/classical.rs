//! Scalar conditional entropies of joint distributions, used as an oracle
//! for the matrix code paths.

use crate::alpha::Alpha;
use crate::conditional::{Arrow, EntropyKind};
use crate::error::{Error, Result};
use crate::layout::SubsystemLayout;
use crate::objects::SeededRng;
use crate::state::DensityOperator;

/// Joint distribution `p(x, y)` stored row-major with `x` as the row index.
#[derive(Clone, Debug, PartialEq)]
pub struct JointTable {
    nx: usize,
    ny: usize,
    p: Vec<f64>,
}

impl JointTable {
    pub fn new(nx: usize, ny: usize, p: Vec<f64>) -> Result<Self> {
        if nx == 0 || ny == 0 || p.len() != nx * ny {
            return Err(Error::DimensionMismatch {
                expected: nx * ny,
                found: p.len(),
            });
        }
        if p.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
            return Err(Error::Precondition(
                "probabilities must be finite and non-negative".into(),
            ));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::NotNormalized { trace: total });
        }
        Ok(Self { nx, ny, p })
    }

    /// Exponentially distributed weights, each zeroed with probability
    /// `zero_rate` (at least one entry survives).
    pub fn random(nx: usize, ny: usize, zero_rate: f64, rng: &mut SeededRng) -> Self {
        let n = nx * ny;
        let mut w: Vec<f64> = (0..n)
            .map(|_| {
                let e = -(1.0 - rng.uniform()).ln();
                if rng.uniform() < zero_rate {
                    0.0
                } else {
                    e
                }
            })
            .collect();
        if w.iter().all(|&v| v == 0.0) {
            w[0] = 1.0;
        }
        let total: f64 = w.iter().sum();
        Self {
            nx,
            ny,
            p: w.into_iter().map(|v| v / total).collect(),
        }
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.p[x * self.ny + y]
    }

    pub fn marginal_y(&self) -> Vec<f64> {
        (0..self.ny)
            .map(|y| (0..self.nx).map(|x| self.get(x, y)).sum())
            .collect()
    }

    /// Diagonal state on `X ⊗ Y`.
    pub fn to_state(&self) -> Result<DensityOperator> {
        let layout = SubsystemLayout::new(vec!["X", "Y"], vec![self.nx, self.ny])?;
        DensityOperator::diagonal(&self.p, layout)
    }

    fn cells(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.nx).flat_map(move |x| (0..self.ny).map(move |y| (x, y, self.get(x, y))))
    }

    /// `H(X|Y)` of every kind. The two families agree on commuting inputs, so
    /// only the arrow matters.
    pub fn entropy(&self, kind: EntropyKind, alpha: Alpha) -> f64 {
        match kind.arrow {
            Arrow::Down => self.down(alpha),
            Arrow::Up => self.up(alpha),
        }
    }

    fn shannon_conditional(&self) -> f64 {
        let py = self.marginal_y();
        -self
            .cells()
            .filter(|&(_, _, p)| p > 0.0)
            .map(|(_, y, p)| p * (p / py[y]).log2())
            .sum::<f64>()
    }

    fn down(&self, alpha: Alpha) -> f64 {
        let py = self.marginal_y();
        let support = || self.cells().filter(|&(_, _, p)| p > 0.0);
        match alpha {
            Alpha::Zero => support().map(|(_, y, _)| py[y]).sum::<f64>().log2(),
            Alpha::One => self.shannon_conditional(),
            Alpha::Infinity => -support()
                .map(|(_, y, p)| p / py[y])
                .fold(0.0, f64::max)
                .log2(),
            Alpha::Finite(a) => {
                let s: f64 = support()
                    .map(|(_, y, p)| p.powf(a) * py[y].powf(1.0 - a))
                    .sum();
                s.log2() / (1.0 - a)
            }
        }
    }

    fn up(&self, alpha: Alpha) -> f64 {
        let column = |y: usize| (0..self.nx).map(move |x| self.get(x, y));
        match alpha {
            Alpha::Zero => (0..self.ny)
                .map(|y| column(y).filter(|&p| p > 0.0).count())
                .max()
                .map_or(0.0, |n| (n as f64).log2()),
            Alpha::One => self.shannon_conditional(),
            Alpha::Infinity => -(0..self.ny)
                .map(|y| column(y).fold(0.0, f64::max))
                .sum::<f64>()
                .log2(),
            Alpha::Finite(a) => {
                let s: f64 = (0..self.ny)
                    .map(|y| column(y).map(|p| p.powf(a)).sum::<f64>().powf(1.0 / a))
                    .sum();
                a / (1.0 - a) * s.log2()
            }
        }
    }
}
