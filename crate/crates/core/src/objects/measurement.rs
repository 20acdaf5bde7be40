use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::layout::SubsystemLayout;
use crate::objects::povm::Povm;
use crate::objects::random::PureState;
use crate::operator::{embed, partial_trace, ComplexMatrix, HermitianOperator};
use crate::state::DensityOperator;

/// Classical-quantum state `Σ_x |x⟩⟨x| ⊗ tr_{rest}{√M_x ρ √M_x}` obtained by
/// measuring `on` and keeping `keep`. The layout is `[register, keep]`.
pub fn measured_state(
    rho: &DensityOperator,
    povm: &Povm,
    on: &str,
    keep: &str,
    register: &str,
) -> Result<DensityOperator> {
    let layout = rho.layout();
    if on == keep {
        return Err(Error::Layout(format!(
            "measured and kept subsystems are both {on}"
        )));
    }
    let d_on = layout.dim_of(on)?;
    if d_on != povm.dim() {
        return Err(Error::InvalidPovm(format!(
            "POVM acts on dimension {}, subsystem {on} has dimension {d_on}",
            povm.dim()
        )));
    }
    let d_keep = layout.dim_of(keep)?;
    let n = povm.len();
    let out_layout = SubsystemLayout::new(vec![register, keep], vec![n, d_keep])?;
    let mut block = ComplexMatrix::zeros(n * d_keep, n * d_keep);
    for (x, m) in povm.elements().iter().enumerate() {
        let root = embed(layout, on, &m.sqrt()?)?;
        let post = rho.operator().sandwich(&root);
        let (reduced, _) = partial_trace(&post, layout, &[keep])?;
        block
            .view_mut((x * d_keep, x * d_keep), (d_keep, d_keep))
            .copy_from(reduced.matrix());
    }
    let op = HermitianOperator::from_matrix_unchecked(block);
    Ok(DensityOperator::from_parts_unchecked(op, out_layout))
}

/// Post-measurement states `(ρ_XB, ρ_YC)` of a pure tripartite state when
/// `on` is measured with `m` or with `n`.
pub fn post_measurement_states(
    psi: &PureState,
    m: &Povm,
    n: &Povm,
    on: &str,
    side_b: &str,
    side_c: &str,
) -> Result<(DensityOperator, DensityOperator)> {
    let rho = psi.density();
    Ok((
        measured_state(&rho, m, on, side_b, "X")?,
        measured_state(&rho, n, on, side_c, "Y")?,
    ))
}

/// Whether a state commutes exactly with every projector of the classical register.
pub fn is_block_diagonal(rho: &DensityOperator, register: &str) -> Result<bool> {
    let layout = rho.layout();
    let pos = layout.position(register)?;
    let n = layout.dims()[pos];
    let mut worst = 0.0f64;
    for x in 0..n {
        let mut e = ComplexMatrix::zeros(n, n);
        e[(x, x)] = Complex64::new(1.0, 0.0);
        let p = embed(
            layout,
            register,
            &HermitianOperator::from_matrix_unchecked(e),
        )?;
        let comm = p.matrix() * rho.matrix() - rho.matrix() * p.matrix();
        worst = worst.max(comm.iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    Ok(worst == 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objects::random::{random_pure_state, SeededRng};

    #[test]
    fn entangled_pair_gives_correlated_register() {
        let psi = PureState::maximally_entangled(2, ["A", "B"]).unwrap();
        let rho = psi.density();
        let xb = measured_state(&rho, &Povm::computational(2), "A", "B", "X").unwrap();
        let expected = HermitianOperator::from_real_diagonal(&[0.5, 0.0, 0.0, 0.5]);
        assert!(xb.max_abs_diff(&expected) < 1e-15);
        assert_eq!(xb.layout().to_string(), "[X:2, B:2]");
    }

    #[test]
    fn classical_input_reproduces_distribution() {
        let layout = SubsystemLayout::from_dims(&[3, 1]).unwrap();
        let rho = DensityOperator::diagonal(&[0.2, 0.5, 0.3], layout).unwrap();
        let xb = measured_state(&rho, &Povm::computational(3), "A", "B", "X").unwrap();
        assert!(xb.max_abs_diff(&HermitianOperator::from_real_diagonal(&[0.2, 0.5, 0.3])) < 1e-15);
    }

    #[test]
    fn outputs_are_normalized_cq_states() {
        let mut rng = SeededRng::new(10);
        let layout = SubsystemLayout::from_dims(&[2, 2, 3]).unwrap();
        for _ in 0..20 {
            let psi = random_pure_state(&layout, &mut rng);
            let m = Povm::random(2, 3, &mut rng).unwrap();
            let (xb, yc) =
                post_measurement_states(&psi, &m, &Povm::fourier(2), "A", "B", "C").unwrap();
            assert!((xb.trace() - 1.0).abs() < 1e-12 && (yc.trace() - 1.0).abs() < 1e-12);
            assert!(is_block_diagonal(&xb, "X").unwrap() && is_block_diagonal(&yc, "Y").unwrap());
            assert_eq!(yc.layout().to_string(), "[Y:2, C:3]");
        }
    }

    #[test]
    fn wrong_subsystem_is_rejected() {
        let psi = PureState::maximally_entangled(2, ["A", "B"]).unwrap();
        let err = measured_state(&psi.density(), &Povm::computational(3), "A", "B", "X");
        assert!(matches!(err, Err(Error::InvalidPovm(_))));
    }
}
