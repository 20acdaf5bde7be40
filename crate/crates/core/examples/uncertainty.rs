//! Entropic uncertainty with quantum memory: a tripartite pure state, two
//! mutually unbiased qubit measurements on A, memories B and C.

use qrenyi::conditional::h_down_old;
use qrenyi::objects::{overlap, post_measurement_states, random_pure_state};
use qrenyi::{renyi_entropy, Alpha, HermitianOperator, Povm, SeededRng, SubsystemLayout};

fn main() -> qrenyi::Result<()> {
    let (m, n) = (Povm::computational(2), Povm::fourier(2));
    let bound = -overlap(&m, &n)?.log2();
    println!("bound -log c = {bound:.4}");

    let layout = SubsystemLayout::from_dims(&[2, 2, 2])?;
    let psi = random_pure_state(&layout, &mut SeededRng::new(11));
    let (xb, zc) = post_measurement_states(&psi, &m, &n, "A", "B", "C")?;
    for a in [0.0, 0.5, 1.0, 1.5, 2.0] {
        let (alpha, beta) = (Alpha::from_value(a)?, Alpha::from_value(2.0 - a)?);
        let lhs = h_down_old(&xb, "X", "B", alpha)? + h_down_old(&zc, "Y", "C", beta)?;
        println!("  α = {alpha:<4} β = {beta:<4} H(X|B) + H(Z|C) = {lhs:.6}");
    }

    let qubit =
        random_pure_state(&SubsystemLayout::from_dims(&[2])?, &mut SeededRng::new(12)).density();
    let outcomes = |povm: &Povm| {
        let p: Vec<f64> = povm
            .elements()
            .iter()
            .map(|e| e.trace_with(&qubit))
            .collect();
        HermitianOperator::from_real_diagonal(&p)
    };
    let sum = renyi_entropy(&outcomes(&m), Alpha::Finite(2.0))?
        + renyi_entropy(&outcomes(&n), Alpha::Finite(2.0 / 3.0))?;
    println!("without memory: H_2(X) + H_2/3(Z) = {sum:.6}");
    Ok(())
}
