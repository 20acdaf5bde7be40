//! Duality of conditional entropies on a random tripartite pure state:
//! `H(A|B) = -H(A|C)` at the paired orders of each relation.

use qrenyi::conditional::{h_down_old, h_down_sandwiched, h_up_old, h_up_sandwiched};
use qrenyi::objects::random_pure_state;
use qrenyi::{Alpha, OptimizerConfig, SeededRng, SubsystemLayout};

fn main() -> qrenyi::Result<()> {
    let layout = SubsystemLayout::from_dims(&[2, 2, 3])?;
    let psi = random_pure_state(&layout, &mut SeededRng::new(3));
    let rho = psi.density();
    let config = OptimizerConfig::default();

    println!("sum pairing α + β = 2, Petz H↓");
    for a in [0.0, 0.5, 1.0, 1.5, 2.0] {
        let (alpha, beta) = (Alpha::from_value(a)?, Alpha::from_value(2.0 - a)?);
        let ab = h_down_old(&rho, "A", "B", alpha)?;
        let ac = h_down_old(&rho, "A", "C", beta)?;
        println!(
            "  α = {alpha:<4} H(A|B) = {ab:>9.6}  -H(A|C) at β = {beta:<4} = {:>9.6}",
            -ac
        );
    }

    println!("harmonic pairing 1/α + 1/β = 2, sandwiched H↑");
    for a in [0.75, 1.5, 3.0] {
        let (alpha, beta) = (Alpha::Finite(a), Alpha::from_value(a / (2.0 * a - 1.0))?);
        let ab = h_up_sandwiched(&rho, "A", "B", alpha, &config)?.value;
        let ac = h_up_sandwiched(&rho, "A", "C", beta, &config)?.value;
        println!(
            "  α = {alpha:<4} H(A|B) = {ab:>9.6}  -H(A|C) at β = {beta:<4} = {:>9.6}",
            -ac
        );
    }

    println!("product pairing αβ = 1, Petz H↑ against sandwiched H↓");
    for a in [0.25, 0.5, 2.0, 4.0] {
        let (alpha, beta) = (Alpha::Finite(a), Alpha::Finite(1.0 / a));
        let ab = h_up_old(&rho, "A", "B", alpha)?.value;
        let ac = h_down_sandwiched(&rho, "A", "C", beta)?;
        println!(
            "  α = {alpha:<4} H(A|B) = {ab:>9.6}  -H(A|C) at β = {beta:<4} = {:>9.6}",
            -ac
        );
    }
    Ok(())
}
