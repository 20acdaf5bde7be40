//! Trace Hölder inequality for p > 1 and its reverse for 0 < p < 1 on random
//! positive operators.

use qrenyi::operator::{holder_pair_check, HolderDirection};
use qrenyi::{HermitianOperator, SeededRng};

fn main() -> qrenyi::Result<()> {
    let mut rng = SeededRng::new(5);
    let mut positive = |d: usize| {
        let g = rng.ginibre(d, d);
        HermitianOperator::new(&g * g.adjoint())
    };
    for (d, p) in [(3, 2.0), (4, 3.0), (3, 0.5), (5, 0.25)] {
        let a = positive(d)?;
        let b = positive(d)?;
        let c = holder_pair_check(&a, &b, p)?;
        let op = match c.direction {
            HolderDirection::Leq => "≤",
            HolderDirection::Geq => "≥",
        };
        println!(
            "d = {d}, p = {p:<4}: tr AB = {:>10.5} {op} ‖A‖_p ‖B‖_q = {:>10.5}  (relative slack {:.2e})",
            c.lhs,
            c.rhs,
            -c.relative_violation()
        );
    }
    let a = positive(3)?;
    let c = holder_pair_check(&a, &a, 2.0)?;
    println!("equality at A = B, p = 2: {:.3e}", c.relative_violation());
    Ok(())
}
