//! The four conditional Rényi entropies of a random two-qubit state, with the
//! optimizing marginal reported by the variational ones.

use qrenyi::objects::random_density;
use qrenyi::{entropy, Alpha, EntropyKind, OptimizerConfig, SeededRng, SubsystemLayout};

fn main() -> qrenyi::Result<()> {
    let layout = SubsystemLayout::from_dims(&[2, 2])?;
    let rho = random_density(&layout, 4, &mut SeededRng::new(7))?;
    let config = OptimizerConfig::default();

    for alpha in [
        Alpha::Finite(0.5),
        Alpha::One,
        Alpha::Finite(2.0),
        Alpha::Infinity,
    ] {
        println!("α = {alpha}");
        for kind in EntropyKind::ALL {
            let r = entropy(kind, &rho, "A", "B", alpha, &config)?;
            let note = match r.iterations {
                Some(n) => format!("({n} iterations, converged: {})", r.converged),
                None => String::from("(closed form)"),
            };
            println!("  {:<16} {:>10.6} {note}", kind.name(), r.value);
        }
    }

    let r = entropy(
        EntropyKind::SANDWICHED_UP,
        &rho,
        "A",
        "B",
        Alpha::Finite(2.0),
        &config,
    )?;
    if let Some(sigma) = r.optimizer_sigma {
        println!("optimal σ_B at α = 2:\n{}", sigma.operator().matrix());
    }
    Ok(())
}
