//! Petz, sandwiched and α-z divergences between two random qubit states,
//! tabulated over a grid of orders.

use qrenyi::objects::random_density;
use qrenyi::{d_alpha_z, d_old, d_sandwiched, relative_entropy, Alpha, SeededRng, SubsystemLayout};

fn main() -> qrenyi::Result<()> {
    let layout = SubsystemLayout::from_dims(&[2])?;
    let mut rng = SeededRng::new(42);
    let rho = random_density(&layout, 2, &mut rng)?;
    let sigma = random_density(&layout, 2, &mut rng)?;

    println!("D(ρ‖σ) = {:.6} bits", relative_entropy(&rho, &sigma)?);
    println!("{:>6} {:>12} {:>12}", "α", "Petz", "sandwiched");
    for alpha in qrenyi::alpha::parse_alpha_list("0,0.25,0.5,1,1.5,2,5,inf")? {
        let old = d_old(&rho, &sigma, alpha)?;
        let new = d_sandwiched(&rho, &sigma, alpha)?;
        println!("{:>6} {old:>12.6} {new:>12.6}", alpha.to_string());
    }

    let alpha = 1.5;
    println!("α-z family at α = {alpha}: z = 1 gives Petz, z = α gives sandwiched");
    for z in [0.5, 1.0, alpha, 3.0] {
        println!("  z = {z:<4} {:.6}", d_alpha_z(&rho, &sigma, alpha, z)?);
    }
    assert!(
        (d_alpha_z(&rho, &sigma, alpha, alpha)?
            - d_sandwiched(&rho, &sigma, Alpha::Finite(alpha))?)
        .abs()
            < 1e-10
    );
    Ok(())
}
