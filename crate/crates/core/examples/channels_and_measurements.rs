//! Random channels, measurements and purifications, with data processing
//! shown on one channel.

use qrenyi::objects::{marginal_spectrum, measured_state, purify, random_density};
use qrenyi::operator::pinch;
use qrenyi::{d_sandwiched, Alpha, KrausChannel, Povm, SeededRng, SubsystemLayout};

fn main() -> qrenyi::Result<()> {
    let mut rng = SeededRng::new(21);
    let layout = SubsystemLayout::from_dims(&[2, 2])?;
    let rho = random_density(&layout, 4, &mut rng)?;
    let sigma = random_density(&layout, 4, &mut rng)?;

    let channel = KrausChannel::random(2, 3, 2, &mut rng)?;
    println!(
        "channel B: 2 → 3 with {} Kraus operators",
        channel.kraus().len()
    );
    let (out_rho, out_sigma) = (channel.apply(&rho, "B")?, channel.apply(&sigma, "B")?);
    println!(
        "output dims {:?}, trace {:.12}",
        out_rho.layout().dims(),
        out_rho.trace()
    );
    for a in [0.5, 1.0, 2.0] {
        let alpha = Alpha::from_value(a)?;
        println!(
            "  α = {alpha:<3} D̃ before {:.6}  after {:.6}",
            d_sandwiched(&rho, &sigma, alpha)?,
            d_sandwiched(&out_rho, &out_sigma, alpha)?
        );
    }

    let povm = Povm::random(2, 3, &mut rng)?;
    let xb = measured_state(&rho, &povm, "A", "B", "X")?;
    println!(
        "measuring A with 3 outcomes gives a state on {:?}",
        xb.layout().labels()
    );

    let pinched = pinch(&rho, &sigma)?;
    println!(
        "pinching ρ in the eigenbasis of σ keeps the trace: {:.12}",
        pinched.trace()
    );

    let psi = purify(&rho, "R")?;
    let spectra = (
        marginal_spectrum(&psi, &["A", "B"])?,
        marginal_spectrum(&psi, &["R"])?,
    );
    println!(
        "purification: spectrum of AB {:.4?}, of R {:.4?}",
        spectra.0, spectra.1
    );
    Ok(())
}
