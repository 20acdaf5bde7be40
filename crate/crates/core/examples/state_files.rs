//! Writes states, channels and measurements to JSON files, reads them back
//! and evaluates an entropy on the file contents.

use qrenyi::io::{read_state, Document};
use qrenyi::objects::random_density;
use qrenyi::{
    entropy, Alpha, EntropyKind, KrausChannel, OptimizerConfig, Povm, PureState, SeededRng,
    SubsystemLayout,
};

fn main() -> qrenyi::Result<()> {
    let dir = std::env::temp_dir().join("qrenyi-state-files");
    std::fs::create_dir_all(&dir)?;
    let mut rng = SeededRng::new(9);

    let layout = SubsystemLayout::new(vec!["A", "B"], vec![2, 3])?;
    let rho = random_density(&layout, 3, &mut rng)?;
    let path = dir.join("rho.json");
    Document::Density(rho.clone()).write(&path)?;
    let back = read_state(&path)?;
    assert_eq!(back.matrix(), rho.matrix());
    let h = entropy(
        EntropyKind::OLD_DOWN,
        &back,
        "A",
        "B",
        Alpha::Finite(2.0),
        &OptimizerConfig::default(),
    )?;
    println!("{}: H↓(A|B) at α = 2 is {:.6}", path.display(), h.value);

    let docs = [
        (
            "bell.json",
            Document::Pure(PureState::maximally_entangled(2, ["A", "B"])?),
        ),
        (
            "channel.json",
            Document::Channel(KrausChannel::random(2, 2, 2, &mut rng)?),
        ),
        ("povm.json", Document::Povm(Povm::fourier(3))),
    ];
    for (name, doc) in docs {
        let path = dir.join(name);
        doc.write(&path)?;
        let again = Document::read(&path)?;
        println!(
            "{}: {} document, {} bytes",
            path.display(),
            again.type_name(),
            std::fs::metadata(&path)?.len()
        );
    }

    match Document::parse(r#"{"dims": [2], "matrix": [[1, 0], [0, 0], [0, 0]]}"#) {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("malformed input is rejected: {e}"),
    }
    Ok(())
}
