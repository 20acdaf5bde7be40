//! Runs a few randomized suites and prints their summaries and the first
//! trial record of each.

use qrenyi::verify::{run, Suite, SuiteSpec};
use qrenyi::Alpha;

fn main() -> qrenyi::Result<()> {
    let specs = [
        SuiteSpec::new(Suite::Duality1)
            .dims(&[2, 3, 2])
            .trials(50)
            .seed(1),
        SuiteSpec::new(Suite::Duality2)
            .alphas(&[Alpha::Finite(0.75), Alpha::Finite(2.0)])
            .trials(20)
            .seed(2),
        SuiteSpec::new(Suite::Dpi).trials(30).seed(3),
        SuiteSpec::new(Suite::Uncertainty3).trials(30).seed(4),
        SuiteSpec::new(Suite::ClassicalOracle)
            .dims(&[3, 2])
            .trials(30)
            .seed(5),
    ];
    for spec in specs {
        let report = run(&spec)?;
        println!("{report}");
        if let Some(first) = report.trials.first() {
            println!(
                "  first record: {}",
                serde_json::to_string(first).expect("records serialize")
            );
        }
    }
    Ok(())
}
