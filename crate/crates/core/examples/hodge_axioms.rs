//! Randomized exact checks of the calculus, first with the standard Hodge
//! table and then with a corrupted one.

use nc_harmonic::axioms::{run_axioms, AxiomConfig};
use nc_harmonic::{Backend, Basis, GaussianRational, HodgeTable};

fn summarize(label: &str, cfg: &AxiomConfig) {
    let report = run_axioms(cfg);
    println!("{label}: {}", if report.passed() { "all checks pass" } else { "violations found" });
    for o in report.outcomes.iter().filter(|o| !o.passed()) {
        println!("  {} failed in {}/{} trials", o.check.name(), o.failures, o.trials);
        if let Some(w) = &o.first_counterexample {
            println!("    first: {}", w.chars().take(160).collect::<String>());
        }
    }
}

fn main() {
    let cfg = AxiomConfig { trials: 50, ..AxiomConfig::new(Backend::Heisenberg) };
    summarize("standard table", &cfg);

    let z = GaussianRational::zero;
    let bad = HodgeTable::standard().with_image(Basis::Dq, [z(), GaussianRational::one(), z(), z()]);
    summarize("star dq = dq", &AxiomConfig { table: bad, ..cfg });
}
