//! Order-by-order correction of a sigma-model seed, and an obstructed seed.

use nc_harmonic::expr::{parse, print};
use nc_harmonic::gauge::harmonic_residual;
use nc_harmonic::integrable::solve_sigma_perturbative;
use nc_harmonic::{Context, HodgeTable};

fn main() {
    let table = HodgeTable::standard();
    for (backend, c) in [("heisenberg", Context::heisenberg(4)), ("moyal", Context::moyal(4))] {
        for seed in ["i*(q^2 + p^2)", "i*(q^4 + 3*q^2*p^2 + 3*p^2*q^2 + p^4)", "i*(q + p)^3"] {
            let x1 = parse(seed, c).unwrap();
            match solve_sigma_perturbative(&x1, 4, &table) {
                Ok(sol) => {
                    let exact = harmonic_residual(&sol.field, &table).is_zero();
                    println!("{backend} {seed}: X = {} (harmonic: {exact})", print(sol.generator.element()));
                }
                Err(e) => println!("{backend} {seed}: {e}"),
            }
        }
    }
}
