//! Lax pair of a perturbative sigma-model solution at several spectral
//! parameters.

use nc_harmonic::expr::{parse, parse_constant, print};
use nc_harmonic::integrable::{lax_pair, solve_sigma_perturbative};
use nc_harmonic::{Context, HodgeTable};

fn main() {
    let c = Context::heisenberg(3);
    let sol = solve_sigma_perturbative(&parse("i*(q^2 + p^2)", c).unwrap(), 3, &HodgeTable::standard()).unwrap();
    for text in ["0", "1/2", "2", "1+i", "1"] {
        let lambda = parse_constant(text).unwrap();
        match lax_pair(&sol.generator, &lambda) {
            Ok(pair) => {
                println!("lambda = {text}");
                println!("  L = {}", print(&pair.l));
                println!("  [L,M] - ih = {}", print(&pair.residual));
            }
            Err(e) => println!("lambda = {text}: {e}"),
        }
    }
}
