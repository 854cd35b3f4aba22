//! Samples a chiral solution and its residual on a grid and prints CSV.

use nc_harmonic::expr::{parse, parse_constant};
use nc_harmonic::grid::{sample, to_csv, GridSpec};
use nc_harmonic::integrable::{chiral_residual, solve_chiral_perturbative};
use nc_harmonic::scalar::rat;
use nc_harmonic::{Basis, Context, MatrixOverA};

fn main() {
    let c = Context::moyal(3);
    let phi = solve_chiral_perturbative(&MatrixOverA::scalar(parse("q^2 + p^2", c).unwrap()), 3).unwrap();
    let grid = GridSpec { q_min: rat(-1, 1), q_max: rat(1, 1), p_min: rat(-1, 1), p_max: rat(1, 1), steps: 5 };
    let (hbar, t) = (parse_constant("1/4").unwrap(), parse_constant("1/2").unwrap());

    let values = sample(phi.get(0, 0), &grid, &hbar, &t).unwrap();
    print!("{}", to_csv(&values, 6));

    let residual = chiral_residual(&phi);
    let rows = sample(residual.part(Basis::DqDp).get(0, 0), &grid, &hbar, &t).unwrap();
    println!("residual is zero at all {} points: {}", rows.len(), rows.iter().all(|r| r.value.is_zero()));
}
