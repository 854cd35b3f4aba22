//! Tower of conserved currents for two exact chiral solutions.

use nc_harmonic::expr::{parse, print};
use nc_harmonic::integrable::{build_tower, master_residuals, solve_chiral_perturbative};
use nc_harmonic::{Context, GaugeField, HodgeTable, MatrixOverA};

fn report(label: &str, phi: &MatrixOverA, table: &HodgeTable) {
    let tower = build_tower(&GaugeField::from_phi(phi, table), 4, table).unwrap();
    println!("{label}: phi = {}", print(phi.get(0, 0)));
    for (m, j) in tower.currents().iter().enumerate() {
        println!("  J({}) = {}", m + 1, j.render());
    }
    let exact = tower.certificates().iter().all(|c| c.is_zero())
        && master_residuals(&tower, table).unwrap().iter().all(|r| r.is_zero());
    println!("  certificates exact: {exact}");
}

fn main() {
    let table = HodgeTable::standard();
    let c = Context::moyal(3);
    report("light cone", &MatrixOverA::scalar(parse("t*(q+p)^2", c).unwrap()), &table);

    let seed = MatrixOverA::scalar(parse("q^2 + p^2", c).unwrap());
    report("solver", &solve_chiral_perturbative(&seed, 3).unwrap(), &table);
}
