//! A = U⁻¹dU for U = exp(tX) is flat; a 2×2 generator shows the matrix case.

use nc_harmonic::expr::parse;
use nc_harmonic::gauge::{curvature, harmonic_residual};
use nc_harmonic::{Context, GaugeField, GeneralizedInversePair, HodgeTable, MatrixOverA};

fn main() {
    let c = Context::heisenberg(3);
    let e = |s: &str| parse(s, c).unwrap();
    let x = MatrixOverA::from_rows(c, vec![vec![e("i*q^2"), e("p")], vec![e("-p"), e("i*(q*p + p*q)")]]).unwrap();
    let pair = GeneralizedInversePair::from_matrix_generator(&x).unwrap();
    let field = GaugeField::pure_gauge(&pair);

    println!("A = {}", field.form().render());
    println!("F = {}", curvature(&field).render());
    let r = harmonic_residual(&field, &HodgeTable::standard());
    println!("d*A vanishes: {}", r.is_zero());
}
