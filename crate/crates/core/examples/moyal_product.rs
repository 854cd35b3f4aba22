//! Moyal star products of polynomial symbols, and their point values.

use nc_harmonic::expr::{parse, parse_constant, print};
use nc_harmonic::scalar::rat;
use nc_harmonic::{AlgebraElement, Context, GaussianRational};

fn main() {
    let c = Context::moyal(0);
    let product = &parse("q^2", c).unwrap() * &parse("p^2", c).unwrap();

    println!("symbol of q^2 * p^2:");
    for (&(a, b), coeff) in product.terms() {
        for (&(h, _), v) in coeff.terms() {
            println!("  ({v}) h^{h} q^{a} p^{b}");
        }
    }
    println!("written in normal order: {}", print(&product));

    let comm = AlgebraElement::q(c).commutator(&AlgebraElement::p(c));
    println!("[q, p] = {}", print(&comm));

    let hbar = parse_constant("1/10").unwrap();
    let value = product.evaluate(&rat(1, 2), &rat(2, 1), &hbar, &GaussianRational::zero()).unwrap();
    println!("value at q = 1/2, p = 2, h = 1/10: {value}");
}
