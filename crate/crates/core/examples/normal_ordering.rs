//! Heisenberg products are kept in normal order (q left of p).

use nc_harmonic::expr::{parse, print};
use nc_harmonic::Context;

fn main() {
    let c = Context::heisenberg(2);
    for text in ["q*p - p*q", "p*q", "p^2*q^2", "(q + i*p)*(q - i*p)"] {
        let x = parse(text, c).expect("valid expression");
        println!("{text:>22}  =  {}", print(&x));
        println!("{:>22}     dagger: {}", "", print(&x.dagger()));
    }
}
