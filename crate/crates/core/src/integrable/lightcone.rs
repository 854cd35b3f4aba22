//! Polynomial inverse of the wave operator `□ = ∂_q² − ∂_p²` in light-cone
//! variables `u = q + p`, `v = q − p`, where `□ = 4 ∂_u ∂_v`.
//!
//! The partial derivatives act on the coefficient maps of both backends
//! the same way, so the inversion is done on coefficient maps as if they
//! were commutative polynomials.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::algebra::{AlgebraElement, Monomial};
use crate::scalar::{binomial, GaussianRational, ScalarPoly};

type PolyMap = BTreeMap<Monomial, ScalarPoly>;

fn accumulate(out: &mut PolyMap, m: Monomial, c: ScalarPoly) {
    if c.is_zero() {
        return;
    }
    let entry = out.entry(m).or_insert_with(|| ScalarPoly::zero(c.order()));
    *entry += &c;
    if entry.is_zero() {
        out.remove(&m);
    }
}

/// Rewrites `Σ c x^a y^b` under `x = k(α s + β r)`, `y = k(γ s + δ r)`;
/// output keys are `(s-exponent, r-exponent)`.
fn substitute(src: &PolyMap, (alpha, beta): (i64, i64), (gamma, delta): (i64, i64), scale: &BigRational) -> PolyMap {
    let mut out = PolyMap::new();
    for (&(a, b), c) in src {
        // (α s + β r)^a (γ s + δ r)^b
        let factor = GaussianRational::real(num_traits::pow(scale.clone(), (a + b) as usize));
        for i in 0..=a {
            for j in 0..=b {
                let n = binomial(a, i)
                    * binomial(b, j)
                    * num_bigint::BigInt::from(alpha).pow(i)
                    * num_bigint::BigInt::from(beta).pow(a - i)
                    * num_bigint::BigInt::from(gamma).pow(j)
                    * num_bigint::BigInt::from(delta).pow(b - j);
                if n == num_bigint::BigInt::from(0) {
                    continue;
                }
                let coef = factor.scale(&BigRational::from_integer(n));
                accumulate(&mut out, (i + j, (a - i) + (b - j)), c.scale(&coef));
            }
        }
    }
    out
}

/// Particular solution `φ` of `□φ = r` whose light-cone monomials all
/// contain both `u` and `v` (no homogeneous part).
pub fn inverse_wave(r: &AlgebraElement) -> AlgebraElement {
    let src: PolyMap = r.raw_terms().clone();
    let half = BigRational::new(1.into(), 2.into());
    // q = (u + v)/2, p = (u − v)/2; keys become (u-exp, v-exp)
    let in_uv = substitute(&src, (1, 1), (1, -1), &half);
    let mut integrated = PolyMap::new();
    for (&(a, b), c) in &in_uv {
        let k = GaussianRational::from_ratio(1, 4 * (a as i64 + 1) * (b as i64 + 1));
        accumulate(&mut integrated, (a + 1, b + 1), c.scale(&k));
    }
    // u = q + p, v = q − p
    let back = substitute(&integrated, (1, 1), (1, -1), &BigRational::from_integer(1.into()));
    AlgebraElement::from_terms(r.ctx(), back)
}
