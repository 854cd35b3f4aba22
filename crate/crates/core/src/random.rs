//! Deterministic random generators for the property suites.
//!
//! Elements are sparse: up to `MAX_TERMS` monomials `q^a p^b` with
//! `a + b ≤ max_degree`, each with a coefficient `c·ħ^j·t^k` where `c` is
//! drawn from [`COEFFICIENTS`], `j ≤ 1` and `k ≤ min(K, 1)`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, Context};
use crate::calculus::{Basis, Form};
use crate::matrix::MatrixOverA;
use crate::scalar::{rat, GaussianRational, ScalarPoly};

pub const MAX_TERMS: usize = 4;

/// Real and imaginary parts of the coefficient pool.
pub const COEFFICIENTS: [(i64, i64, i64, i64); 10] = [
    (1, 1, 0, 1),
    (-1, 1, 0, 1),
    (2, 1, 0, 1),
    (1, 2, 0, 1),
    (-3, 2, 0, 1),
    (0, 1, 1, 1),
    (0, 1, -1, 1),
    (1, 1, 1, 1),
    (1, 2, -1, 3),
    (-2, 1, 1, 2),
];

/// Generator for trial `trial` of a suite seeded with `seed`; independent of
/// evaluation order.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

pub fn gaussian(rng: &mut impl Rng) -> GaussianRational {
    let (a, b, c, d) = *COEFFICIENTS.choose(rng).expect("non-empty pool");
    GaussianRational::new(rat(a, b), rat(c, d))
}

pub fn scalar(rng: &mut impl Rng, order: u32) -> ScalarPoly {
    let hbar = rng.gen_range(0..=1);
    let t = if order > 0 { rng.gen_range(0..=1) } else { 0 };
    ScalarPoly::term(gaussian(rng), hbar, t, order)
}

pub fn element(rng: &mut impl Rng, ctx: Context, max_degree: u32) -> AlgebraElement {
    let n = rng.gen_range(1..=MAX_TERMS);
    let terms = (0..n).map(|_| {
        let deg = rng.gen_range(0..=max_degree);
        let a = rng.gen_range(0..=deg);
        ((a, deg - a), scalar(rng, ctx.order))
    });
    let terms: Vec<_> = terms.collect();
    AlgebraElement::from_terms(ctx, terms)
}

/// `(Y − Y†)/2` for a random `Y`.
pub fn anti_hermitian(rng: &mut impl Rng, ctx: Context, max_degree: u32) -> AlgebraElement {
    let y = element(rng, ctx, max_degree);
    (&y - &y.dagger()).scale(&GaussianRational::from_ratio(1, 2))
}

pub fn matrix(rng: &mut impl Rng, ctx: Context, size: usize, max_degree: u32) -> MatrixOverA {
    let rows = (0..size).map(|_| (0..size).map(|_| element(rng, ctx, max_degree)).collect()).collect();
    MatrixOverA::from_rows(ctx, rows).expect("square by construction")
}

/// Random scalar form; `degree = None` fills every component.
pub fn form(rng: &mut impl Rng, ctx: Context, max_degree: u32, degree: Option<u8>) -> Form {
    let mut out = Form::zero(ctx, 1);
    for b in Basis::ALL {
        if degree.is_none_or(|d| d == b.degree()) {
            out = &out + &Form::scalar(b, element(rng, ctx, max_degree));
        }
    }
    out
}

/// `f(q + p) + g(q − p)` with random polynomial `f`, `g` without constant
/// terms; annihilated by `∂_q² − ∂_p²`.
pub fn wave_seed(rng: &mut impl Rng, ctx: Context, max_degree: u32) -> AlgebraElement {
    let u = &AlgebraElement::q(ctx) + &AlgebraElement::p(ctx);
    let v = &AlgebraElement::q(ctx) - &AlgebraElement::p(ctx);
    let mut out = AlgebraElement::zero(ctx);
    for base in [u, v] {
        for k in 1..=max_degree {
            if rng.gen_bool(0.5) {
                let c = ScalarPoly::term(gaussian(rng), rng.gen_range(0..=1), 0, ctx.order);
                out = &out + &base.pow(k).scale_poly(&c);
            }
        }
    }
    if out.is_zero() {
        out = AlgebraElement::q(ctx);
    }
    out
}
