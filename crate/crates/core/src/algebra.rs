//! Coordinate algebras generated by `q` and `p`.
//!
//! Both backends store an element as a map from exponent pairs `(a, b)` to
//! central coefficients. For the Heisenberg backend `(a, b)` is the
//! normal-ordered word `q^a p^b`; for the Moyal backend it is the
//! commutative symbol `q^a p^b` and products are star products.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{binomial, factorial, falling, forward_owned_binop, GaussianRational, ScalarPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Heisenberg,
    Moyal,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Heisenberg => f.write_str("heisenberg"),
            Backend::Moyal => f.write_str("moyal"),
        }
    }
}

/// Backend plus truncation order K in t. Every value carries one and binary
/// operations refuse to mix them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Context {
    pub backend: Backend,
    pub order: u32,
}

impl Context {
    pub fn new(backend: Backend, order: u32) -> Self {
        Context { backend, order }
    }

    pub fn heisenberg(order: u32) -> Self {
        Self::new(Backend::Heisenberg, order)
    }

    pub fn moyal(order: u32) -> Self {
        Self::new(Backend::Moyal, order)
    }

    pub fn check(&self, other: &Context) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ContextMismatch { left: *self, right: *other })
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(K={})", self.backend, self.order)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Q,
    P,
}

/// Exponents `(a, b)` of `q^a p^b`.
pub type Monomial = (u32, u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    ctx: Context,
    terms: BTreeMap<Monomial, ScalarPoly>,
}

impl AlgebraElement {
    pub fn zero(ctx: Context) -> Self {
        AlgebraElement { ctx, terms: BTreeMap::new() }
    }

    pub fn monomial(ctx: Context, m: Monomial, coeff: ScalarPoly) -> Self {
        let mut out = Self::zero(ctx);
        out.add_term(m, &coeff);
        out
    }

    pub fn constant(ctx: Context, coeff: ScalarPoly) -> Self {
        Self::monomial(ctx, (0, 0), coeff)
    }

    pub fn scalar(ctx: Context, c: GaussianRational) -> Self {
        Self::constant(ctx, ScalarPoly::constant(c, ctx.order))
    }

    pub fn one(ctx: Context) -> Self {
        Self::scalar(ctx, GaussianRational::one())
    }

    pub fn q(ctx: Context) -> Self {
        Self::monomial(ctx, (1, 0), ScalarPoly::one(ctx.order))
    }

    pub fn p(ctx: Context) -> Self {
        Self::monomial(ctx, (0, 1), ScalarPoly::one(ctx.order))
    }

    pub fn hbar(ctx: Context) -> Self {
        Self::constant(ctx, ScalarPoly::hbar(ctx.order))
    }

    pub fn t(ctx: Context) -> Self {
        Self::constant(ctx, ScalarPoly::t(ctx.order))
    }

    /// Builds an element from a raw coefficient map. Zero coefficients are dropped.
    pub fn from_terms(ctx: Context, terms: impl IntoIterator<Item = (Monomial, ScalarPoly)>) -> Self {
        let mut out = Self::zero(ctx);
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn backend(&self) -> Backend {
        self.ctx.backend
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ScalarPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> ScalarPoly {
        self.terms.get(&m).cloned().unwrap_or_else(|| ScalarPoly::zero(self.ctx.order))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    fn add_term(&mut self, m: Monomial, c: &ScalarPoly) {
        assert_eq!(c.order(), self.ctx.order, "coefficient order differs from element context");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn map_coefficients(&self, f: impl Fn(&ScalarPoly) -> ScalarPoly) -> Self {
        Self::from_terms(self.ctx, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.ctx.check(&o.ctx)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&-o)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.ctx.check(&o.ctx)?;
        let order = self.ctx.order;
        let mut out = Self::zero(self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let base = c1 * c2;
                if base.is_zero() {
                    continue;
                }
                for (m, coef, hbar) in product_expansion(self.ctx.backend, *m1, *m2) {
                    out.add_term(m, &base.shifted(&coef, hbar, 0));
                }
            }
        }
        debug_assert!(out.terms.values().all(|c| c.order() == order));
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map_coefficients(|v| v.scale(c))
    }

    /// Multiplication by a central scalar polynomial.
    pub fn scale_poly(&self, c: &ScalarPoly) -> Self {
        self.map_coefficients(|v| v * c)
    }

    pub fn times_t_pow(&self, k: u32) -> Self {
        self.map_coefficients(|v| v.shifted(&GaussianRational::one(), 0, k))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.ctx);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// `[self, o] = self·o − o·self`
    pub fn commutator(&self, o: &Self) -> Self {
        &(self * o) - &(o * self)
    }

    /// Involution: reverses words and conjugates coefficients.
    pub fn dagger(&self) -> Self {
        match self.ctx.backend {
            Backend::Moyal => self.map_coefficients(ScalarPoly::dagger),
            Backend::Heisenberg => {
                let mut out = Self::zero(self.ctx);
                for (&(a, b), c) in &self.terms {
                    let cc = c.dagger();
                    // p^b q^a in normal order
                    for (m, coef, hbar) in product_expansion(Backend::Heisenberg, (0, b), (a, 0)) {
                        out.add_term(m, &cc.shifted(&coef, hbar, 0));
                    }
                }
                out
            }
        }
    }

    /// Formal partial derivative. On the Heisenberg backend this coincides
    /// with the inner derivations `−[p, ·]/(iħ)` and `[q, ·]/(iħ)`.
    pub fn partial(&self, dir: Direction) -> Self {
        let mut out = Self::zero(self.ctx);
        for (&(a, b), c) in &self.terms {
            let (n, m) = match dir {
                Direction::Q if a > 0 => (a, (a - 1, b)),
                Direction::P if b > 0 => (b, (a, b - 1)),
                _ => continue,
            };
            out.add_term(m, &c.scale(&GaussianRational::from_int(n as i64)));
        }
        out
    }

    /// Antiderivative with no constant-in-direction part; right inverse of
    /// [`partial`](Self::partial).
    pub fn antiderivative(&self, dir: Direction) -> Self {
        let mut out = Self::zero(self.ctx);
        for (&(a, b), c) in &self.terms {
            let (n, m) = match dir {
                Direction::Q => (a + 1, (a + 1, b)),
                Direction::P => (b + 1, (a, b + 1)),
            };
            out.add_term(m, &c.scale(&GaussianRational::from_ratio(1, n as i64)));
        }
        out
    }

    /// `(∂_q² − ∂_p²)`
    pub fn wave_operator(&self) -> Self {
        let qq = self.partial(Direction::Q).partial(Direction::Q);
        let pp = self.partial(Direction::P).partial(Direction::P);
        &qq - &pp
    }

    pub fn constant_term(&self) -> ScalarPoly {
        self.coeff((0, 0))
    }

    pub fn without_constant_term(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&(0, 0));
        out
    }

    /// Coefficient of `t^k`, as a t-free element.
    pub fn t_coefficient(&self, k: u32) -> Self {
        self.map_coefficients(|c| c.t_coefficient(k))
    }

    /// Sets ħ = 0 in every coefficient.
    pub fn classical_part(&self) -> Self {
        self.map_coefficients(ScalarPoly::classical_part)
    }

    pub fn max_t_degree(&self) -> Option<u32> {
        self.terms.values().filter_map(ScalarPoly::max_t_degree).max()
    }

    /// Moves the element to another truncation order without discarding terms.
    pub fn with_order(&self, order: u32) -> Result<Self> {
        let ctx = Context::new(self.ctx.backend, order);
        let mut out = Self::zero(ctx);
        for (m, c) in &self.terms {
            let c =
                c.with_order(order).ok_or(Error::OrderExceeded { exponent: c.max_t_degree().unwrap_or(0), order })?;
            out.add_term(*m, &c);
        }
        Ok(out)
    }

    /// Pointwise value of a Moyal symbol.
    pub fn evaluate(
        &self,
        q: &BigRational,
        p: &BigRational,
        hbar: &GaussianRational,
        t: &GaussianRational,
    ) -> Result<GaussianRational> {
        if self.ctx.backend != Backend::Moyal {
            return Err(Error::Unsupported(
                "pointwise evaluation needs the moyal backend (heisenberg elements are operators)".into(),
            ));
        }
        let q = GaussianRational::real(q.clone());
        let p = GaussianRational::real(p.clone());
        let mut acc = GaussianRational::zero();
        for (&(a, b), c) in &self.terms {
            acc += &(c.evaluate(hbar, t) * q.pow(a) * p.pow(b));
        }
        Ok(acc)
    }

    pub(crate) fn raw_terms(&self) -> &BTreeMap<Monomial, ScalarPoly> {
        &self.terms
    }
}

/// Expands the product of two basis monomials into `(monomial, coefficient,
/// ħ power)` triples.
fn product_expansion(backend: Backend, (a, b): Monomial, (c, d): Monomial) -> Vec<(Monomial, GaussianRational, u32)> {
    match backend {
        // q^a (p^b q^c) p^d with p^b q^c = Σ_k k! C(b,k) C(c,k) (−iħ)^k q^{c−k} p^{b−k}
        Backend::Heisenberg => (0..=b.min(c))
            .map(|k| {
                let n = factorial(k) * binomial(b, k) * binomial(c, k);
                let coef = GaussianRational::neg_i_pow(k).scale(&BigRational::from_integer(n));
                ((a + c - k, b + d - k), coef, k)
            })
            .collect(),
        // Σ_k (iħ/2)^k/k! Σ_j C(k,j)(−1)^j (∂q^{k−j}∂p^j f)(∂p^{k−j}∂q^j g)
        Backend::Moyal => {
            let mut out = Vec::new();
            for k in 0..=(a + b).min(c + d) {
                let mut per_k: BTreeMap<Monomial, BigInt> = BTreeMap::new();
                for j in 0..=k {
                    let (r, s) = (k - j, j);
                    if r > a || s > b || r > d || s > c {
                        continue;
                    }
                    let mut n = binomial(k, j) * falling(a, r) * falling(b, s) * falling(d, r) * falling(c, s);
                    if j % 2 == 1 {
                        n = -n;
                    }
                    *per_k.entry((a - r + c - s, b - s + d - r)).or_default() += n;
                }
                let base = GaussianRational::i().pow(k);
                let denom = factorial(k) * BigInt::from(2u32).pow(k);
                for (m, n) in per_k {
                    if n == BigInt::from(0) {
                        continue;
                    }
                    let coef = base.scale(&BigRational::new(n, denom.clone()));
                    out.push((m, coef, k));
                }
            }
            out
        }
    }
}

impl<'a> Add<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, o: &AlgebraElement) -> AlgebraElement {
        self.try_add(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, o: &AlgebraElement) -> AlgebraElement {
        self.try_sub(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Mul<&'a AlgebraElement> for &'a AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, o: &AlgebraElement) -> AlgebraElement {
        self.try_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.map_coefficients(|c| -c)
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

forward_owned_binop!(AlgebraElement, Add, add);
forward_owned_binop!(AlgebraElement, Sub, sub);
forward_owned_binop!(AlgebraElement, Mul, mul);

/// An anti-hermitian generator `X` whose truncated exponential `exp(tX)`
/// plays the role of a unitary element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSeries {
    element: AlgebraElement,
}

impl GeneratorSeries {
    pub fn new(element: AlgebraElement) -> Result<Self> {
        let residual = &element.dagger() + &element;
        if !residual.is_zero() {
            return Err(Error::NotAntiHermitian { residual: crate::expr::print(&residual) });
        }
        Ok(GeneratorSeries { element })
    }

    pub fn element(&self) -> &AlgebraElement {
        &self.element
    }

    pub fn order(&self) -> u32 {
        self.element.ctx().order
    }

    /// `(U, U⁻¹) = (Σ t^k X^k/k!, Σ (−t)^k X^k/k!)`, truncated at `t^K`.
    pub fn exp_series(&self) -> (AlgebraElement, AlgebraElement) {
        exp_pair(&self.element)
    }
}

/// Truncated `exp(±tX)` for any element; used directly for matrix generators.
pub(crate) fn exp_pair(x: &AlgebraElement) -> (AlgebraElement, AlgebraElement) {
    let ctx = x.ctx();
    let tx = x.times_t_pow(1);
    let mut u = AlgebraElement::one(ctx);
    let mut u_inv = AlgebraElement::one(ctx);
    let mut power = AlgebraElement::one(ctx);
    for k in 1..=ctx.order {
        power = &power * &tx;
        let term = power.scale(&GaussianRational::real(BigRational::new(1.into(), factorial(k))));
        u = &u + &term;
        u_inv = if k % 2 == 0 { &u_inv + &term } else { &u_inv - &term };
    }
    (u, u_inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn h(order: u32) -> Context {
        Context::heisenberg(order)
    }

    fn ihbar(ctx: Context) -> AlgebraElement {
        AlgebraElement::hbar(ctx).scale(&GaussianRational::i())
    }

    #[test]
    fn heisenberg_pq_rewrites_once() {
        let c = h(2);
        let (q, p) = (AlgebraElement::q(c), AlgebraElement::p(c));
        assert_eq!(&p * &q, &(&q * &p) - &ihbar(c));
    }

    #[test]
    fn heisenberg_p2_q() {
        let c = h(2);
        let (q, p) = (AlgebraElement::q(c), AlgebraElement::p(c));
        let lhs = &(&p * &p) * &q;
        let rhs = &(&q * &(&p * &p)) - &(&ihbar(c) * &p).scale(&GaussianRational::from_int(2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn moyal_first_order_products() {
        let c = Context::moyal(2);
        let (q, p) = (AlgebraElement::q(c), AlgebraElement::p(c));
        let half_ih = ihbar(c).scale(&GaussianRational::from_ratio(1, 2));
        let qp = AlgebraElement::monomial(c, (1, 1), ScalarPoly::one(2));
        assert_eq!(&q * &p, &qp + &half_ih);
        assert_eq!(&p * &q, &qp - &half_ih);
        assert_eq!(q.commutator(&p), ihbar(c));
    }

    #[test]
    fn heisenberg_dagger_of_qp() {
        let c = h(1);
        let qp = &AlgebraElement::q(c) * &AlgebraElement::p(c);
        assert_eq!(qp.dagger(), &qp - &ihbar(c));
        let iq = AlgebraElement::q(c).scale(&GaussianRational::i());
        assert_eq!(iq.dagger(), -&iq);
    }

    #[test]
    fn moyal_dagger_fixes_real_symbols() {
        let c = Context::moyal(1);
        let f = &AlgebraElement::monomial(c, (1, 1), ScalarPoly::one(1)) + &AlgebraElement::hbar(c);
        assert_eq!(f.dagger(), f);
        let qp = &AlgebraElement::q(c) * &AlgebraElement::p(c);
        assert_eq!(qp.dagger(), &AlgebraElement::p(c) * &AlgebraElement::q(c));
    }

    #[test]
    fn partial_and_antiderivative() {
        let c = h(1);
        let (q, p) = (AlgebraElement::q(c), AlgebraElement::p(c));
        let qp = &q * &p;
        assert_eq!(qp.partial(Direction::Q), p);
        assert!(q.partial(Direction::P).is_zero());
        assert_eq!((&q * &q).partial(Direction::Q), q.scale(&GaussianRational::from_int(2)));
        assert_eq!(p.antiderivative(Direction::Q), qp);
        assert!(AlgebraElement::zero(c).antiderivative(Direction::P).is_zero());
        assert_eq!(q.scale(&GaussianRational::from_int(2)).antiderivative(Direction::Q), &q * &q);
    }

    #[test]
    fn heisenberg_partial_is_inner_derivation() {
        // ∂_q f = −[p, f]/(iħ): check ħ-free identity −[p, f] = iħ ∂_q f
        let c = h(1);
        let (q, p) = (AlgebraElement::q(c), AlgebraElement::p(c));
        let f = &(&(&q * &q) * &p) + &(&p * &p).scale(&GaussianRational::i());
        assert_eq!(-p.commutator(&f), &ihbar(c) * &f.partial(Direction::Q));
        assert_eq!(q.commutator(&f), &ihbar(c) * &f.partial(Direction::P));
    }

    #[test]
    fn exp_series_examples() {
        let c = h(2);
        let zero = GeneratorSeries::new(AlgebraElement::zero(c)).unwrap();
        let (u, ui) = zero.exp_series();
        assert_eq!(u, AlgebraElement::one(c));
        assert_eq!(ui, AlgebraElement::one(c));

        let q = AlgebraElement::q(c);
        let x = GeneratorSeries::new(q.scale(&GaussianRational::i())).unwrap();
        let (u, ui) = x.exp_series();
        let expected = &(&AlgebraElement::one(c) + &q.scale(&GaussianRational::i()).times_t_pow(1))
            - &(&q * &q).scale(&GaussianRational::from_ratio(1, 2)).times_t_pow(2);
        assert_eq!(u, expected);
        assert_eq!(&u * &ui, AlgebraElement::one(c));
        assert_eq!(u.dagger(), ui);
    }

    #[test]
    fn non_antihermitian_generator_rejected() {
        let c = h(2);
        assert!(matches!(GeneratorSeries::new(AlgebraElement::q(c)), Err(Error::NotAntiHermitian { .. })));
    }

    #[test]
    fn backend_mismatch_is_an_error() {
        let a = AlgebraElement::q(h(2));
        let b = AlgebraElement::q(Context::moyal(2));
        assert!(matches!(a.try_mul(&b), Err(Error::ContextMismatch { .. })));
        let c = AlgebraElement::q(h(3));
        assert!(a.try_add(&c).is_err());
    }

    #[test]
    fn evaluate_rejects_heisenberg() {
        let one = GaussianRational::one();
        assert!(AlgebraElement::q(h(1)).evaluate(&rat(1, 1), &rat(1, 1), &one, &one).is_err());
        let m = Context::moyal(1);
        let f = &AlgebraElement::q(m) * &AlgebraElement::q(m);
        assert_eq!(f.evaluate(&rat(3, 1), &rat(0, 1), &one, &one).unwrap(), GaussianRational::from_int(9));
    }
}
