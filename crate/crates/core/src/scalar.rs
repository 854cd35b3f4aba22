//! Exact scalars: Gaussian rationals and polynomials in the central
//! parameters ħ and t.
//!
//! `ScalarPoly` is truncated in t at its order K; ħ is never truncated.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Shorthand for a big rational built from a numerator and denominator.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// An exact complex number `re + im·i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational { re, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::real(rat(n, d))
    }

    pub fn i() -> Self {
        GaussianRational { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(GaussianRational { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `(-i)^k` without a multiplication loop.
    pub fn neg_i_pow(k: u32) -> Self {
        match k % 4 {
            0 => Self::from_int(1),
            1 => -Self::i(),
            2 => Self::from_int(-1),
            _ => Self::i(),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        GaussianRational { re: &self.re * r, im: &self.im * r }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "({} - {}*i)", self.re, -self.im.clone())
                } else {
                    write!(f, "({} + {}*i)", self.re, self.im)
                }
            }
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv().expect("division by zero Gaussian rational")
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -self.clone()
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, o: $ty) -> $ty {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $m(self, o: &'a $ty) -> $ty {
                (&self).$m(o)
            }
        }
    };
}
pub(crate) use forward_owned_binop;

forward_owned_binop!(GaussianRational, Add, add);
forward_owned_binop!(GaussianRational, Sub, sub);
forward_owned_binop!(GaussianRational, Mul, mul);
forward_owned_binop!(GaussianRational, Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

/// Key of a scalar term: exponents of ħ and t.
pub type ScalarKey = (u32, u32);

/// Polynomial in the central variables ħ and t with Gaussian-rational
/// coefficients, truncated above `t^order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalarPoly {
    terms: BTreeMap<ScalarKey, GaussianRational>,
    order: u32,
}

impl ScalarPoly {
    pub fn zero(order: u32) -> Self {
        ScalarPoly { terms: BTreeMap::new(), order }
    }

    pub fn constant(c: GaussianRational, order: u32) -> Self {
        Self::term(c, 0, 0, order)
    }

    pub fn one(order: u32) -> Self {
        Self::constant(GaussianRational::one(), order)
    }

    /// `c · ħ^hbar · t^t`, dropped when `t` exceeds the order or `c` is zero.
    pub fn term(c: GaussianRational, hbar: u32, t: u32, order: u32) -> Self {
        let mut out = Self::zero(order);
        out.add_term((hbar, t), c);
        out
    }

    pub fn hbar(order: u32) -> Self {
        Self::term(GaussianRational::one(), 1, 0, order)
    }

    pub fn t(order: u32) -> Self {
        Self::term(GaussianRational::one(), 0, 1, order)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ScalarKey, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, hbar: u32, t: u32) -> GaussianRational {
        self.terms.get(&(hbar, t)).cloned().unwrap_or_default()
    }

    /// Returns the constant value if this polynomial has no ħ or t dependence.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, key: ScalarKey, c: GaussianRational) {
        if key.1 > self.order || c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Complex conjugation of the coefficients; ħ and t are real.
    pub fn dagger(&self) -> Self {
        ScalarPoly { terms: self.terms.iter().map(|(k, c)| (*k, c.conj())).collect(), order: self.order }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        ScalarPoly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(), order: self.order }
    }

    /// Multiplies by `c · ħ^hbar · t^t`, truncating.
    pub fn shifted(&self, c: &GaussianRational, hbar: u32, t: u32) -> Self {
        let mut out = Self::zero(self.order);
        for ((h, tt), v) in &self.terms {
            out.add_term((h + hbar, tt + t), v * c);
        }
        out
    }

    /// The coefficient of `t^k`, as a t-free polynomial.
    pub fn t_coefficient(&self, k: u32) -> Self {
        ScalarPoly {
            terms: self.terms.iter().filter(|((_, t), _)| *t == k).map(|((h, _), c)| ((*h, 0), c.clone())).collect(),
            order: self.order,
        }
    }

    /// Sets ħ = 0.
    pub fn classical_part(&self) -> Self {
        ScalarPoly {
            terms: self.terms.iter().filter(|((h, _), _)| *h == 0).map(|(k, c)| (*k, c.clone())).collect(),
            order: self.order,
        }
    }

    pub fn max_t_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(_, t)| *t).max()
    }

    /// Re-labels the truncation order. Fails if a stored term would exceed it.
    pub fn with_order(&self, order: u32) -> Option<Self> {
        if self.max_t_degree().is_some_and(|t| t > order) {
            return None;
        }
        Some(ScalarPoly { terms: self.terms.clone(), order })
    }

    /// Substitutes numeric values for ħ and t.
    pub fn evaluate(&self, hbar: &GaussianRational, t: &GaussianRational) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for ((h, tt), c) in &self.terms {
            acc += &(c * &(hbar.pow(*h) * t.pow(*tt)));
        }
        acc
    }
}

impl<'a> Add<&'a ScalarPoly> for &'a ScalarPoly {
    type Output = ScalarPoly;
    fn add(self, o: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl<'a> Sub<&'a ScalarPoly> for &'a ScalarPoly {
    type Output = ScalarPoly;
    fn sub(self, o: &ScalarPoly) -> ScalarPoly {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl<'a> Mul<&'a ScalarPoly> for &'a ScalarPoly {
    type Output = ScalarPoly;
    fn mul(self, o: &ScalarPoly) -> ScalarPoly {
        assert_eq!(self.order, o.order, "truncation order mismatch in scalar product");
        let mut out = ScalarPoly::zero(self.order);
        for ((h1, t1), c1) in &self.terms {
            for ((h2, t2), c2) in &o.terms {
                if t1 + t2 <= self.order {
                    out.add_term((h1 + h2, t1 + t2), c1 * c2);
                }
            }
        }
        out
    }
}

impl Neg for &ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        ScalarPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(), order: self.order }
    }
}

impl Neg for ScalarPoly {
    type Output = ScalarPoly;
    fn neg(self) -> ScalarPoly {
        -&self
    }
}

forward_owned_binop!(ScalarPoly, Add, add);
forward_owned_binop!(ScalarPoly, Sub, sub);
forward_owned_binop!(ScalarPoly, Mul, mul);

impl AddAssign<&ScalarPoly> for ScalarPoly {
    fn add_assign(&mut self, o: &ScalarPoly) {
        assert_eq!(self.order, o.order, "truncation order mismatch in scalar sum");
        for (k, c) in &o.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl SubAssign<&ScalarPoly> for ScalarPoly {
    fn sub_assign(&mut self, o: &ScalarPoly) {
        assert_eq!(self.order, o.order, "truncation order mismatch in scalar difference");
        for (k, c) in &o.terms {
            self.add_term(*k, -c);
        }
    }
}

/// Binomial coefficient as a big integer.
pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// n (n-1) ... (n-k+1)
pub(crate) fn falling(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j))
}
