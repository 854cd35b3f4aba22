//! Graded differential algebra Ω⁰ ⊕ Ω¹ ⊕ Ω² over a coordinate algebra.
//!
//! A form is `c₀ + c_q dq + c_p dp + c₂ dq∧dp` with matrix coefficients
//! written left of the basis. The differentials are central, anticommute
//! with each other and square to zero.

use std::ops::{Add, Neg, Sub};

use crate::algebra::{AlgebraElement, Context, Direction};
use crate::error::{Error, Result};
use crate::matrix::MatrixOverA;
use crate::scalar::{forward_owned_binop, GaussianRational};

/// Central basis `{1, dq, dp, dq∧dp}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    One = 0,
    Dq = 1,
    Dp = 2,
    DqDp = 3,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::One, Basis::Dq, Basis::Dp, Basis::DqDp];

    pub fn degree(self) -> u8 {
        match self {
            Basis::One => 0,
            Basis::Dq | Basis::Dp => 1,
            Basis::DqDp => 2,
        }
    }

    /// Sign `s` with `e† = s·e`.
    fn dagger_sign(self) -> i64 {
        match self {
            Basis::One => 1,
            _ => -1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Basis::One => "deg0",
            Basis::Dq => "dq",
            Basis::Dp => "dp",
            Basis::DqDp => "dqdp",
        }
    }
}

/// Hodge star on the central basis together with the constants ε_r of
/// `★★ω = ε_r ω`.
///
/// `star[i][j]` is the coefficient of basis `j` in the image of basis `i`.
/// The table is plain data so that a corrupted table can be fed to the
/// axiom checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HodgeTable {
    pub star: [[GaussianRational; 4]; 4],
    pub epsilons: [GaussianRational; 3],
}

impl Default for HodgeTable {
    fn default() -> Self {
        Self::standard()
    }
}

impl HodgeTable {
    pub const DIMENSION: u8 = 2;

    /// `★1 = dq∧dp, ★dq = dp, ★dp = dq, ★(dq∧dp) = −1`, ε = (−1, 1, −1).
    pub fn standard() -> Self {
        let z = GaussianRational::zero;
        let one = GaussianRational::one;
        let mut star: [[GaussianRational; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| z()));
        star[Basis::One as usize][Basis::DqDp as usize] = one();
        star[Basis::Dq as usize][Basis::Dp as usize] = one();
        star[Basis::Dp as usize][Basis::Dq as usize] = one();
        star[Basis::DqDp as usize][Basis::One as usize] = -one();
        HodgeTable { star, epsilons: [GaussianRational::from_int(-1), one(), GaussianRational::from_int(-1)] }
    }

    /// Replaces the image of one basis element.
    pub fn with_image(mut self, basis: Basis, image: [GaussianRational; 4]) -> Self {
        self.star[basis as usize] = image;
        self
    }

    pub fn epsilon(&self, degree: u8) -> &GaussianRational {
        &self.epsilons[degree as usize]
    }

    /// Coefficients `N` with `★⁻¹(Σ_j e_j d_j) = Σ_i e_i Σ_j conj(N_ij) d_j†`.
    fn inverse_coefficients(&self) -> Option<[[GaussianRational; 4]; 4]> {
        // N = (Mᵀ)⁻¹ by Gauss-Jordan elimination
        let mut a: Vec<Vec<GaussianRational>> = (0..4)
            .map(|i| {
                let mut row: Vec<GaussianRational> = (0..4).map(|j| self.star[j][i].clone()).collect();
                row.extend((0..4).map(|j| if i == j { GaussianRational::one() } else { GaussianRational::zero() }));
                row
            })
            .collect();
        for col in 0..4 {
            let pivot = (col..4).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            let inv = a[col][col].inv()?;
            for x in a[col].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x = &*x - &(y * &f);
                    }
                }
            }
        }
        Some(std::array::from_fn(|i| std::array::from_fn(|j| a[i][j + 4].clone())))
    }

    /// True iff ★ maps Ω^r into Ω^{2−r} for every basis element.
    pub fn respects_degrees(&self) -> bool {
        Basis::ALL.iter().all(|&i| {
            Basis::ALL
                .iter()
                .all(|&j| self.star[i as usize][j as usize].is_zero() || i.degree() + j.degree() == Self::DIMENSION)
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    ctx: Context,
    size: usize,
    parts: [MatrixOverA; 4],
}

impl Form {
    pub fn zero(ctx: Context, size: usize) -> Self {
        Form { ctx, size, parts: std::array::from_fn(|_| MatrixOverA::zero(ctx, size)) }
    }

    pub fn from_parts(parts: [MatrixOverA; 4]) -> Result<Self> {
        let ctx = parts[0].ctx();
        let size = parts[0].size();
        for p in &parts[1..] {
            ctx.check(&p.ctx())?;
            if p.size() != size {
                return Err(Error::ShapeMismatch { left: size, right: p.size() });
            }
        }
        Ok(Form { ctx, size, parts })
    }

    pub fn function(c: MatrixOverA) -> Self {
        let mut f = Self::zero(c.ctx(), c.size());
        f.parts[0] = c;
        f
    }

    pub fn one_form(dq: MatrixOverA, dp: MatrixOverA) -> Self {
        let mut f = Self::zero(dq.ctx(), dq.size());
        f.parts[1] = dq;
        f.parts[2] = dp;
        f
    }

    pub fn two_form(c: MatrixOverA) -> Self {
        let mut f = Self::zero(c.ctx(), c.size());
        f.parts[3] = c;
        f
    }

    /// Single basis element `b` with coefficient `c`.
    pub fn basis(b: Basis, c: MatrixOverA) -> Self {
        let mut f = Self::zero(c.ctx(), c.size());
        f.parts[b as usize] = c;
        f
    }

    /// Scalar 1×1 form with one component.
    pub fn scalar(b: Basis, x: AlgebraElement) -> Self {
        Self::basis(b, MatrixOverA::scalar(x))
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn part(&self, b: Basis) -> &MatrixOverA {
        &self.parts[b as usize]
    }

    pub fn parts(&self) -> &[MatrixOverA; 4] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(MatrixOverA::is_zero)
    }

    /// Degrees with a nonzero component, ascending and deduplicated.
    pub fn degrees(&self) -> Vec<u8> {
        let mut d: Vec<u8> = Basis::ALL.iter().filter(|b| !self.part(**b).is_zero()).map(|b| b.degree()).collect();
        d.dedup();
        d
    }

    pub fn homogeneous(&self, degree: u8) -> Self {
        let mut out = Self::zero(self.ctx, self.size);
        for b in Basis::ALL {
            if b.degree() == degree {
                out.parts[b as usize] = self.part(b).clone();
            }
        }
        out
    }

    /// Fails unless every nonzero component has degree `degree`.
    pub fn expect_degree(&self, degree: u8) -> Result<()> {
        let found = self.degrees();
        if found.iter().all(|d| *d == degree) {
            Ok(())
        } else {
            Err(Error::WrongDegree { expected: degree, found })
        }
    }

    pub fn map(&self, f: impl Fn(&MatrixOverA) -> MatrixOverA) -> Self {
        Form { ctx: self.ctx, size: self.size, parts: std::array::from_fn(|i| f(&self.parts[i])) }
    }

    fn check(&self, o: &Self) -> Result<()> {
        self.ctx.check(&o.ctx)?;
        if self.size != o.size {
            return Err(Error::ShapeMismatch { left: self.size, right: o.size });
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(Form { ctx: self.ctx, size: self.size, parts: std::array::from_fn(|i| &self.parts[i] + &o.parts[i]) })
    }

    /// Graded product using centrality of dq, dp and `dq∧dq = dp∧dp = 0`,
    /// `dp∧dq = −dq∧dp`.
    pub fn try_wedge(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let [a0, aq, ap, a2] = &self.parts;
        let [b0, bq, bp, b2] = &o.parts;
        let prod = |x: &MatrixOverA, y: &MatrixOverA| -> MatrixOverA {
            if x.is_zero() || y.is_zero() {
                MatrixOverA::zero(self.ctx, self.size)
            } else {
                x * y
            }
        };
        Ok(Form {
            ctx: self.ctx,
            size: self.size,
            parts: [
                prod(a0, b0),
                &prod(a0, bq) + &prod(aq, b0),
                &prod(a0, bp) + &prod(ap, b0),
                &(&(&prod(a0, b2) + &prod(a2, b0)) + &prod(aq, bp)) - &prod(ap, bq),
            ],
        })
    }

    pub fn wedge(&self, o: &Self) -> Self {
        self.try_wedge(o).unwrap_or_else(|e| panic!("{e}"))
    }

    /// `ω·M` for a 0-form matrix `M`.
    pub fn mul_right(&self, m: &MatrixOverA) -> Result<Self> {
        self.try_wedge(&Form::function(m.clone()))
    }

    /// `M·ω` for a 0-form matrix `M`.
    pub fn mul_left(&self, m: &MatrixOverA) -> Result<Self> {
        Form::function(m.clone()).try_wedge(self)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map(|m| m.scale(c))
    }

    /// Exterior derivative, componentwise by degree.
    pub fn exterior_d(&self) -> Self {
        let [c0, cq, cp, _] = &self.parts;
        let dq = |m: &MatrixOverA| m.map(|x| x.partial(Direction::Q));
        let dp = |m: &MatrixOverA| m.map(|x| x.partial(Direction::P));
        Form {
            ctx: self.ctx,
            size: self.size,
            parts: [MatrixOverA::zero(self.ctx, self.size), dq(c0), dp(c0), &dq(cp) - &dp(cq)],
        }
    }

    /// `★(e f) = f† ★e` on each component.
    pub fn star(&self, table: &HodgeTable) -> Self {
        let mut out = Self::zero(self.ctx, self.size);
        for (i, c) in self.parts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cd = c.dagger();
            for j in 0..4 {
                let s = &table.star[i][j];
                if !s.is_zero() {
                    out.parts[j] = &out.parts[j] + &cd.scale(s);
                }
            }
        }
        out
    }

    pub fn star_inv(&self, table: &HodgeTable) -> Result<Self> {
        let n = table.inverse_coefficients().ok_or(Error::StarNotInvertible)?;
        let daggered: Vec<MatrixOverA> = self.parts.iter().map(MatrixOverA::dagger).collect();
        let mut out = Self::zero(self.ctx, self.size);
        for (i, row) in n.iter().enumerate() {
            for (j, nij) in row.iter().enumerate() {
                if !nij.is_zero() && !daggered[j].is_zero() {
                    out.parts[i] = &out.parts[i] + &daggered[j].scale(&nij.conj());
                }
            }
        }
        Ok(out)
    }

    /// Involution: `1† = 1`, `dq† = −dq`, `dp† = −dp`, `(dq∧dp)† = −dq∧dp`,
    /// coefficients daggered entrywise.
    pub fn dagger(&self) -> Self {
        Form {
            ctx: self.ctx,
            size: self.size,
            parts: std::array::from_fn(|i| {
                let d = self.parts[i].dagger();
                if Basis::ALL[i].dagger_sign() < 0 {
                    -d
                } else {
                    d
                }
            }),
        }
    }

    pub fn t_coefficient(&self, k: u32) -> Self {
        self.map(|m| m.t_coefficient(k))
    }

    pub fn with_order(&self, order: u32) -> Result<Self> {
        let parts = self.parts.iter().map(|m| m.with_order(order)).collect::<Result<Vec<_>>>()?;
        Form::from_parts(parts.try_into().expect("four parts"))
    }

    /// Compact text rendering, e.g. `(2*q) dq + (p) dp` or `0`.
    pub fn render(&self) -> String {
        let mut pieces = Vec::new();
        for b in Basis::ALL {
            let m = self.part(b);
            if m.is_zero() {
                continue;
            }
            let coeff = if self.size == 1 {
                format!("({})", crate::expr::print(m.get(0, 0)))
            } else {
                let rows: Vec<String> = m
                    .rows()
                    .map(|r| format!("[{}]", r.iter().map(crate::expr::print).collect::<Vec<_>>().join(", ")))
                    .collect();
                format!("[{}]", rows.join(", "))
            };
            pieces.push(match b {
                Basis::One => coeff,
                Basis::Dq => format!("{coeff} dq"),
                Basis::Dp => format!("{coeff} dp"),
                Basis::DqDp => format!("{coeff} dq^dp"),
            });
        }
        if pieces.is_empty() {
            "0".into()
        } else {
            pieces.join(" + ")
        }
    }
}

/// `(α, β) = ★⁻¹(α ∧ ★β)` for 1-forms.
pub fn inner_product(alpha: &Form, beta: &Form, table: &HodgeTable) -> Result<MatrixOverA> {
    alpha.expect_degree(1)?;
    beta.expect_degree(1)?;
    let two = alpha.try_wedge(&beta.star(table))?;
    Ok(two.star_inv(table)?.part(Basis::One).clone())
}

impl<'a> Add<&'a Form> for &'a Form {
    type Output = Form;
    fn add(self, o: &Form) -> Form {
        self.try_add(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a Form> for &'a Form {
    type Output = Form;
    fn sub(self, o: &Form) -> Form {
        self.try_add(&-o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        self.map(|m| -m)
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        -&self
    }
}

forward_owned_binop!(Form, Add, add);
forward_owned_binop!(Form, Sub, sub);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn ctx() -> Context {
        Context::heisenberg(2)
    }

    fn el(s: &str) -> AlgebraElement {
        parse(s, ctx()).unwrap()
    }

    fn f(b: Basis, s: &str) -> Form {
        Form::scalar(b, el(s))
    }

    #[test]
    fn d_examples() {
        assert_eq!(f(Basis::One, "q^2").exterior_d(), f(Basis::Dq, "2*q"));
        assert!(f(Basis::One, "1").exterior_d().is_zero());
        assert_eq!(f(Basis::Dq, "p").exterior_d(), f(Basis::DqDp, "-1"));
    }

    #[test]
    fn wedge_examples() {
        let dq = f(Basis::Dq, "1");
        let dp = f(Basis::Dp, "1");
        assert_eq!(dq.wedge(&dp), f(Basis::DqDp, "1"));
        assert_eq!(dp.wedge(&dq), f(Basis::DqDp, "-1"));
        assert!(f(Basis::Dq, "q").wedge(&f(Basis::Dq, "p")).is_zero());
        assert_eq!(f(Basis::Dq, "q").wedge(&f(Basis::Dp, "p")), f(Basis::DqDp, "q*p"));
    }

    #[test]
    fn star_examples() {
        let t = HodgeTable::standard();
        assert_eq!(f(Basis::Dq, "1").star(&t), f(Basis::Dp, "1"));
        assert_eq!(f(Basis::Dq, "q").star(&t), f(Basis::Dp, "q"));
        let w = f(Basis::Dq, "i*q*p + h");
        assert_eq!(w.star(&t).star(&t), w);
        assert_eq!(f(Basis::One, "1").star(&t), f(Basis::DqDp, "1"));
        assert_eq!(f(Basis::DqDp, "1").star(&t), f(Basis::One, "-1"));
    }

    #[test]
    fn star_inverse_round_trip() {
        let t = HodgeTable::standard();
        let w = &(&f(Basis::One, "i*q") + &f(Basis::Dp, "p^2 + 2*i")) + &f(Basis::DqDp, "q*p*t");
        assert_eq!(w.star(&t).star_inv(&t).unwrap(), w);
        assert_eq!(w.star_inv(&t).unwrap().star(&t), w);
    }

    #[test]
    fn dagger_examples() {
        assert_eq!(f(Basis::Dq, "1").dagger(), f(Basis::Dq, "-1"));
        assert_eq!(f(Basis::DqDp, "1").dagger(), f(Basis::DqDp, "-1"));
        let w = &f(Basis::Dq, "i*q*p") + &f(Basis::Dp, "p + i");
        let expected = -(&f(Basis::Dq, "-i*(q*p - i*h)") + &f(Basis::Dp, "p - i"));
        assert_eq!(w.dagger(), expected);
    }

    #[test]
    fn inner_product_examples() {
        let t = HodgeTable::standard();
        let dq = f(Basis::Dq, "1");
        let dp = f(Basis::Dp, "1");
        assert_eq!(inner_product(&dq, &dq, &t).unwrap(), MatrixOverA::scalar(el("1")));
        assert!(inner_product(&dq, &dp, &t).unwrap().is_zero());
        let g = MatrixOverA::scalar(el("i*q^2*p + 2*p"));
        let lhs = inner_product(&dq, &dp.mul_right(&g).unwrap(), &t).unwrap();
        let rhs = inner_product(&dq.mul_right(&g.dagger()).unwrap(), &dp, &t).unwrap();
        assert_eq!(lhs, rhs);
        assert!(matches!(inner_product(&f(Basis::One, "1"), &dq, &t), Err(Error::WrongDegree { .. })));
    }

    #[test]
    fn corrupted_table_is_singular() {
        let one = GaussianRational::one;
        let z = GaussianRational::zero;
        let bad = HodgeTable::standard().with_image(Basis::Dq, [z(), one(), z(), z()]);
        assert!(bad.respects_degrees());
        assert!(matches!(f(Basis::Dq, "1").star_inv(&bad), Err(Error::StarNotInvertible)));
        assert!(HodgeTable::standard().respects_degrees());
    }
}
