use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{AlgebraElement, Context};
use crate::error::{Error, Result};
use crate::scalar::{forward_owned_binop, GaussianRational, ScalarPoly};

/// Square matrix with entries in the coordinate algebra, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixOverA {
    ctx: Context,
    size: usize,
    entries: Vec<AlgebraElement>,
}

impl MatrixOverA {
    pub fn zero(ctx: Context, size: usize) -> Self {
        MatrixOverA { ctx, size, entries: vec![AlgebraElement::zero(ctx); size * size] }
    }

    pub fn identity(ctx: Context, size: usize) -> Self {
        Self::diagonal(&AlgebraElement::one(ctx), size)
    }

    pub fn diagonal(x: &AlgebraElement, size: usize) -> Self {
        let mut m = Self::zero(x.ctx(), size);
        for i in 0..size {
            m.entries[i * size + i] = x.clone();
        }
        m
    }

    /// 1×1 matrix.
    pub fn scalar(x: AlgebraElement) -> Self {
        MatrixOverA { ctx: x.ctx(), size: 1, entries: vec![x] }
    }

    pub fn from_rows(ctx: Context, rows: Vec<Vec<AlgebraElement>>) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(Error::ShapeMismatch { left: size, right: row.len() });
            }
            for e in row {
                ctx.check(&e.ctx())?;
                entries.push(e);
            }
        }
        if size == 0 {
            return Err(Error::Model("matrix must have at least one row".into()));
        }
        Ok(MatrixOverA { ctx, size, entries })
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: AlgebraElement) {
        assert_eq!(x.ctx(), self.ctx);
        self.entries[i * self.size + j] = x;
    }

    pub fn entries(&self) -> &[AlgebraElement] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[AlgebraElement]> {
        self.entries.chunks(self.size)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(AlgebraElement::is_zero)
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl Fn(&AlgebraElement) -> AlgebraElement) -> Self {
        MatrixOverA { ctx: self.ctx, size: self.size, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&AlgebraElement) -> Result<AlgebraElement>) -> Result<Self> {
        Ok(MatrixOverA { ctx: self.ctx, size: self.size, entries: self.entries.iter().map(f).collect::<Result<_>>()? })
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
        Ok(MatrixOverA {
            ctx: self.ctx,
            size: self.size,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let n = self.size;
        let mut out = Self::zero(self.ctx, n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = AlgebraElement::zero(self.ctx);
                for k in 0..n {
                    let (a, b) = (self.get(i, k), o.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                out.entries[i * n + j] = acc;
            }
        }
        Ok(out)
    }

    /// Entrywise involution; no transpose.
    pub fn dagger(&self) -> Self {
        self.map(AlgebraElement::dagger)
    }

    /// Conjugate transpose, used only to test anti-hermiticity of matrix generators.
    pub fn adjoint(&self) -> Self {
        let n = self.size;
        let mut out = Self::zero(self.ctx, n);
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = self.get(j, i).dagger();
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn scale_poly(&self, c: &ScalarPoly) -> Self {
        self.map(|x| x.scale_poly(c))
    }

    pub fn times_t_pow(&self, k: u32) -> Self {
        self.map(|x| x.times_t_pow(k))
    }

    pub fn t_coefficient(&self, k: u32) -> Self {
        self.map(|x| x.t_coefficient(k))
    }

    pub fn classical_part(&self) -> Self {
        self.map(AlgebraElement::classical_part)
    }

    pub fn without_constant_term(&self) -> Self {
        self.map(AlgebraElement::without_constant_term)
    }

    pub fn max_t_degree(&self) -> Option<u32> {
        self.entries.iter().filter_map(AlgebraElement::max_t_degree).max()
    }

    pub fn with_order(&self, order: u32) -> Result<Self> {
        let entries = self.entries.iter().map(|e| e.with_order(order)).collect::<Result<Vec<_>>>()?;
        Ok(MatrixOverA { ctx: Context::new(self.ctx.backend, order), size: self.size, entries })
    }

    /// Truncated `(exp(tX), exp(−tX))` with matrix powers.
    pub fn exp_pair(&self) -> (Self, Self) {
        if self.size == 1 {
            let (u, ui) = crate::algebra::exp_pair(&self.entries[0]);
            return (Self::scalar(u), Self::scalar(ui));
        }
        let tx = self.times_t_pow(1);
        let mut u = Self::identity(self.ctx, self.size);
        let mut u_inv = u.clone();
        let mut power = u.clone();
        let mut fact = num_bigint::BigInt::from(1);
        for k in 1..=self.ctx.order {
            power = &power * &tx;
            fact *= k;
            let term = power.scale(&GaussianRational::real(num_rational::BigRational::new(1.into(), fact.clone())));
            u = &u + &term;
            u_inv = if k % 2 == 0 { &u_inv + &term } else { &u_inv - &term };
        }
        (u, u_inv)
    }
}

impl<'a> Add<&'a MatrixOverA> for &'a MatrixOverA {
    type Output = MatrixOverA;
    fn add(self, o: &MatrixOverA) -> MatrixOverA {
        self.try_add(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Sub<&'a MatrixOverA> for &'a MatrixOverA {
    type Output = MatrixOverA;
    fn sub(self, o: &MatrixOverA) -> MatrixOverA {
        self.try_add(&-o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<'a> Mul<&'a MatrixOverA> for &'a MatrixOverA {
    type Output = MatrixOverA;
    fn mul(self, o: &MatrixOverA) -> MatrixOverA {
        self.try_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &MatrixOverA {
    type Output = MatrixOverA;
    fn neg(self) -> MatrixOverA {
        self.map(|x| -x)
    }
}

impl Neg for MatrixOverA {
    type Output = MatrixOverA;
    fn neg(self) -> MatrixOverA {
        -&self
    }
}

forward_owned_binop!(MatrixOverA, Add, add);
forward_owned_binop!(MatrixOverA, Sub, sub);
forward_owned_binop!(MatrixOverA, Mul, mul);
