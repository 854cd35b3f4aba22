//! Pointwise sampling of Moyal symbols on rectangular grids, with CSV
//! output for plotting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{AlgebraElement, Backend};
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

pub const DEFAULT_DIGITS: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub q_min: BigRational,
    pub q_max: BigRational,
    pub p_min: BigRational,
    pub p_max: BigRational,
    /// Points per axis, endpoints included.
    pub steps: usize,
}

impl GridSpec {
    fn axis(lo: &BigRational, hi: &BigRational, steps: usize) -> Vec<BigRational> {
        if steps == 1 {
            return vec![lo.clone()];
        }
        let n = BigRational::from_integer(BigInt::from(steps - 1));
        (0..steps).map(|k| lo + (hi - lo) * BigRational::from_integer(BigInt::from(k)) / &n).collect()
    }

    /// Points in row-major order: q outer, p inner.
    pub fn points(&self) -> Vec<(BigRational, BigRational)> {
        let qs = Self::axis(&self.q_min, &self.q_max, self.steps);
        let ps = Self::axis(&self.p_min, &self.p_max, self.steps);
        qs.iter().flat_map(|q| ps.iter().map(move |p| (q.clone(), p.clone()))).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridRow {
    pub q: BigRational,
    pub p: BigRational,
    pub value: GaussianRational,
}

/// Evaluates `x` at every grid point after substituting `ħ` and `t`.
pub fn sample(
    x: &AlgebraElement,
    grid: &GridSpec,
    hbar: &GaussianRational,
    t: &GaussianRational,
) -> Result<Vec<GridRow>> {
    if x.backend() != Backend::Moyal {
        return Err(Error::Unsupported("grid sampling needs the moyal backend".into()));
    }
    if grid.steps == 0 {
        return Err(Error::Model("grid needs at least one step".into()));
    }
    grid.points()
        .into_par_iter()
        .map(|(q, p)| {
            let value = x.evaluate(&q, &p, hbar, t)?;
            Ok(GridRow { q, p, value })
        })
        .collect()
}

/// Fixed-point decimal with `digits` fractional digits, rounded half away
/// from zero.
pub fn decimal(r: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = r.abs() * BigRational::from_integer(scale.clone());
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let rounded = (scaled + half).floor().to_integer();
    let negative = r.is_negative() && !rounded.is_zero();
    let int_part = &rounded / &scale;
    let frac_part = &rounded % &scale;
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

/// CSV with header `q,p,value_re,value_im`.
pub fn to_csv(rows: &[GridRow], digits: usize) -> String {
    let mut out = String::from("q,p,value_re,value_im\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            decimal(&r.q, digits),
            decimal(&r.p, digits),
            decimal(&r.value.re, digits),
            decimal(&r.value.im, digits)
        ));
    }
    out
}
