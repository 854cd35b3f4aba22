use crate::algebra::{AlgebraElement, Backend, GeneratorSeries};
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// `L`, `M` with spectral parameter `λ`; `[L, M] = iħ` encodes the
/// equation of motion of the unitary sigma model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaxPair {
    pub l: AlgebraElement,
    pub m: AlgebraElement,
    pub lambda: GaussianRational,
    /// `[L, M] − iħ`
    pub residual: AlgebraElement,
}

impl LaxPair {
    pub fn is_exact(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Builds the Lax pair from `P = U†pU`, `Q = U†qU`:
///
/// `L = λ/(1−λ²)(λ⁻¹q − p − λQ + P)`, `M = λ/(1−λ²)(−q + λ⁻¹p + Q − λP)`.
pub fn lax_pair(u_data: &GeneratorSeries, lambda: &GaussianRational) -> Result<LaxPair> {
    let ctx = u_data.element().ctx();
    if ctx.backend != Backend::Heisenberg {
        return Err(Error::Unsupported("the Lax pair is defined for the heisenberg backend".into()));
    }
    let one = GaussianRational::one();
    let lambda_sq = lambda * lambda;
    let denom_inv = (&one - &lambda_sq).inv().ok_or(Error::PoleAtUnitLambda)?;
    let (u, u_inv) = u_data.exp_series();
    let (q, p) = (AlgebraElement::q(ctx), AlgebraElement::p(ctx));
    let big_q = &(&u_inv * &q) * &u;
    let big_p = &(&u_inv * &p) * &u;

    // λ·λ⁻¹ folded in so that λ = 0 is allowed
    let c_unit = denom_inv.clone();
    let c_lin = lambda * &denom_inv;
    let c_sq = &lambda_sq * &denom_inv;

    let l = &(&q.scale(&c_unit) + &(&big_p - &p).scale(&c_lin)) - &big_q.scale(&c_sq);
    let m = &(&p.scale(&c_unit) + &(&big_q - &q).scale(&c_lin)) - &big_p.scale(&c_sq);
    let ihbar = AlgebraElement::hbar(ctx).scale(&GaussianRational::i());
    let residual = &l.commutator(&m) - &ihbar;
    Ok(LaxPair { l, m, lambda: lambda.clone(), residual })
}
