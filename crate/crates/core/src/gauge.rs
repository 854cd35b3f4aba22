//! Matrix gauge data: pure-gauge potentials, covariant derivative,
//! curvature and the harmonic-map residual.

use crate::algebra::{AlgebraElement, Context, GeneratorSeries};
use crate::calculus::{Basis, Form, HodgeTable};
use crate::error::{Error, Result};
use crate::matrix::MatrixOverA;

/// A matrix `a` together with a two-sided inverse `S(a)`, exact after
/// t-truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedInversePair {
    a: MatrixOverA,
    s: MatrixOverA,
}

impl GeneralizedInversePair {
    pub fn new(a: MatrixOverA, s: MatrixOverA) -> Result<Self> {
        let id = MatrixOverA::identity(a.ctx(), a.size());
        let left = &s.try_mul(&a)? - &id;
        let right = &a.try_mul(&s)? - &id;
        for r in [left, right] {
            if !r.is_zero() {
                let shown = Form::function(r).render();
                return Err(Error::InvalidInversePair { residual: shown });
            }
        }
        Ok(GeneralizedInversePair { a, s })
    }

    /// `(exp(tX), exp(−tX))` for a scalar generator.
    pub fn from_generator(x: &GeneratorSeries) -> Self {
        let (u, u_inv) = x.exp_series();
        GeneralizedInversePair { a: MatrixOverA::scalar(u), s: MatrixOverA::scalar(u_inv) }
    }

    /// `(exp(tX), exp(−tX))` for a matrix generator with `X* = −X`
    /// (conjugate transpose).
    pub fn from_matrix_generator(x: &MatrixOverA) -> Result<Self> {
        let residual = &x.adjoint() + x;
        if !residual.is_zero() {
            return Err(Error::NotAntiHermitian { residual: Form::function(residual).render() });
        }
        let (a, s) = x.exp_pair();
        Ok(GeneralizedInversePair { a, s })
    }

    pub fn a(&self) -> &MatrixOverA {
        &self.a
    }

    pub fn inverse(&self) -> &MatrixOverA {
        &self.s
    }

    pub fn order(&self) -> u32 {
        self.a.ctx().order
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `A = S(a) da`; flat by construction.
    PureGauge(GeneralizedInversePair),
    /// `A = ★d(φ†)`; harmonic by construction.
    FromPhi(MatrixOverA),
    Raw,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeField {
    a: Form,
    provenance: Provenance,
}

impl GaugeField {
    pub fn pure_gauge(pair: &GeneralizedInversePair) -> Self {
        let da = Form::function(pair.a.clone()).exterior_d();
        let a = da.mul_left(&pair.s).expect("pair has matching shapes");
        GaugeField { a, provenance: Provenance::PureGauge(pair.clone()) }
    }

    pub fn from_phi(phi: &MatrixOverA, table: &HodgeTable) -> Self {
        let a = Form::function(phi.dagger()).exterior_d().star(table);
        GaugeField { a, provenance: Provenance::FromPhi(phi.clone()) }
    }

    pub fn raw(a: Form) -> Result<Self> {
        a.expect_degree(1)?;
        Ok(GaugeField { a, provenance: Provenance::Raw })
    }

    pub fn zero(ctx: Context, size: usize) -> Self {
        GaugeField { a: Form::zero(ctx, size), provenance: Provenance::Raw }
    }

    pub fn form(&self) -> &Form {
        &self.a
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn ctx(&self) -> Context {
        self.a.ctx()
    }

    pub fn size(&self) -> usize {
        self.a.size()
    }

    /// Checks `F = 0` unless flatness is structural.
    pub fn require_flat(&self) -> Result<()> {
        if matches!(self.provenance, Provenance::PureGauge(_)) {
            return Ok(());
        }
        let f = curvature(self);
        if f.is_zero() {
            Ok(())
        } else {
            Err(Error::NotFlat { residual: Box::new(f) })
        }
    }

    /// Checks `d★A = 0` unless harmonicity is structural.
    pub fn require_harmonic(&self, table: &HodgeTable) -> Result<()> {
        if matches!(self.provenance, Provenance::FromPhi(_)) {
            return Ok(());
        }
        let r = harmonic_residual(self, table);
        if r.is_zero() {
            Ok(())
        } else {
            Err(Error::NotHarmonic { residual: Box::new(r) })
        }
    }
}

/// `Dχ = dχ + A·χ`
pub fn covariant_d(chi: &MatrixOverA, a: &GaugeField) -> Result<Form> {
    let d = Form::function(chi.clone()).exterior_d();
    d.try_add(&a.a.mul_right(chi)?)
}

/// `Dω = dω + A∧ω` for a form of any degree.
pub fn covariant_d_form(omega: &Form, a: &GaugeField) -> Result<Form> {
    omega.exterior_d().try_add(&a.a.try_wedge(omega)?)
}

/// `F = dA + A∧A`
pub fn curvature(a: &GaugeField) -> Form {
    &a.a.exterior_d() + &a.a.wedge(&a.a)
}

/// `d★A`; zero iff `A` is a generalized harmonic map.
pub fn harmonic_residual(a: &GaugeField, table: &HodgeTable) -> Form {
    a.a.star(table).exterior_d()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conservation {
    pub conserved: bool,
    pub residual: Form,
}

pub fn is_conserved(j: &Form, table: &HodgeTable) -> Result<Conservation> {
    j.expect_degree(1)?;
    let residual = j.star(table).exterior_d();
    Ok(Conservation { conserved: residual.is_zero(), residual })
}

/// `[p, U†pU] − [q, U†qU]` for a scalar unitary, the commutator form of the
/// equation of motion. `ħ²·d★A` equals this times `dq∧dp`.
pub fn sigma_model_commutator_residual(x: &GeneratorSeries) -> AlgebraElement {
    let ctx = x.element().ctx();
    let (u, u_inv) = x.exp_series();
    let (q, p) = (AlgebraElement::q(ctx), AlgebraElement::p(ctx));
    let big_p = &(&u_inv * &p) * &u;
    let big_q = &(&u_inv * &q) * &u;
    &p.commutator(&big_p) - &q.commutator(&big_q)
}

/// dq∧dp coefficient of a 1×1 form.
pub(crate) fn top_coefficient(f: &Form) -> &AlgebraElement {
    f.part(Basis::DqDp).get(0, 0)
}
