//! The tower of conserved currents `J^(m+1) = Dχ^(m)`, `J^(m) = ★d(χ^(m)†)`.

use crate::calculus::{Form, HodgeTable};
use crate::error::{Error, Result};
use crate::gauge::{covariant_d, covariant_d_form, curvature, harmonic_residual, is_conserved, GaugeField};
use crate::matrix::MatrixOverA;
use crate::scalar::GaussianRational;

use super::poincare::extract_potential;

pub const DEFAULT_DEPTH: usize = 4;

/// Residuals witnessing one tower step; both are zero on a valid tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub step: usize,
    /// `d★J^(m)`
    pub conservation: Form,
    /// `J^(m) − ★d(χ^(m)†)`
    pub closedness: Form,
}

impl Certificate {
    pub fn is_zero(&self) -> bool {
        self.conservation.is_zero() && self.closedness.is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct Tower {
    field: GaugeField,
    chis: Vec<MatrixOverA>,
    currents: Vec<Form>,
    certificates: Vec<Certificate>,
}

impl Tower {
    pub fn depth(&self) -> usize {
        self.currents.len()
    }

    pub fn field(&self) -> &GaugeField {
        &self.field
    }

    /// `χ^(0) … χ^(M)`
    pub fn chis(&self) -> &[MatrixOverA] {
        &self.chis
    }

    /// `J^(1) … J^(M)`
    pub fn currents(&self) -> &[Form] {
        &self.currents
    }

    pub fn certificates(&self) -> &[Certificate] {
        &self.certificates
    }

    /// Overwrites `χ^(m)`; used to build negative controls.
    pub fn replace_chi(&mut self, m: usize, chi: MatrixOverA) {
        self.chis[m] = chi;
    }
}

/// `J^(m+1) = Dχ^(m)`
pub fn next_current(chi_prev: &MatrixOverA, a: &GaugeField) -> Result<Form> {
    covariant_d(chi_prev, a)
}

/// Builds `depth` steps of the tower. Requires `d★A = 0` and `F = 0`.
pub fn build_tower(a: &GaugeField, depth: usize, table: &HodgeTable) -> Result<Tower> {
    a.require_harmonic(table)?;
    a.require_flat()?;
    let id = MatrixOverA::identity(a.ctx(), a.size());
    let mut chis = vec![id];
    let mut currents = Vec::with_capacity(depth);
    let mut certificates = Vec::with_capacity(depth);
    for step in 1..=depth {
        let j = next_current(chis.last().expect("χ^(0) present"), a)?;
        let check = is_conserved(&j, table)?;
        if !check.conserved {
            return Err(Error::NotConserved { step: Some(step), residual: Box::new(check.residual) });
        }
        let chi = extract_potential(&j, table).map_err(|e| match e {
            Error::NotConserved { residual, .. } => Error::NotConserved { step: Some(step), residual },
            other => other,
        })?;
        let closedness = &j - &Form::function(chi.dagger()).exterior_d().star(table);
        if !closedness.is_zero() {
            return Err(Error::NotClosed { witness: Box::new(closedness) });
        }
        certificates.push(Certificate { step, conservation: check.residual, closedness });
        currents.push(j);
        chis.push(chi);
    }
    Ok(Tower { field: a.clone(), chis, currents, certificates })
}

/// `d★Dχ + ε₁(D★d(χ†))†`, identically zero when `d★A = 0`.
pub fn lemma_residual(chi: &MatrixOverA, a: &GaugeField, table: &HodgeTable) -> Result<Form> {
    a.require_harmonic(table)?;
    let lhs = covariant_d(chi, a)?.star(table).exterior_d();
    let inner = Form::function(chi.dagger()).exterior_d().star(table);
    let rhs = covariant_d_form(&inner, a)?.dagger().scale(table.epsilon(1));
    lhs.try_add(&rhs)
}

/// `★d(χ^(m)†) − Dχ^(m−1)` for `m = 1..=M`: the λ^m coefficients of
/// `★d(χ†) = λDχ` with `χ = Σ λ^m χ^(m)`.
pub fn master_residuals(tower: &Tower, table: &HodgeTable) -> Result<Vec<Form>> {
    (1..tower.chis.len())
        .map(|m| {
            let lhs = Form::function(tower.chis[m].dagger()).exterior_d().star(table);
            Ok(&lhs - &covariant_d(&tower.chis[m - 1], &tower.field)?)
        })
        .collect()
}

/// `((d★A)† − ε₁λF)·χ`
pub fn integrability_residual(
    chi: &MatrixOverA,
    a: &GaugeField,
    lambda: &GaussianRational,
    table: &HodgeTable,
) -> Result<Form> {
    let coeff = table.epsilon(1) * lambda;
    let bracket = &harmonic_residual(a, table).dagger() - &curvature(a).scale(&coeff);
    bracket.mul_right(chi)
}
