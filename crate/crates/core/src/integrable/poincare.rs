use crate::algebra::{AlgebraElement, Direction};
use crate::calculus::{Basis, Form, HodgeTable};
use crate::error::{Error, Result};
use crate::matrix::MatrixOverA;

/// Integrates a closed 1-form: returns `χ` with `dχ = ω` and zero constant
/// term.
pub fn integrate_closed_one_form(omega: &Form) -> Result<MatrixOverA> {
    omega.expect_degree(1)?;
    let witness = omega.exterior_d();
    if !witness.is_zero() {
        return Err(Error::NotClosed { witness: Box::new(witness) });
    }
    let cq = omega.part(Basis::Dq);
    let cp = omega.part(Basis::Dp);
    let mut chi = MatrixOverA::zero(omega.ctx(), omega.size());
    for i in 0..omega.size() {
        for j in 0..omega.size() {
            chi.set(i, j, integrate_entry(cq.get(i, j), cp.get(i, j)));
        }
    }
    Ok(chi)
}

fn integrate_entry(cq: &AlgebraElement, cp: &AlgebraElement) -> AlgebraElement {
    let along_q = cq.antiderivative(Direction::Q);
    // closedness makes the remainder q-independent
    let remainder = cp - &along_q.partial(Direction::P);
    debug_assert!(remainder.partial(Direction::Q).is_zero());
    &along_q + &remainder.antiderivative(Direction::P)
}

/// Solves `J = ★d(χ†)` for `χ` with zero constant term, given `d★J = 0`.
pub fn extract_potential(j: &Form, table: &HodgeTable) -> Result<MatrixOverA> {
    j.expect_degree(1)?;
    let conservation = j.star(table).exterior_d();
    if !conservation.is_zero() {
        return Err(Error::NotConserved { step: None, residual: Box::new(conservation) });
    }
    let eps_inv = table.epsilon(1).inv().ok_or(Error::StarNotInvertible)?;
    let d_chi_dagger = j.star(table).scale(&eps_inv);
    let chi_dagger = integrate_closed_one_form(&d_chi_dagger).map_err(|e| match e {
        Error::NotClosed { witness } => Error::NotConserved { step: None, residual: witness },
        other => other,
    })?;
    Ok(chi_dagger.dagger().without_constant_term())
}
