//! Order-by-order solvers for the deformed chiral model (φ formulation) and
//! the unitary sigma model `A = U†dU`, `U = exp(tX)`.

use crate::algebra::{AlgebraElement, Direction, GeneratorSeries};
use crate::calculus::{Form, HodgeTable};
use crate::error::{Error, Result};
use crate::expr::print;
use crate::gauge::{harmonic_residual, top_coefficient, GaugeField, GeneralizedInversePair};
use crate::matrix::MatrixOverA;

use super::lightcone::inverse_wave;

fn partial(m: &MatrixOverA, dir: Direction) -> MatrixOverA {
    m.map(|x| x.partial(dir))
}

/// `(□φ − ∂_qφ·∂_pφ + ∂_pφ·∂_qφ) dq∧dp`; equals the curvature of `★d(φ†)`.
pub fn chiral_residual(phi: &MatrixOverA) -> Form {
    let box_phi = phi.map(AlgebraElement::wave_operator);
    let dq = partial(phi, Direction::Q);
    let dp = partial(phi, Direction::P);
    let bracket = &(&dq * &dp) - &(&dp * &dq);
    Form::two_form(&box_phi - &bracket)
}

/// Returns `φ = Σ_{k=1..K} t^k φ_k` with `φ_1 = seed` solving the chiral
/// equation up to `O(t^{K+1})`. Corrections are the light-cone particular
/// solutions (no homogeneous part).
pub fn solve_chiral_perturbative(seed: &MatrixOverA, order: u32) -> Result<MatrixOverA> {
    let seed = seed.with_order(order)?;
    let wave = seed.map(AlgebraElement::wave_operator);
    if !wave.is_zero() {
        return Err(Error::SeedNotHarmonic { residual: Form::function(wave).render() });
    }
    let mut phi = seed.times_t_pow(1);
    for k in 2..=order {
        // without φ_k the order-k residual is −(source)
        let residual = chiral_residual(&phi);
        let source = -residual.part(crate::calculus::Basis::DqDp).t_coefficient(k);
        let correction = source.map(inverse_wave);
        phi = &phi + &correction.times_t_pow(k);
    }
    Ok(phi)
}

#[derive(Clone, Debug)]
pub struct SigmaSolution {
    /// `X = X₁ + t X₂ + … + t^{K−1} X_K`
    pub generator: GeneratorSeries,
    pub field: GaugeField,
}

/// Corrects an anti-hermitian seed `X₁` with `(∂_q² − ∂_p²)X₁ = 0` so that
/// `A = U⁻¹dU` with `U = exp(tX)` is harmonic up to `O(t^{K+1})`.
pub fn solve_sigma_perturbative(seed: &AlgebraElement, order: u32, table: &HodgeTable) -> Result<SigmaSolution> {
    let seed = seed.with_order(order)?;
    let mut x = GeneratorSeries::new(seed.clone())?.element().clone();
    let wave = seed.wave_operator();
    if !wave.is_zero() {
        return Err(Error::SeedNotHarmonic { residual: print(&wave) });
    }
    for k in 2..=order {
        let series = GeneratorSeries::new(x.clone())?;
        let field = GaugeField::pure_gauge(&GeneralizedInversePair::from_generator(&series));
        // order-k residual is R_k − □X_k
        let source = top_coefficient(&harmonic_residual(&field, table)).t_coefficient(k);
        let hermitian_part = &source.dagger() + &source;
        if !hermitian_part.is_zero() {
            return Err(Error::ObstructionNonintegrable { order: k, residual: print(&source) });
        }
        let particular = inverse_wave(&source);
        let correction = (&particular - &particular.dagger()).scale(&crate::scalar::GaussianRational::from_ratio(1, 2));
        x = &x + &correction.times_t_pow(k - 1);
    }
    let generator = GeneratorSeries::new(x)?;
    let field = GaugeField::pure_gauge(&GeneralizedInversePair::from_generator(&generator));
    Ok(SigmaSolution { generator, field })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Context;
    use crate::calculus::Basis;
    use crate::expr::parse;
    use crate::gauge::curvature;

    fn m(s: &str, c: Context) -> MatrixOverA {
        MatrixOverA::scalar(parse(s, c).unwrap())
    }

    #[test]
    fn chiral_residual_examples() {
        let c = Context::moyal(2);
        assert!(chiral_residual(&m("(q + p)^3 - 2*(q + p)", c)).is_zero());
        assert!(chiral_residual(&m("2*q - 3*i*p", c)).is_zero());
        assert_eq!(chiral_residual(&m("q^2 + p^2", c)), Form::two_form(m("-4*i*h", c)));
    }

    #[test]
    fn chiral_residual_is_curvature_of_phi_field() {
        let table = HodgeTable::standard();
        let c = Context::moyal(2);
        let phi = m("q^3*p + i*p^2 - h*t*q^2*p^2 + (1 + i)*q", c);
        assert_eq!(chiral_residual(&phi), curvature(&GaugeField::from_phi(&phi, &table)));
    }

    #[test]
    fn chiral_solver_examples() {
        let c = Context::moyal(3);
        let phi = solve_chiral_perturbative(&m("(q + p)^2", c), 3).unwrap();
        assert_eq!(phi, m("t*(q + p)^2", c));

        let c2 = Context::moyal(2);
        let phi = solve_chiral_perturbative(&m("q^2 + p^2", c2), 2).unwrap();
        assert_eq!(phi, m("t*(q^2 + p^2) + i*h*t^2*(q^2 - p^2)", c2));
        assert!(chiral_residual(&phi).is_zero());

        let phi = solve_chiral_perturbative(&m("q*p", c2), 2).unwrap();
        assert_eq!(phi.t_coefficient(2), m("-1/4*i*h*(q^2 - p^2)", c2));

        assert!(matches!(solve_chiral_perturbative(&m("q^2", c2), 2), Err(Error::SeedNotHarmonic { .. })));
    }

    #[test]
    fn sigma_solver_examples() {
        let table = HodgeTable::standard();
        let c = Context::heisenberg(3);
        let sol = solve_sigma_perturbative(&parse("i*(q^2 + p^2)", c).unwrap(), 3, &table).unwrap();
        assert!(harmonic_residual(&sol.field, &table).is_zero());

        assert!(matches!(
            solve_sigma_perturbative(&parse("i*(q^2 - p^2)", c).unwrap(), 3, &table),
            Err(Error::SeedNotHarmonic { .. })
        ));

        let sol = solve_sigma_perturbative(&parse("i*q", c).unwrap(), 3, &table).unwrap();
        assert_eq!(sol.generator.element(), &parse("i*q", c).unwrap());
        assert_eq!(sol.field.form(), &Form::scalar(Basis::Dq, parse("i*t", c).unwrap()));
    }
}
