//! Randomized exact checks of the algebra and calculus axioms.
//!
//! Every trial draws fresh random inputs from its own generator stream, so
//! reports are identical for a given seed regardless of thread scheduling.

use rayon::prelude::*;

use crate::algebra::{AlgebraElement, Backend, Context, Direction};
use crate::calculus::{inner_product, HodgeTable};
use crate::error::Result;
use crate::expr::print;
use crate::matrix::MatrixOverA;
use crate::random;
use crate::scalar::GaussianRational;

#[derive(Clone, Debug)]
pub struct AxiomConfig {
    pub backend: Backend,
    pub trials: usize,
    pub seed: u64,
    pub max_degree: u32,
    pub order: u32,
    pub table: HodgeTable,
}

impl AxiomConfig {
    pub fn new(backend: Backend) -> Self {
        AxiomConfig { backend, trials: 500, seed: 0, max_degree: 5, order: 3, table: HodgeTable::standard() }
    }

    fn ctx(&self) -> Context {
        Context::new(self.backend, self.order)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Associativity,
    CanonicalCommutator,
    DaggerAntiHomomorphism,
    DaggerInvolution,
    DerivationRule,
    DaggerCommutesWithPartial,
    AntiderivativeRightInverse,
    DSquaredZero,
    GradedLeibniz,
    StarCovariance,
    FormAntiHomomorphism,
    StarDagger,
    StarDaggerChain,
    DDagger,
    StarStarEpsilon,
    EpsilonConsistency,
    StarDegrees,
    ModifiedSymmetry,
    ModifiedSymmetryChain,
    InnerProduct,
}

impl Check {
    pub const ALGEBRA: [Check; 7] = [
        Check::Associativity,
        Check::CanonicalCommutator,
        Check::DaggerAntiHomomorphism,
        Check::DaggerInvolution,
        Check::DerivationRule,
        Check::DaggerCommutesWithPartial,
        Check::AntiderivativeRightInverse,
    ];

    pub const CALCULUS: [Check; 13] = [
        Check::DSquaredZero,
        Check::GradedLeibniz,
        Check::StarCovariance,
        Check::FormAntiHomomorphism,
        Check::StarDagger,
        Check::StarDaggerChain,
        Check::DDagger,
        Check::StarStarEpsilon,
        Check::EpsilonConsistency,
        Check::StarDegrees,
        Check::ModifiedSymmetry,
        Check::ModifiedSymmetryChain,
        Check::InnerProduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Associativity => "associativity (fg)h = f(gh)",
            Check::CanonicalCommutator => "[q,p] = ih",
            Check::DaggerAntiHomomorphism => "(fg)† = g†f†",
            Check::DaggerInvolution => "f†† = f",
            Check::DerivationRule => "∂(fg) = (∂f)g + f(∂g)",
            Check::DaggerCommutesWithPartial => "(∂f)† = ∂(f†)",
            Check::AntiderivativeRightInverse => "∂∘∫ = id",
            Check::DSquaredZero => "d² = 0",
            Check::GradedLeibniz => "d(ωη) = (dω)η + (-1)^r ω dη",
            Check::StarCovariance => "★(ωf) = f†★ω",
            Check::FormAntiHomomorphism => "(ωη)† = η†ω†",
            Check::StarDagger => "(★ω)† = ★⁻¹(ω†)",
            Check::StarDaggerChain => "(★(ωf))† chain closes",
            Check::DDagger => "(dω)† = (-1)^(r+1) d(ω†)",
            Check::StarStarEpsilon => "★★ω = ε_r ω",
            Check::EpsilonConsistency => "ε_(2-r) = ε_r†, ε_r† = ε_r⁻¹, ε₀ = -ε₁",
            Check::StarDegrees => "★ maps Ω^r to Ω^(2-r)",
            Check::ModifiedSymmetry => "(α★β)† = ε₀ β★α",
            Check::ModifiedSymmetryChain => "[α★(βf)]† chain closes",
            Check::InnerProduct => "inner product (α,βf) = (αf†,β), (fα,β) = (α,β)f†, (α,β)† = (β,α)",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: Check,
    pub trials: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub backend: Backend,
    pub trials: usize,
    pub outcomes: Vec<CheckOutcome>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(CheckOutcome::passed)
    }

    pub fn outcome(&self, check: Check) -> Option<&CheckOutcome> {
        self.outcomes.iter().find(|o| o.check == check)
    }
}

type TrialResult = Vec<(Check, Option<String>)>;

fn verdict(ok: bool, witness: impl FnOnce() -> String) -> Option<String> {
    if ok {
        None
    } else {
        Some(witness())
    }
}

fn from_result(r: Result<Option<String>>) -> Option<String> {
    r.unwrap_or_else(|e| Some(format!("error: {e}")))
}

fn algebra_trial(cfg: &AxiomConfig, trial: u64) -> TrialResult {
    let ctx = cfg.ctx();
    let mut rng = random::trial_rng(cfg.seed, trial);
    let f = random::element(&mut rng, ctx, cfg.max_degree);
    let g = random::element(&mut rng, ctx, cfg.max_degree);
    let h = random::element(&mut rng, ctx, cfg.max_degree);
    let shown = || format!("f = {}; g = {}; h = {}", print(&f), print(&g), print(&h));
    let mut out = Vec::new();

    let fg = &f * &g;
    out.push((Check::Associativity, verdict(&fg * &h == &f * &(&g * &h), shown)));

    let (q, p) = (AlgebraElement::q(ctx), AlgebraElement::p(ctx));
    let ihbar = AlgebraElement::hbar(ctx).scale(&GaussianRational::i());
    let comm = q.commutator(&p);
    out.push((Check::CanonicalCommutator, verdict(comm == ihbar, || format!("[q,p] = {}", print(&comm)))));

    out.push((Check::DaggerAntiHomomorphism, verdict(fg.dagger() == &g.dagger() * &f.dagger(), shown)));
    out.push((Check::DaggerInvolution, verdict(f.dagger().dagger() == f, shown)));

    let derivation =
        [Direction::Q, Direction::P].iter().all(|&d| fg.partial(d) == &(&f.partial(d) * &g) + &(&f * &g.partial(d)));
    out.push((Check::DerivationRule, verdict(derivation, shown)));

    let commute = [Direction::Q, Direction::P].iter().all(|&d| f.partial(d).dagger() == f.dagger().partial(d));
    out.push((Check::DaggerCommutesWithPartial, verdict(commute, shown)));

    let inverse = [Direction::Q, Direction::P].iter().all(|&d| f.antiderivative(d).partial(d) == f);
    out.push((Check::AntiderivativeRightInverse, verdict(inverse, shown)));
    out
}

fn calculus_trial(cfg: &AxiomConfig, trial: u64) -> TrialResult {
    let ctx = cfg.ctx();
    let table = &cfg.table;
    let mut rng = random::trial_rng(cfg.seed, trial);
    use rand::Rng;
    let r: u8 = rng.gen_range(0..=2);
    let w = random::form(&mut rng, ctx, cfg.max_degree, Some(r));
    let eta = random::form(&mut rng, ctx, cfg.max_degree, None);
    let full = random::form(&mut rng, ctx, cfg.max_degree, None);
    let f = MatrixOverA::scalar(random::element(&mut rng, ctx, cfg.max_degree));
    let alpha = random::form(&mut rng, ctx, cfg.max_degree, Some(1));
    let beta = random::form(&mut rng, ctx, cfg.max_degree, Some(1));
    let shown = || {
        format!(
            "r = {r}; w = {}; η = {}; ω = {}; f = {}; α = {}; β = {}",
            w.render(),
            eta.render(),
            full.render(),
            print(f.get(0, 0)),
            alpha.render(),
            beta.render()
        )
    };
    let fd = f.dagger();
    let sign = |k: u8| GaussianRational::from_int(if k.is_multiple_of(2) { 1 } else { -1 });
    let mut out = Vec::new();

    out.push((Check::DSquaredZero, verdict(full.exterior_d().exterior_d().is_zero(), shown)));

    let leibniz =
        w.wedge(&eta).exterior_d() == &w.exterior_d().wedge(&eta) + &w.wedge(&eta.exterior_d()).scale(&sign(r));
    out.push((Check::GradedLeibniz, verdict(leibniz, shown)));

    let wf = w.mul_right(&f).expect("same shape");
    let covariance = wf.star(table) == w.star(table).mul_left(&fd).expect("same shape");
    out.push((Check::StarCovariance, verdict(covariance, shown)));

    out.push((
        Check::FormAntiHomomorphism,
        verdict(full.wedge(&eta).dagger() == eta.dagger().wedge(&full.dagger()), shown),
    ));

    let star_dagger = full
        .star_inv(table)
        .map(|_| ())
        .and_then(|_| Ok(verdict(full.star(table).dagger() == full.dagger().star_inv(table)?, shown)));
    out.push((Check::StarDagger, from_result(star_dagger)));

    let chain = (|| -> Result<Option<String>> {
        let links = [
            wf.star(table).dagger(),
            w.star(table).mul_left(&fd)?.dagger(),
            w.star(table).dagger().mul_right(&f)?,
            w.dagger().star_inv(table)?.mul_right(&f)?,
            w.dagger().mul_left(&fd)?.star_inv(table)?,
            wf.dagger().star_inv(table)?,
        ];
        Ok(verdict(links.windows(2).all(|p| p[0] == p[1]), shown))
    })();
    out.push((Check::StarDaggerChain, from_result(chain)));

    let d_dagger = w.exterior_d().dagger() == w.dagger().exterior_d().scale(&sign(r + 1));
    out.push((Check::DDagger, verdict(d_dagger, shown)));

    let star_star = (0..=2u8).all(|k| {
        let hk = full.homogeneous(k);
        hk.star(table).star(table) == hk.scale(table.epsilon(k))
    });
    out.push((Check::StarStarEpsilon, verdict(star_star, shown)));

    let e = &table.epsilons;
    let eps_ok =
        (0..3).all(|k| e[2 - k] == e[k].conj() && e[k].inv().is_some_and(|inv| inv == e[k].conj())) && e[0] == -&e[1];
    out.push((Check::EpsilonConsistency, verdict(eps_ok, || format!("ε = ({}, {}, {})", e[0], e[1], e[2]))));
    out.push((Check::StarDegrees, verdict(table.respects_degrees(), || "star table mixes degrees".into())));

    let eps0 = table.epsilon(0);
    let sym = alpha.wedge(&beta.star(table)).dagger() == beta.wedge(&alpha.star(table)).scale(eps0);
    out.push((Check::ModifiedSymmetry, verdict(sym, shown)));

    let sym_chain = (|| -> Result<Option<String>> {
        let beta_f = beta.mul_right(&f)?;
        let alpha_fd = alpha.mul_right(&fd)?;
        let links = [
            alpha.wedge(&beta_f.star(table)).dagger(),
            alpha_fd.wedge(&beta.star(table)).dagger(),
            beta.wedge(&alpha_fd.star(table)).scale(eps0),
            beta_f.wedge(&alpha.star(table)).scale(eps0),
        ];
        Ok(verdict(links.windows(2).all(|p| p[0] == p[1]), shown))
    })();
    out.push((Check::ModifiedSymmetryChain, from_result(sym_chain)));

    let inner = (|| -> Result<Option<String>> {
        let ab = inner_product(&alpha, &beta, table)?;
        let one =
            inner_product(&alpha, &beta.mul_right(&f)?, table)? == inner_product(&alpha.mul_right(&fd)?, &beta, table)?;
        let two = inner_product(&alpha.mul_left(&f)?, &beta, table)? == &ab * &fd;
        let three = ab.dagger() == inner_product(&beta, &alpha, table)?;
        Ok(verdict(one && two && three, shown))
    })();
    out.push((Check::InnerProduct, from_result(inner)));

    out
}

fn run(cfg: &AxiomConfig, checks: &[Check], trial_fn: fn(&AxiomConfig, u64) -> TrialResult) -> Vec<CheckOutcome> {
    let per_trial: Vec<TrialResult> = (0..cfg.trials as u64).into_par_iter().map(|k| trial_fn(cfg, k)).collect();
    checks
        .iter()
        .map(|&check| {
            let mut failures = 0;
            let mut first = None;
            for results in &per_trial {
                for (c, witness) in results {
                    if *c == check {
                        if let Some(w) = witness {
                            failures += 1;
                            first.get_or_insert_with(|| w.clone());
                        }
                    }
                }
            }
            CheckOutcome { check, trials: cfg.trials, failures, first_counterexample: first }
        })
        .collect()
}

pub fn run_algebra_suite(cfg: &AxiomConfig) -> AxiomReport {
    AxiomReport { backend: cfg.backend, trials: cfg.trials, outcomes: run(cfg, &Check::ALGEBRA, algebra_trial) }
}

pub fn run_calculus_suite(cfg: &AxiomConfig) -> AxiomReport {
    AxiomReport { backend: cfg.backend, trials: cfg.trials, outcomes: run(cfg, &Check::CALCULUS, calculus_trial) }
}

/// Algebra and calculus checks together.
pub fn run_axioms(cfg: &AxiomConfig) -> AxiomReport {
    let mut report = run_algebra_suite(cfg);
    report.outcomes.extend(run_calculus_suite(cfg).outcomes);
    report
}
