//! Acceptance criteria. Each criterion prints one `PASS`/`FAIL` line; the
//! run exits nonzero if any criterion fails. All comparisons are exact.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;

use nc_harmonic::axioms::{run_algebra_suite, run_axioms, run_calculus_suite, AxiomConfig, Check};
use nc_harmonic::expr::{parse, parse_constant, print};
use nc_harmonic::gauge::curvature;
use nc_harmonic::integrable::{
    build_tower, chiral_residual, lax_pair, lemma_residual, master_residuals, solve_chiral_perturbative,
    solve_sigma_perturbative,
};
use nc_harmonic::io::HodgeTableJson;
use nc_harmonic::random;
use nc_harmonic::{
    AlgebraElement, Backend, Basis, Context, Error, GaugeField, GaussianRational, GeneralizedInversePair,
    GeneratorSeries, HodgeTable, MatrixOverA, ScalarPoly,
};

const AXIOM_BUDGET: Duration = Duration::from_secs(60);
const TOWER_BUDGET: Duration = Duration::from_secs(120);

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion(n: u32, name: &str, body: impl FnOnce() -> Outcome) -> bool {
    let result = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|p| {
        Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
    });
    match result {
        Ok(detail) => {
            println!("PASS {n} {name}: {detail}");
            true
        }
        Err(detail) => {
            println!("FAIL {n} {name}: {detail}");
            false
        }
    }
}

fn axiom_suite() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for backend in [Backend::Heisenberg, Backend::Moyal] {
        let cfg = AxiomConfig { trials: 500, max_degree: 5, order: 3, ..AxiomConfig::new(backend) };
        let report = run_calculus_suite(&cfg);
        for o in &report.outcomes {
            ensure(o.passed(), || format!("{backend} {}: {:?}", o.check.name(), o.first_counterexample))?;
            checked += 1;
        }
        ensure(cfg.table.epsilons == [-1, 1, -1].map(GaussianRational::from_int), || "ε table".into())?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= AXIOM_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} checks × 500 trials per backend, {:.1}s", elapsed.as_secs_f64()))
}

fn algebra_backends() -> Outcome {
    for backend in [Backend::Heisenberg, Backend::Moyal] {
        let cfg = AxiomConfig { trials: 500, max_degree: 6, order: 3, seed: 1, ..AxiomConfig::new(backend) };
        let report = run_algebra_suite(&cfg);
        for check in [Check::Associativity, Check::CanonicalCommutator] {
            let o = report.outcome(check).expect("check present");
            ensure(o.passed(), || format!("{backend} {}: {:?}", check.name(), o.first_counterexample))?;
        }
    }
    let c = Context::moyal(0);
    let lhs = &parse("q^2", c).unwrap() * &parse("p^2", c).unwrap();
    let expected = AlgebraElement::from_terms(
        c,
        [
            ((2, 2), ScalarPoly::one(0)),
            ((1, 1), ScalarPoly::term(GaussianRational::from_int(2) * GaussianRational::i(), 1, 0, 0)),
            ((0, 0), ScalarPoly::term(GaussianRational::from_ratio(-1, 2), 2, 0, 0)),
        ],
    );
    ensure(lhs == expected, || format!("q^2⋆p^2 = {}", print(&lhs)))?;
    Ok("500 triples per backend at degree ≤ 6; q²⋆p² = q²p² + 2iħqp − ħ²/2".into())
}

fn zero_curvature() -> Outcome {
    for backend in [Backend::Heisenberg, Backend::Moyal] {
        let ctx = Context::new(backend, 4);
        for trial in 0..50 {
            let x = random::anti_hermitian(&mut random::trial_rng(3, trial), ctx, 3);
            let x = GeneratorSeries::new(x).map_err(|e| e.to_string())?;
            let field = GaugeField::pure_gauge(&GeneralizedInversePair::from_generator(&x));
            let f = curvature(&field);
            ensure(f.is_zero(), || format!("{backend} trial {trial}: F = {}", f.render()))?;
        }
    }
    Ok("50 anti-hermitian generators per backend at K = 4".into())
}

fn lemma() -> Outcome {
    let table = HodgeTable::standard();
    for trial in 0..100u64 {
        let mut rng = random::trial_rng(4, trial);
        let backend = if trial % 2 == 0 { Backend::Heisenberg } else { Backend::Moyal };
        let size = 1 + (trial as usize / 2) % 2;
        let ctx = Context::new(backend, 3);
        let phi = random::matrix(&mut rng, ctx, size, 3);
        let chi = random::matrix(&mut rng, ctx, size, 3);
        let r = lemma_residual(&chi, &GaugeField::from_phi(&phi, &table), &table).map_err(|e| e.to_string())?;
        ensure(r.is_zero(), || format!("trial {trial}: {}", r.render()))?;
    }
    Ok("100 random (χ, φ) pairs, N ∈ {1, 2}, both backends".into())
}

fn tower() -> Outcome {
    let start = Instant::now();
    let table = HodgeTable::standard();
    let light_cone = MatrixOverA::scalar(parse("t*(q+p)^2", Context::moyal(4)).unwrap());

    let c3 = Context::moyal(3);
    let solved = solve_chiral_perturbative(&MatrixOverA::scalar(parse("q^2 + p^2", c3).unwrap()), 3)
        .map_err(|e| e.to_string())?;
    let closed_form = parse("t*(q^2 + p^2) + t^2*i*h*(q^2 - p^2)", c3).unwrap();
    ensure(solved.get(0, 0) == &closed_form, || format!("solver gave {}", print(solved.get(0, 0))))?;
    ensure(chiral_residual(&solved).is_zero(), || "second solution residual".into())?;

    let mut certified = 0;
    for phi in [light_cone, solved] {
        let field = GaugeField::from_phi(&phi, &table);
        let tower = build_tower(&field, 4, &table).map_err(|e| e.to_string())?;
        ensure(tower.certificates().len() == 4, || "depth".into())?;
        for c in tower.certificates() {
            ensure(c.is_zero(), || format!("step {} certificate", c.step))?;
            certified += 1;
        }
        for (m, r) in master_residuals(&tower, &table).map_err(|e| e.to_string())?.iter().enumerate() {
            ensure(r.is_zero(), || format!("master equation at step {}: {}", m + 1, r.render()))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed <= TOWER_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{certified} certified steps (K = 4 and K = 3), {:.1}s", elapsed.as_secs_f64()))
}

fn lax() -> Outcome {
    let lambdas: Vec<GaussianRational> = ["1/2", "2", "1+i"].iter().map(|s| parse_constant(s).unwrap()).collect();
    let c = Context::heisenberg(3);
    let trivial = GeneratorSeries::new(AlgebraElement::zero(c)).unwrap();
    for l in &lambdas {
        let pair = lax_pair(&trivial, l).map_err(|e| e.to_string())?;
        ensure(pair.l == AlgebraElement::q(c) && pair.m == AlgebraElement::p(c), || format!("U = 1, λ = {l}"))?;
        ensure(pair.is_exact(), || format!("U = 1, λ = {l}: residual"))?;
    }
    let seed = parse("i*(q^2 + p^2)", c).unwrap();
    let sol = solve_sigma_perturbative(&seed, 3, &HodgeTable::standard()).map_err(|e| e.to_string())?;
    for l in &lambdas {
        let pair = lax_pair(&sol.generator, l).map_err(|e| e.to_string())?;
        ensure(pair.is_exact(), || format!("λ = {l}: [L,M] − iħ = {}", print(&pair.residual)))?;
    }
    for l in ["1", "-1"] {
        let r = lax_pair(&sol.generator, &parse_constant(l).unwrap());
        ensure(matches!(r, Err(Error::PoleAtUnitLambda)), || format!("λ = {l} accepted"))?;
    }
    Ok("U = 1 and the K = 3 sigma solution give [L,M] = iħ; λ = ±1 rejected".into())
}

fn chiral_solver() -> Outcome {
    let ctx = Context::moyal(4);
    for trial in 0..20 {
        let seed = random::wave_seed(&mut random::trial_rng(7, trial), ctx, 3);
        let phi = solve_chiral_perturbative(&MatrixOverA::scalar(seed), 4).map_err(|e| e.to_string())?;
        let r = chiral_residual(&phi);
        ensure(r.is_zero(), || format!("trial {trial}: {}", r.render()))?;
        let classical = phi.get(0, 0).classical_part();
        ensure(classical.wave_operator().is_zero(), || format!("trial {trial}: □φ|ħ=0 ≠ 0"))?;
    }
    Ok("20 random wave seeds at K = 4".into())
}

fn corrupted_table() -> HodgeTable {
    let z = GaussianRational::zero;
    HodgeTable::standard().with_image(Basis::Dq, [z(), GaussianRational::one(), z(), z()])
}

fn negative_controls() -> Outcome {
    let table = corrupted_table();
    let cfg = AxiomConfig { trials: 20, table: table.clone(), ..AxiomConfig::new(Backend::Moyal) };
    let report = run_axioms(&cfg);
    ensure(!report.outcome(Check::StarStarEpsilon).unwrap().passed(), || "corrupted ★dq = dq not detected".into())?;

    let standard = HodgeTable::standard();
    let phi = MatrixOverA::scalar(parse("t*(q+p)^2", Context::moyal(3)).unwrap());
    let mut tower = build_tower(&GaugeField::from_phi(&phi, &standard), 3, &standard).map_err(|e| e.to_string())?;
    let bent = &tower.chis()[2] + &MatrixOverA::scalar(parse("t*q*p", Context::moyal(3)).unwrap());
    tower.replace_chi(2, bent);
    let residuals = master_residuals(&tower, &standard).map_err(|e| e.to_string())?;
    ensure(residuals.iter().any(|r| !r.is_zero()), || "corrupted χ^(2) not detected".into())?;

    let raw = GaugeField::raw(nc_harmonic::Form::scalar(Basis::Dq, parse("q", Context::moyal(1)).unwrap())).unwrap();
    ensure(matches!(build_tower(&raw, 2, &standard), Err(Error::NotHarmonic { .. })), || {
        "raw A = q dq accepted".into()
    })?;

    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let table_path = dir.path().join("table.json");
    std::fs::write(&table_path, serde_json::to_string(&HodgeTableJson::from_table(&table)).unwrap()).unwrap();
    let axioms = Command::new(env!("CARGO_BIN_EXE_nch"))
        .args(["axioms", "--trials", "10", "--table", table_path.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(axioms.status.code() == Some(1), || format!("axioms exit {:?}", axioms.status.code()))?;

    let model_path = dir.path().join("raw.json");
    std::fs::write(
        &model_path,
        r#"{"algebra":"moyal","matrix_size":1,"truncation_order":1,"source":{"type":"raw","A":{"dq":"q"}}}"#,
    )
    .unwrap();
    let tower_run = Command::new(env!("CARGO_BIN_EXE_nch"))
        .args(["tower", "--model", model_path.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(tower_run.status.code() == Some(1), || format!("tower exit {:?}", tower_run.status.code()))?;
    Ok("corrupted table, corrupted χ^(2) and non-harmonic A all rejected; CLI exits 1".into())
}

/// Random expression text over the full grammar, not necessarily canonical.
fn random_text(rng: &mut impl Rng, depth: u32) -> String {
    let atoms = ["q", "p", "h", "t", "i", "2", "3/4", "-1/2", "1"];
    if depth == 0 || rng.gen_bool(0.3) {
        return atoms[rng.gen_range(0..atoms.len())].to_string();
    }
    match rng.gen_range(0..4) {
        0 => format!("{} + {}", random_text(rng, depth - 1), random_text(rng, depth - 1)),
        1 => format!("{} - {}", random_text(rng, depth - 1), random_text(rng, depth - 1)),
        2 => format!("{}*{}", random_text(rng, depth - 1), random_text(rng, depth - 1)),
        _ => format!("({})^{}", random_text(rng, depth - 1), rng.gen_range(0..3)),
    }
}

fn parser() -> Outcome {
    for trial in 0..1000u64 {
        let backend = if trial % 2 == 0 { Backend::Heisenberg } else { Backend::Moyal };
        let ctx = Context::new(backend, 3);
        let mut rng = random::trial_rng(9, trial);
        let x = random::element(&mut rng, ctx, 5);
        let text = print(&x);
        let back = parse(&text, ctx).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == x, || format!("parse(print(x)) ≠ x for {text}"))?;
        ensure(print(&back) == text, || format!("print not stable for {text}"))?;

        let raw = random_text(&mut rng, 4);
        if let Ok(y) = parse(&raw, ctx) {
            let canon = print(&y);
            let again = print(&parse(&canon, ctx).map_err(|e| format!("{canon}: {e}"))?);
            ensure(again == canon, || format!("canonicalization not idempotent: {raw} → {canon} → {again}"))?;
        }
    }
    Ok("1000 canonical expressions round-trip; canonicalization idempotent".into())
}

fn main() {
    let results = [
        criterion(1, "axiom suite", axiom_suite),
        criterion(2, "algebra backends", algebra_backends),
        criterion(3, "zero curvature of pure gauge", zero_curvature),
        criterion(4, "lemma identity", lemma),
        criterion(5, "tower certificates", tower),
        criterion(6, "lax pair", lax),
        criterion(7, "perturbative chiral solver", chiral_solver),
        criterion(8, "negative controls", negative_controls),
        criterion(9, "parser round trip", parser),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
