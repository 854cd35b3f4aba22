use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nc_harmonic::axioms::{run_axioms, AxiomConfig};
use nc_harmonic::calculus::{Basis, HodgeTable};
use nc_harmonic::error::{Error, Result};
use nc_harmonic::expr::{parse_constant, print};
use nc_harmonic::gauge::harmonic_residual;
use nc_harmonic::grid::{sample, to_csv, GridSpec, DEFAULT_DIGITS};
use nc_harmonic::integrable::{
    build_tower, chiral_residual, lax_pair, master_residuals, solve_chiral_perturbative, solve_sigma_perturbative,
    DEFAULT_DEPTH,
};
use nc_harmonic::io::{to_json, HodgeTableJson, MatrixJson, ModelSpec, RunReport, SourceSpec, TowerJson};
use nc_harmonic::{AlgebraElement, Backend, GeneratorSeries, MatrixOverA};

#[derive(Parser)]
#[command(name = "nch", version, about = "Exact noncommutative harmonic maps: axioms, towers, Lax pairs, solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraChoice {
    Heisenberg,
    Moyal,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridOutput {
    Phi,
    Residual,
    Current,
}

#[derive(Clone, Copy, ValueEnum)]
enum Component {
    Dq,
    Dp,
}

#[derive(clap::Args)]
struct Common {
    /// Hodge table JSON replacing the standard one
    #[arg(long)]
    table: Option<PathBuf>,
    /// Artifact output file
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Randomized exact checks of the algebra and calculus axioms
    Axioms {
        #[arg(long, value_enum, default_value = "both")]
        algebra: AlgebraChoice,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        max_degree: u32,
        #[arg(long, default_value_t = 3)]
        order: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Builds the tower of conserved currents
    Tower {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        order: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Lax pair of a unitary (heisenberg) model at a spectral parameter
    Lax {
        #[arg(long)]
        model: PathBuf,
        /// e.g. 1/2, 2, 1+i, 1/2+3/4*i
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        order: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Perturbative solution of the deformed chiral equation from a phi seed
    ChiralSolve {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        order: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Perturbative sigma-model generator from an anti-hermitian seed
    SigmaSolve {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        order: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Samples a moyal model on a rectangular grid
    Grid {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        order: Option<u32>,
        #[arg(long, default_value = "0")]
        q_min: String,
        #[arg(long, default_value = "1")]
        q_max: String,
        #[arg(long, default_value = "0")]
        p_min: String,
        #[arg(long, default_value = "1")]
        p_max: String,
        #[arg(long, default_value_t = 11)]
        steps: usize,
        #[arg(long, default_value = "1")]
        hbar: String,
        #[arg(long, default_value = "1")]
        t: String,
        #[arg(long, value_enum, default_value = "phi")]
        output: GridOutput,
        /// Tower step for `--output current`
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[arg(long, value_enum, default_value = "dq")]
        component: Component,
        /// Matrix entry as `row,col`
        #[arg(long, default_value = "0,0")]
        entry: String,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: usize,
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn load_table(path: Option<&PathBuf>) -> Result<(HodgeTable, Vec<u8>)> {
    match path {
        None => Ok((HodgeTable::standard(), Vec::new())),
        Some(p) => {
            let text = read(p)?;
            let parsed: HodgeTableJson = serde_json::from_str(&text).map_err(|e| Error::Model(e.to_string()))?;
            Ok((parsed.to_table()?, text.into_bytes()))
        }
    }
}

fn load_model(path: &Path, order: Option<u32>) -> Result<(ModelSpec, Vec<u8>)> {
    let text = read(path)?;
    let mut spec = ModelSpec::from_json(&text)?;
    if let Some(k) = order {
        spec.truncation_order = k;
    }
    Ok((spec, text.into_bytes()))
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => Ok(std::fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn require_json(format: Format) -> Result<()> {
    if format == Format::Csv {
        return Err(Error::Unsupported("csv output is only available for the grid command".into()));
    }
    Ok(())
}

fn scalar_of(m: &MatrixOverA) -> Result<&AlgebraElement> {
    if m.size() != 1 {
        return Err(Error::Unsupported("this command takes a 1×1 model".into()));
    }
    Ok(m.get(0, 0))
}

/// Runs a command body; a failed check becomes a failing report entry.
fn checked<T>(report: &mut RunReport, name: &str, r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_usage() => Err(e),
        Err(e) => {
            report.check(name, false, Some(e.to_string()));
            Ok(None)
        }
    }
}

fn cmd_axioms(
    algebra: AlgebraChoice,
    trials: usize,
    seed: u64,
    max_degree: u32,
    order: u32,
    common: &Common,
) -> Result<RunReport> {
    require_json(common.format)?;
    let (table, table_bytes) = load_table(common.table.as_ref())?;
    let input = format!("axioms trials={trials} seed={seed} max_degree={max_degree} order={order}");
    let mut report = RunReport::new("axioms", &[input.as_bytes(), &table_bytes].concat());
    if trials == 0 {
        report.note("trials = 0: every check passes vacuously");
    }
    let backends = match algebra {
        AlgebraChoice::Heisenberg => vec![Backend::Heisenberg],
        AlgebraChoice::Moyal => vec![Backend::Moyal],
        AlgebraChoice::Both => vec![Backend::Heisenberg, Backend::Moyal],
    };
    for backend in backends {
        let cfg = AxiomConfig { backend, trials, seed, max_degree, order, table: table.clone() };
        for o in run_axioms(&cfg).outcomes {
            let residual =
                o.first_counterexample.map(|w| format!("{} of {} trials failed; first: {w}", o.failures, o.trials));
            report.check(format!("{backend}: {}", o.check.name()), o.failures == 0, residual);
        }
    }
    if let Some(out) = &common.out {
        std::fs::write(out, report.deterministic_json() + "\n")?;
    }
    Ok(report)
}

fn cmd_tower(model: &Path, depth: Option<usize>, order: Option<u32>, common: &Common) -> Result<RunReport> {
    require_json(common.format)?;
    let (table, table_bytes) = load_table(common.table.as_ref())?;
    let (spec, bytes) = load_model(model, order)?;
    let mut report = RunReport::new("tower", &[bytes, table_bytes].concat());
    let depth = depth.or(spec.depth).unwrap_or(DEFAULT_DEPTH);
    let Some(built) = checked(&mut report, "model", spec.build(&table))? else { return Ok(report) };
    let Some(tower) = checked(&mut report, "tower", build_tower(&built.field, depth, &table))? else {
        return Ok(report);
    };
    for c in tower.certificates() {
        report.check(format!("step {}: conservation", c.step), c.conservation.is_zero(), Some(c.conservation.render()));
        report.check(format!("step {}: closedness", c.step), c.closedness.is_zero(), Some(c.closedness.render()));
    }
    for (m, r) in master_residuals(&tower, &table)?.iter().enumerate() {
        report.check(format!("step {}: master equation", m + 1), r.is_zero(), Some(r.render()));
    }
    if depth == 0 {
        report.note("depth 0: the tower holds only the identity");
    }
    let json = to_json(&TowerJson::from_tower(&tower));
    match &common.out {
        Some(p) => std::fs::write(p, json)?,
        None => report.note(format!("tower: {}", json.trim_end())),
    }
    Ok(report)
}

fn unitary_generator(spec: &ModelSpec, table: &HodgeTable) -> Result<GeneratorSeries> {
    let built = spec.build(table)?;
    let x = built.generator.ok_or_else(|| Error::Unsupported("the model source must be of type unitary".into()))?;
    GeneratorSeries::new(scalar_of(&x)?.clone())
}

fn cmd_lax(model: &Path, lambda: &str, order: Option<u32>, common: &Common) -> Result<RunReport> {
    require_json(common.format)?;
    let (table, table_bytes) = load_table(common.table.as_ref())?;
    let lambda = parse_constant(lambda)?;
    let (spec, bytes) = load_model(model, order)?;
    let mut report = RunReport::new("lax", &[bytes, table_bytes, lambda.to_string().into_bytes()].concat());
    let Some(x) = checked(&mut report, "model", unitary_generator(&spec, &table))? else { return Ok(report) };
    let Some(pair) = checked(&mut report, "lax pair", lax_pair(&x, &lambda))? else { return Ok(report) };
    report.check("[L,M] - ih = 0", pair.is_exact(), Some(print(&pair.residual)));
    let artifact = json!({
        "lambda": lambda.to_string(),
        "L": print(&pair.l),
        "M": print(&pair.m),
        "residual": print(&pair.residual),
    });
    emit(common.out.as_ref(), &to_json(&artifact))?;
    Ok(report)
}

fn cmd_chiral(model: &Path, order: Option<u32>, common: &Common) -> Result<RunReport> {
    require_json(common.format)?;
    let (spec, bytes) = load_model(model, order)?;
    let mut report = RunReport::new("chiral-solve", &bytes);
    let SourceSpec::Phi { phi, .. } = &spec.source else {
        return Err(Error::Unsupported("chiral-solve needs a phi source holding the seed".into()));
    };
    let seed = phi.parse(spec.context())?;
    let Some(solution) = checked(&mut report, "seed", solve_chiral_perturbative(&seed, spec.truncation_order))? else {
        return Ok(report);
    };
    let residual = chiral_residual(&solution);
    report.check("chiral residual vanishes through the truncation order", residual.is_zero(), Some(residual.render()));
    let classical = solution.classical_part().map(AlgebraElement::wave_operator);
    report.check("h = 0 part solves the wave equation", classical.is_zero(), None);
    emit(common.out.as_ref(), &to_json(&json!({ "phi": MatrixJson::from_matrix(&solution) })))?;
    Ok(report)
}

fn cmd_sigma(model: &Path, order: Option<u32>, common: &Common) -> Result<RunReport> {
    require_json(common.format)?;
    let (table, table_bytes) = load_table(common.table.as_ref())?;
    let (spec, bytes) = load_model(model, order)?;
    let mut report = RunReport::new("sigma-solve", &[bytes, table_bytes].concat());
    let SourceSpec::Unitary { x, .. } = &spec.source else {
        return Err(Error::Unsupported("sigma-solve needs a unitary source holding the seed".into()));
    };
    let seed = x.parse(spec.context())?;
    let solved = solve_sigma_perturbative(scalar_of(&seed)?, spec.truncation_order, &table);
    let Some(solution) = checked(&mut report, "solver", solved)? else { return Ok(report) };
    let residual = harmonic_residual(&solution.field, &table);
    report.check(
        "harmonic residual vanishes through the truncation order",
        residual.is_zero(),
        Some(residual.render()),
    );
    let x = MatrixOverA::scalar(solution.generator.element().clone());
    emit(common.out.as_ref(), &to_json(&json!({ "X": MatrixJson::from_matrix(&x) })))?;
    Ok(report)
}

fn parse_entry(s: &str, size: usize) -> Result<(usize, usize)> {
    let bad = || Error::Model(format!("entry '{s}' is not 'row,col' inside a {size}×{size} matrix"));
    let (r, c) = s.split_once(',').ok_or_else(bad)?;
    let r: usize = r.trim().parse().map_err(|_| bad())?;
    let c: usize = c.trim().parse().map_err(|_| bad())?;
    if r >= size || c >= size {
        return Err(bad());
    }
    Ok((r, c))
}

fn parse_real(s: &str) -> Result<num_rational::BigRational> {
    let c = parse_constant(s)?;
    if !c.is_real() {
        return Err(Error::Model(format!("grid bound '{s}' must be real")));
    }
    Ok(c.re)
}

#[allow(clippy::too_many_arguments)]
fn cmd_grid(
    model: &Path,
    order: Option<u32>,
    bounds: [&str; 4],
    steps: usize,
    hbar: &str,
    t: &str,
    output: GridOutput,
    step: usize,
    component: Component,
    entry: &str,
    digits: usize,
    table: Option<&PathBuf>,
    out: Option<&PathBuf>,
    format: Format,
) -> Result<RunReport> {
    let (table, table_bytes) = load_table(table)?;
    let (spec, bytes) = load_model(model, order)?;
    let mut report = RunReport::new("grid", &[bytes, table_bytes].concat());
    if spec.algebra != Backend::Moyal {
        return Err(Error::Unsupported("grid sampling needs the moyal backend".into()));
    }
    let (i, j) = parse_entry(entry, spec.matrix_size)?;
    let grid = GridSpec {
        q_min: parse_real(bounds[0])?,
        q_max: parse_real(bounds[1])?,
        p_min: parse_real(bounds[2])?,
        p_max: parse_real(bounds[3])?,
        steps,
    };
    let (hbar, t) = (parse_constant(hbar)?, parse_constant(t)?);
    let Some(built) = checked(&mut report, "model", spec.build(&table))? else { return Ok(report) };
    let target = match output {
        GridOutput::Phi => built
            .phi
            .as_ref()
            .ok_or_else(|| Error::Unsupported("output phi needs a phi source".into()))?
            .get(i, j)
            .clone(),
        GridOutput::Residual => match &built.phi {
            Some(phi) => chiral_residual(phi).part(Basis::DqDp).get(i, j).clone(),
            None => harmonic_residual(&built.field, &table).part(Basis::DqDp).get(i, j).clone(),
        },
        GridOutput::Current => {
            let Some(tower) = checked(&mut report, "tower", build_tower(&built.field, step, &table))? else {
                return Ok(report);
            };
            let b = match component {
                Component::Dq => Basis::Dq,
                Component::Dp => Basis::Dp,
            };
            tower.currents()[step - 1].part(b).get(i, j).clone()
        }
    };
    let rows = sample(&target, &grid, &hbar, &t)?;
    let text = match format {
        Format::Csv => to_csv(&rows, digits),
        Format::Json => {
            let points: Vec<_> = rows
                .iter()
                .map(|r| json!({"q": r.q.to_string(), "p": r.p.to_string(), "value": r.value.to_string()}))
                .collect();
            to_json(&json!({ "expression": print(&target), "points": points }))
        }
    };
    emit(out, &text)?;
    report.check("sampled", true, None);
    Ok(report)
}

fn run(cli: Cli) -> Result<RunReport> {
    match cli.command {
        Command::Axioms { algebra, trials, seed, max_degree, order, common } => {
            cmd_axioms(algebra, trials, seed, max_degree, order, &common)
        }
        Command::Tower { model, depth, order, common } => cmd_tower(&model, depth, order, &common),
        Command::Lax { model, lambda, order, common } => cmd_lax(&model, &lambda, order, &common),
        Command::ChiralSolve { model, order, common } => cmd_chiral(&model, order, &common),
        Command::SigmaSolve { model, order, common } => cmd_sigma(&model, order, &common),
        Command::Grid {
            model,
            order,
            q_min,
            q_max,
            p_min,
            p_max,
            steps,
            hbar,
            t,
            output,
            step,
            component,
            entry,
            digits,
            table,
            out,
            format,
        } => {
            if matches!(output, GridOutput::Current) && step == 0 {
                return Err(Error::Model("--step starts at 1".into()));
            }
            cmd_grid(
                &model,
                order,
                [&q_min, &q_max, &p_min, &p_max],
                steps,
                &hbar,
                &t,
                output,
                step,
                component,
                &entry,
                digits,
                table.as_ref(),
                out.as_ref(),
                format,
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(cli) {
        Ok(mut report) => {
            report.finish(start.elapsed());
            let artifact_to_stdout = report.command != "axioms" && report.command != "tower";
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            if artifact_to_stdout {
                eprintln!("{text}");
            } else {
                println!("{text}");
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
