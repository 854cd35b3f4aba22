//! JSON model files, form/tower serialization and run reports.

use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{AlgebraElement, Backend, Context};
use crate::calculus::{Basis, Form, HodgeTable};
use crate::error::{Error, Result};
use crate::expr::{parse, parse_constant, print};
use crate::gauge::{GaugeField, GeneralizedInversePair};
use crate::integrable::{solve_chiral_perturbative, solve_sigma_perturbative, Tower};
use crate::matrix::MatrixOverA;

/// A matrix of expressions. A bare string is read as a 1×1 matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixJson {
    Entry(String),
    Rows(Vec<Vec<String>>),
}

impl MatrixJson {
    pub fn parse(&self, ctx: Context) -> Result<MatrixOverA> {
        let rows = match self {
            MatrixJson::Entry(s) => vec![vec![parse(s, ctx)?]],
            MatrixJson::Rows(rows) => rows
                .iter()
                .map(|r| r.iter().map(|s| parse(s, ctx)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        };
        MatrixOverA::from_rows(ctx, rows).map_err(|e| Error::Model(e.to_string()))
    }

    pub fn from_matrix(m: &MatrixOverA) -> Self {
        MatrixJson::Rows(m.rows().map(|r| r.iter().map(print).collect()).collect())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg0: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dq: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dp: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dqdp: Option<MatrixJson>,
}

impl FormJson {
    fn slots(&self) -> [&Option<MatrixJson>; 4] {
        [&self.deg0, &self.dq, &self.dp, &self.dqdp]
    }

    pub fn parse(&self, ctx: Context, size: usize) -> Result<Form> {
        let mut parts = Vec::with_capacity(4);
        for slot in self.slots() {
            let m = match slot {
                Some(j) => j.parse(ctx)?,
                None => MatrixOverA::zero(ctx, size),
            };
            if m.size() != size {
                return Err(Error::Model(format!("form component of size {} in a model of size {size}", m.size())));
            }
            parts.push(m);
        }
        Form::from_parts(parts.try_into().expect("four parts"))
    }

    /// Zero components are omitted.
    pub fn from_form(f: &Form) -> Self {
        let enc = |b: Basis| {
            let m = f.part(b);
            (!m.is_zero()).then(|| MatrixJson::from_matrix(m))
        };
        FormJson { deg0: enc(Basis::One), dq: enc(Basis::Dq), dp: enc(Basis::Dp), dqdp: enc(Basis::DqDp) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum SourceSpec {
    /// `U = exp(tX)`; with `perturbative`, `X` is the seed `X₁` of the
    /// sigma-model solver.
    Unitary {
        #[serde(rename = "X")]
        x: MatrixJson,
        #[serde(default)]
        perturbative: bool,
    },
    /// `A = ★d(φ†)`; with `perturbative`, `phi` is the first-order seed of
    /// the chiral solver.
    Phi {
        phi: MatrixJson,
        #[serde(default)]
        perturbative: bool,
    },
    Raw {
        #[serde(rename = "A")]
        a: FormJson,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub algebra: Backend,
    pub matrix_size: usize,
    pub truncation_order: u32,
    pub source: SourceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

impl ModelSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Model(e.to_string()))
    }

    pub fn context(&self) -> Context {
        Context::new(self.algebra, self.truncation_order)
    }

    /// Resolves the source into a gauge field, running the perturbative
    /// solvers where requested.
    pub fn build(&self, table: &HodgeTable) -> Result<Model> {
        let ctx = self.context();
        if self.matrix_size == 0 {
            return Err(Error::Model("matrix_size must be positive".into()));
        }
        let sized = |m: MatrixOverA| {
            if m.size() == self.matrix_size {
                Ok(m)
            } else {
                Err(Error::Model(format!("matrix of size {} in a model of size {}", m.size(), self.matrix_size)))
            }
        };
        let (field, phi, generator) = match &self.source {
            SourceSpec::Unitary { x, perturbative: false } => {
                let x = sized(x.parse(ctx)?)?;
                let pair = GeneralizedInversePair::from_matrix_generator(&x)?;
                (GaugeField::pure_gauge(&pair), None, Some(x))
            }
            SourceSpec::Unitary { x, perturbative: true } => {
                let x = sized(x.parse(ctx)?)?;
                if x.size() != 1 {
                    return Err(Error::Unsupported("the sigma-model solver takes a scalar seed".into()));
                }
                let sol = solve_sigma_perturbative(x.get(0, 0), self.truncation_order, table)?;
                let x = MatrixOverA::scalar(sol.generator.element().clone());
                (sol.field, None, Some(x))
            }
            SourceSpec::Phi { phi, perturbative } => {
                let mut phi = sized(phi.parse(ctx)?)?;
                if *perturbative {
                    phi = solve_chiral_perturbative(&phi, self.truncation_order)?;
                }
                (GaugeField::from_phi(&phi, table), Some(phi), None)
            }
            SourceSpec::Raw { a } => (GaugeField::raw(a.parse(ctx, self.matrix_size)?)?, None, None),
        };
        Ok(Model { field, phi, generator })
    }
}

/// A model after its source has been resolved.
#[derive(Clone, Debug)]
pub struct Model {
    pub field: GaugeField,
    pub phi: Option<MatrixOverA>,
    /// Generator `X` of `U = exp(tX)` for unitary sources.
    pub generator: Option<MatrixOverA>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub step: usize,
    pub conservation: String,
    pub closedness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerJson {
    pub depth: usize,
    pub chi: Vec<MatrixJson>,
    #[serde(rename = "J")]
    pub j: Vec<FormJson>,
    pub certificates: Vec<CertificateJson>,
}

impl TowerJson {
    pub fn from_tower(t: &Tower) -> Self {
        TowerJson {
            depth: t.depth(),
            chi: t.chis().iter().map(MatrixJson::from_matrix).collect(),
            j: t.currents().iter().map(FormJson::from_form).collect(),
            certificates: t
                .certificates()
                .iter()
                .map(|c| CertificateJson {
                    step: c.step,
                    conservation: c.conservation.render(),
                    closedness: c.closedness.render(),
                })
                .collect(),
        }
    }
}

/// Hodge table as strings: `star[i]` is the image of basis `i` in the basis
/// order `1, dq, dp, dqdp`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HodgeTableJson {
    pub star: [[String; 4]; 4],
    pub epsilons: [String; 3],
}

impl HodgeTableJson {
    pub fn from_table(t: &HodgeTable) -> Self {
        HodgeTableJson {
            star: std::array::from_fn(|i| std::array::from_fn(|j| t.star[i][j].to_string())),
            epsilons: std::array::from_fn(|r| t.epsilons[r].to_string()),
        }
    }

    pub fn to_table(&self) -> Result<HodgeTable> {
        let mut t = HodgeTable::standard();
        for i in 0..4 {
            for j in 0..4 {
                t.star[i][j] = parse_constant(&self.star[i][j])?;
            }
        }
        for r in 0..3 {
            t.epsilons[r] = parse_constant(&self.epsilons[r])?;
        }
        Ok(t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub checks: Vec<CheckReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub wall_time_seconds: f64,
}

impl RunReport {
    pub fn new(command: &str, input: &[u8]) -> Self {
        RunReport {
            command: command.into(),
            input_digest: digest(input),
            checks: Vec::new(),
            notes: Vec::new(),
            wall_time_seconds: 0.0,
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, residual: Option<String>) {
        self.checks.push(CheckReport { name: name.into(), passed, residual });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn finish(&mut self, elapsed: Duration) {
        self.wall_time_seconds = elapsed.as_secs_f64();
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// JSON without the wall time, identical across runs with the same input.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Some(o) = v.as_object_mut() {
            o.remove("wall_time_seconds");
        }
        serde_json::to_string_pretty(&v).expect("report serializes")
    }
}

/// Lowercase hex SHA-256.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Pretty JSON of a serializable artifact with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifact serializes");
    s.push('\n');
    s
}

/// Parses `element` back and compares: every printed artifact must re-read
/// to the same value.
pub fn round_trips(x: &AlgebraElement) -> bool {
    parse(&print(x), x.ctx()).is_ok_and(|y| &y == x)
}
