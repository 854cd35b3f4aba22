//! Exact noncommutative differential calculi in two dimensions with a
//! Hodge operator, and the integrable generalized harmonic maps built on
//! them.
//!
//! Coefficients live in `ℚ(i)[ħ, t]/(t^{K+1})`: ħ is a formal central
//! parameter and t a deformation/amplitude parameter truncated at order K,
//! so every identity is checked as an exact zero.
//!
//! Two coordinate algebras are provided:
//! - [`Backend::Heisenberg`]: `[q, p] = iħ`, words kept in normal order;
//! - [`Backend::Moyal`]: polynomial symbols with the Moyal star product.

pub mod algebra;
pub mod axioms;
pub mod calculus;
pub mod error;
pub mod expr;
pub mod gauge;
pub mod grid;
pub mod integrable;
pub mod io;
pub mod matrix;
pub mod random;
pub mod scalar;

pub use algebra::{AlgebraElement, Backend, Context, Direction, GeneratorSeries};
pub use calculus::{inner_product, Basis, Form, HodgeTable};
pub use error::{Error, Result};
pub use gauge::{GaugeField, GeneralizedInversePair, Provenance};
pub use matrix::MatrixOverA;
pub use scalar::{GaussianRational, ScalarPoly};
