//! Quasi-local masses of rotationally symmetric Bartnik data.
//!
//! Data `(Σ, γ, H)` are sampled in the chart `γ = α(t)²dt² + β(t)²dφ²`,
//! `t ∈ [0, L]`. See [`surface::RadialProfile`].

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod cli;
pub mod critical;
pub mod embedding;
pub mod error;
pub mod exec;
pub mod format;
pub mod generators;
pub mod io;
pub mod masses;
pub mod metric_tools;
pub mod schwarzschild;
pub mod stencil;
pub mod surface;
pub mod verify;

pub use algebra::{lambda_of, star, MassFunctional};
pub use critical::{bracket, LambdaBracket};
pub use error::{Error, Result};
pub use exec::Exec;
pub use generators::{generate, GeneratorKind, GeneratorSpec};
pub use surface::{BartnikData, GeometryReport, RadialProfile};
