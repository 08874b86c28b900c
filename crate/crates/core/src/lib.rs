//! Separation of variables for elliptic integrable models: theta kernels,
//! the elliptic Gaudin system, difference-operator representations of the
//! elliptic quantum group and the antiperiodic IRF model.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod contour;
pub mod eqg;
pub mod error;
pub mod gaudin;
pub mod irf;
pub mod jet;
pub mod linalg;
pub mod newton;
pub mod params;
pub mod report;
pub mod sample;
pub mod spaces;
pub mod suite;
pub mod theta;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
