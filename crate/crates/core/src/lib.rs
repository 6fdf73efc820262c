//! Non-commuting graphs of finite groups.
//!
//! Builds concrete finite groups, their non-commuting graphs, and exact
//! adjacency and Laplacian spectra. Energies are compared exactly whenever
//! the eigenvalues allow it.

pub mod closed_forms;
pub mod compare;
pub mod error;
pub mod groups;
pub mod integral_families;
pub mod matrix;
pub mod numtheory;
pub mod poly;
pub mod scalar;
pub mod ncgraph;
pub mod oracle;
pub mod spectra;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use poly::{IntPoly, Poly, RatPoly};
pub use scalar::{RealScalar, Ring};

pub type Integer = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;
pub type IntegerMatrix = Matrix<i64>;
pub type RealMatrix = Matrix<f64>;
