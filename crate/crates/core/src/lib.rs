//! Exact algebra for orthogonal polynomials on linear lattices.

pub mod atomic;
pub mod classify;
pub mod error;
pub mod lattice;
pub mod locus;
pub mod moments;
pub mod oracle;
pub mod pearson;
pub mod poly;
pub mod recurrence;
pub mod scalar;

pub use error::Error;
pub use lattice::LinearLattice;
pub use pearson::{Form, PearsonPair};
pub use poly::{ParamPoly, Poly, Polynomial, Ring};
pub use scalar::{GaussianRational, Rational};
