//! Computational toolkit for Higgs fields valued in connections on a line
//! bundle: the Poisson ruled surface they live on, their spectral curves,
//! local normal forms at rank-one poles and the integrable-system checks on
//! the Lie–Poisson phase space of residues.
//!
//! The algebra is generic over [`algebra::Ring`] / [`algebra::Field`]; the
//! aliases below fix the exact rational instantiation used throughout.

pub mod algebra;
pub mod dynamics;
pub mod error;
pub mod fixtures;
pub mod higgs;
pub mod normal_form;
pub mod spectral;
pub mod surface;

pub use algebra::ring::{format_rational, int, parse_rational, rat, Rational};
pub use error::{Error, Result};

/// Univariate polynomial with exact rational coefficients.
pub type UniPoly = algebra::Poly<Rational>;
/// Exact rational function in one variable.
pub type RatFunc = algebra::RationalFunction<Rational>;
/// Exact polynomial in `(x, eta)`.
pub type BiPoly = algebra::Bivariate<Rational>;
/// Constant exact matrix.
pub type QMatrix = algebra::Matrix<Rational>;
/// Square matrix of exact rational functions: the chart form of a Higgs field.
pub type RationalFunctionMatrix = algebra::Matrix<RatFunc>;
/// Complex double matrix for the numeric path.
pub type CMatrix = algebra::Matrix<num_complex::Complex64>;
/// Exact multivariate polynomial (observables on phase space).
pub type QPoly = algebra::MPoly<Rational>;
