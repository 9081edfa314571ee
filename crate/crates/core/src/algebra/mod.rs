//! Exact-arithmetic kernel: rationals, polynomials, rational functions,
//! matrices, resultants, Laurent jets and Sylvester solves.

pub mod bivariate;
pub mod laurent;
pub mod matrix;
pub mod mpoly;
pub mod poly;
pub mod ratfunc;
pub mod resultant;
pub mod ring;
pub mod roots;

pub use bivariate::Bivariate;
pub use laurent::{LaurentJet, MatrixJet};
pub use matrix::Matrix;
pub use mpoly::MPoly;
pub use poly::Poly;
pub use ratfunc::RationalFunction;
pub use resultant::resultant;
pub use ring::{format_rational, int, parse_rational, rat, Field, Numeric, Rational, Ring};
