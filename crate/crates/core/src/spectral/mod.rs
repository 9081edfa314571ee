//! Spectral curves of Higgs fields and the data attached to them.

pub mod curve;
pub mod divisor;
pub mod lattice;
pub mod monodromy;
pub mod reconstruct;
pub mod smooth;

use std::fmt;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::{format_rational, Rational};

pub use curve::{infinity_intersection, spectral_curve, InfinityLaw, InfinityPoint, SpectralCurve};
pub use divisor::{cokernel_divisor, DivisorPoint, SpectralData};
pub use lattice::{pushdown_lattices, LatticeSheaf};
pub use reconstruct::reconstruct;
pub use smooth::{genus, smoothness_check, GenusReport, SmoothnessReport};

/// A coordinate that is exact when rational and a complex double otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Approx(Complex64),
}

impl Value {
    pub fn to_complex(&self) -> Complex64 {
        match self {
            Value::Exact(q) => Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0),
            Value::Approx(z) => *z,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) => write!(f, "{}", format_rational(q)),
            Value::Approx(z) if z.im == 0.0 => write!(f, "{:.12e}", z.re),
            Value::Approx(z) => write!(f, "{:.12e}{:+.12e}i", z.re, z.im),
        }
    }
}
