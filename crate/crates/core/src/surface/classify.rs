//! Poisson ruled surfaces `P(V)` over a curve of genus `g`: which divisors a
//! Poisson tensor can have.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BundleDescription {
    /// `V = L + O`; a negative degree is normalized by swapping summands.
    Split { degree: i64 },
    /// `V = J^1(L) (x) L^*`, the non-split extension of `O` by `K_X`.
    Extension { degree: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SurfaceCase {
    Split,
    NontrivialExtension,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PoissonDivisor {
    /// `2E + pi^*(D')`, `D'` effective with the recorded degree.
    TwoEPlusFibres { fibre_degree: i64 },
    /// `E + E'`.
    EPlusEPrime,
    /// `E + E' + pi^*(D'')`.
    EPlusEPrimePlusFibres { fibre_degree: i64 },
    /// `2E`.
    TwoE,
}

impl fmt::Display for PoissonDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PoissonDivisor::TwoEPlusFibres { fibre_degree } if *fibre_degree == 0 => {
                write!(f, "2E")
            }
            PoissonDivisor::TwoEPlusFibres { fibre_degree } => {
                write!(f, "2E+pi*(D'), deg D' = {fibre_degree}")
            }
            PoissonDivisor::EPlusEPrime => write!(f, "E+E'"),
            PoissonDivisor::EPlusEPrimePlusFibres { fibre_degree } => {
                write!(f, "E+E'+pi*(D''), deg D'' = {fibre_degree}")
            }
            PoissonDivisor::TwoE => write!(f, "2E"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceClass {
    pub case: SurfaceCase,
    pub genus: u32,
    /// Degree of `L` after normalization.
    pub degree: i64,
    pub divisors: Vec<PoissonDivisor>,
    pub notes: Vec<String>,
}

pub fn classify_ruled_poisson(genus: u32, bundle: BundleDescription) -> Result<SurfaceClass> {
    let g = genus as i64;
    match bundle {
        BundleDescription::Split { degree } => {
            let d = degree.abs();
            let mut notes = Vec::new();
            if degree < 0 {
                notes.push(format!("normalized L + O with deg L = {degree} to deg {d}"));
            }
            let divisors = match genus {
                0 => vec![
                    PoissonDivisor::TwoEPlusFibres { fibre_degree: d + 2 },
                    PoissonDivisor::EPlusEPrimePlusFibres { fibre_degree: 2 },
                ],
                1 if d == 0 => {
                    notes.push("2E is also possible when L is trivial (L = K_X)".into());
                    vec![PoissonDivisor::EPlusEPrime]
                }
                _ => {
                    // L = K_X(D) with D effective.
                    let fibre_degree = d - (2 * g - 2);
                    if fibre_degree < 0 {
                        return Err(Error::InconsistentSurface(format!(
                            "split case needs L = K_X(D) with D >= 0, i.e. deg L >= {}, got {d}",
                            2 * g - 2
                        )));
                    }
                    vec![PoissonDivisor::TwoEPlusFibres { fibre_degree }]
                }
            };
            Ok(SurfaceClass {
                case: SurfaceCase::Split,
                genus,
                degree: d,
                divisors,
                notes,
            })
        }
        BundleDescription::Extension { degree } => {
            if genus == 0 {
                return Err(Error::InconsistentSurface(
                    "the non-split extension case needs g >= 1; on P^1 the extension of O by \
                     K_X is O(-1)+O(-1), so P(V) = P(O+O) falls under the split case"
                        .into(),
                ));
            }
            if degree == 0 {
                return Err(Error::InconsistentSurface(
                    "J^1(L) (x) L^* splits when deg L = 0; the extension case needs deg L != 0"
                        .into(),
                ));
            }
            Ok(SurfaceClass {
                case: SurfaceCase::NontrivialExtension,
                genus,
                degree,
                divisors: vec![PoissonDivisor::TwoE],
                notes: Vec::new(),
            })
        }
    }
}
