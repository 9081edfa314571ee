//! JSON scene files. Exact data travels as strings (`"3/2"`, `"(x-2)/x"`);
//! only numeric tuning options are JSON numbers.

use std::collections::BTreeMap;

use lconn::algebra::Matrix;
use lconn::dynamics::PhasePoint;
use lconn::higgs::HiggsField;
use lconn::surface::{build_torsor, BaseAtlas, BundleDescription, LineBundleCocycle, TorsorAtlas};
use lconn::{parse_rational, QMatrix, RatFunc, Rational, RationalFunctionMatrix};
use serde::{Deserialize, Serialize};

use crate::expr::parse_expr;
use crate::CliError;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line_bundle: Option<LineBundleInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torsor: Option<TorsorInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<SurfaceInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub poles: Vec<String>,
    /// Full chart matrix, entries are expressions in `x`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hhat: Option<Vec<Vec<String>>>,
    /// Alternative to `hhat`: one rational matrix per pole plus a constant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residues: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseInput {
    pub genus: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub charts: Vec<String>,
    /// Keys `"a,b"`; the value writes chart `b`'s coordinate in chart `a`'s.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub transitions: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineBundleInput {
    /// `g_01` on the standard P^1 atlas.
    pub transition: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsorInput {
    /// `sigma_01`, holomorphic on C*.
    pub shift: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceInput {
    pub bundle: BundleDescription,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jet_order: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flow_t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flow_dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gauges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub promote_constant: Option<bool>,
}

impl Options {
    /// Fields set in `over` win.
    pub fn merged(&self, over: &Options) -> Options {
        Options {
            jet_order: over.jet_order.or(self.jet_order),
            tol: over.tol.or(self.tol),
            flow_t: over.flow_t.or(self.flow_t),
            flow_dt: over.flow_dt.or(self.flow_dt),
            seed: over.seed.or(self.seed),
            step: over.step.or(self.step),
            gauges: over.gauges.or(self.gauges),
            promote_constant: over.promote_constant.or(self.promote_constant),
        }
    }
}

fn rational(s: &str, at: impl Fn() -> String) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Parse { location: at(), message: e })
}

fn expression(s: &str, at: impl Fn() -> String) -> Result<RatFunc, CliError> {
    parse_expr(s).map_err(|e| CliError::Parse { location: format!("{}, column {}", at(), e.offset + 1), message: e.message })
}

fn rational_matrix(rows: &[Vec<String>], at: &str) -> Result<QMatrix, CliError> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Parse { location: at.into(), message: "matrix is not square".into() });
    }
    let mut m = Matrix::zeros(n, n);
    for (a, row) in rows.iter().enumerate() {
        for (b, s) in row.iter().enumerate() {
            m[(a, b)] = rational(s, || format!("{at}[{a}][{b}]"))?;
        }
    }
    Ok(m)
}

impl SceneFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })
    }

    pub fn genus(&self) -> u32 {
        self.base.as_ref().map_or(0, |b| b.genus)
    }

    pub fn base_atlas(&self) -> Result<BaseAtlas, CliError> {
        let Some(desc) = &self.base else {
            return Ok(BaseAtlas::projective_line());
        };
        if desc.charts.is_empty() {
            return Ok(if desc.genus == 0 { BaseAtlas::projective_line() } else { BaseAtlas::label_only(desc.genus) });
        }
        let mut transitions = BTreeMap::new();
        for (key, value) in &desc.transitions {
            let at = || format!("base.transitions[{key:?}]");
            let parsed = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)));
            let Some(pair) = parsed else {
                return Err(CliError::Parse { location: at(), message: "key must be \"a,b\"".into() });
            };
            transitions.insert(pair, expression(value, at)?);
        }
        Ok(BaseAtlas::new(desc.genus, desc.charts.clone(), transitions)?)
    }

    /// The torsor of connections from `torsor.shift` or `line_bundle`.
    pub fn torsor(&self) -> Result<(TorsorAtlas, Option<i64>), CliError> {
        let base = self.base_atlas()?;
        if !base.is_standard_p1() {
            return Err(lconn::Error::UnsupportedAtlas(
                "exact torsor computations need the two-chart P^1 atlas".into(),
            )
            .into());
        }
        match (&self.torsor, &self.line_bundle) {
            (Some(t), None) => {
                let sigma = expression(&t.shift, || "torsor.shift".into())?;
                Ok((TorsorAtlas::from_shift_p1(sigma)?, None))
            }
            (None, Some(l)) => {
                let g = expression(&l.transition, || "line_bundle.transition".into())?;
                let cocycle = LineBundleCocycle::on_p1(g, l.degree)?;
                Ok((build_torsor(&cocycle)?, Some(l.degree)))
            }
            (Some(_), Some(_)) => Err(CliError::Parse {
                location: "scene".into(),
                message: "give either torsor or line_bundle, not both".into(),
            }),
            (None, None) => Err(CliError::Parse {
                location: "scene".into(),
                message: "missing torsor or line_bundle".into(),
            }),
        }
    }

    pub fn poles(&self) -> Result<Vec<Rational>, CliError> {
        self.poles
            .iter()
            .enumerate()
            .map(|(i, s)| rational(s, || format!("poles[{i}]")))
            .collect()
    }

    pub fn higgs(&self) -> Result<HiggsField, CliError> {
        let poles = self.poles()?;
        let psi = match (&self.hhat, &self.residues) {
            (Some(rows), None) => {
                let n = rows.len();
                if rows.iter().any(|r| r.len() != n) {
                    return Err(CliError::Parse { location: "hhat".into(), message: "matrix is not square".into() });
                }
                let mut h: RationalFunctionMatrix = Matrix::zeros(n, n);
                for (a, row) in rows.iter().enumerate() {
                    for (b, s) in row.iter().enumerate() {
                        h[(a, b)] = expression(s, || format!("hhat[{a}][{b}]"))?;
                    }
                }
                if self.constant.is_some() {
                    return Err(CliError::Parse {
                        location: "constant".into(),
                        message: "constant only accompanies residues".into(),
                    });
                }
                HiggsField::new(poles, h)?
            }
            (None, Some(res)) => {
                if res.len() != poles.len() {
                    return Err(CliError::Parse {
                        location: "residues".into(),
                        message: format!("{} residues for {} poles", res.len(), poles.len()),
                    });
                }
                let residues = res
                    .iter()
                    .enumerate()
                    .map(|(i, r)| rational_matrix(r, &format!("residues[{i}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                let n = residues.first().map_or(0, |r| r.rows());
                let constant = match &self.constant {
                    Some(c) => rational_matrix(c, "constant")?,
                    None => Matrix::zeros(n, n),
                };
                HiggsField::from_residues(&poles, &residues, &constant)?
            }
            (Some(_), Some(_)) => {
                return Err(CliError::Parse {
                    location: "scene".into(),
                    message: "give either hhat or residues, not both".into(),
                })
            }
            (None, None) => {
                return Err(CliError::Parse { location: "scene".into(), message: "missing hhat or residues".into() })
            }
        };
        if let Some(n) = self.rank {
            if n != psi.rank() {
                return Err(CliError::Parse {
                    location: "rank".into(),
                    message: format!("declared rank {n}, matrix is {}x{}", psi.rank(), psi.rank()),
                });
            }
        }
        Ok(psi)
    }

    pub fn phase_point(&self) -> Result<PhasePoint, CliError> {
        Ok(PhasePoint::from_higgs(&self.higgs()?)?)
    }

    pub fn bundle(&self) -> Result<BundleDescription, CliError> {
        self.surface
            .as_ref()
            .map(|s| s.bundle)
            .ok_or_else(|| CliError::Parse { location: "scene".into(), message: "missing surface".into() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_fields() {
        let err = SceneFile::from_json(r#"{"poles": ["0"], "colour": 1}"#).unwrap_err();
        assert!(err.to_string().contains("unknown field"));
    }

    #[test]
    fn builds_fields_both_ways() {
        let a = SceneFile::from_json(r#"{"poles": ["0"], "hhat": [["1/x", "1"], ["1", "0"]]}"#).unwrap();
        let b = SceneFile::from_json(
            r#"{"poles": ["0"], "residues": [[["1", "0"], ["0", "0"]]], "constant": [["0", "1"], ["1", "0"]]}"#,
        )
        .unwrap();
        assert_eq!(a.higgs().unwrap(), b.higgs().unwrap());
    }

    #[test]
    fn bad_rational_is_a_located_parse_error() {
        let s = SceneFile::from_json(r#"{"poles": ["1/0"], "hhat": [["x"]]}"#).unwrap();
        match s.higgs().unwrap_err() {
            CliError::Parse { location, .. } => assert_eq!(location, "poles[0]"),
            e => panic!("unexpected {e}"),
        }
    }
}
