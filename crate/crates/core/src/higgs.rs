//! Connection-valued Higgs fields in chart form.
//!
//! A field is stored as `u (x) d/dx + hhat(x) dx` relative to a splitting:
//! `u` must be the identity, and `hhat` is an `n x n` matrix of rational
//! functions with simple poles on `C`.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{Matrix, Poly};
use crate::error::{Error, Result};
use crate::{format_rational, QMatrix, RatFunc, Rational, RationalFunctionMatrix, UniPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct HiggsField {
    poles: Vec<Rational>,
    hhat: RationalFunctionMatrix,
    unit: QMatrix,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolarData {
    pub pole: Rational,
    pub residue: QMatrix,
    pub rank: usize,
    pub trace_residue: Rational,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid")
        } else {
            write!(f, "invalid: {}", self.violations.join("; "))
        }
    }
}

impl HiggsField {
    /// Field with identity unit component. Poles must be distinct.
    pub fn new(poles: Vec<Rational>, hhat: RationalFunctionMatrix) -> Result<Self> {
        let n = hhat.rows();
        Self::with_unit(poles, hhat, QMatrix::identity(n))
    }

    /// Relaxed constructor allowing `u != Id`; `validate` flags it.
    pub fn with_unit(
        poles: Vec<Rational>,
        hhat: RationalFunctionMatrix,
        unit: QMatrix,
    ) -> Result<Self> {
        if !hhat.is_square() || hhat.rows() == 0 {
            return Err(Error::Dimension(format!(
                "Higgs matrix must be square and nonempty, got {}x{}",
                hhat.rows(),
                hhat.cols()
            )));
        }
        if unit.rows() != hhat.rows() || !unit.is_square() {
            return Err(Error::Dimension("unit component has the wrong size".into()));
        }
        for (i, p) in poles.iter().enumerate() {
            if poles[..i].contains(p) {
                return Err(Error::InvalidHiggs(format!(
                    "pole {} listed twice (C must be reduced)",
                    format_rational(p)
                )));
            }
        }
        Ok(HiggsField { poles, hhat, unit })
    }

    /// `hhat = sum_i A_i / (x - p_i) + A_0` with constant `A_0`.
    pub fn from_residues(poles: &[Rational], residues: &[QMatrix], constant: &QMatrix) -> Result<Self> {
        if poles.len() != residues.len() {
            return Err(Error::Dimension("one residue per pole required".into()));
        }
        let n = constant.rows();
        let mut h = constant.map(|c| RatFunc::constant(c.clone()));
        for (p, a) in poles.iter().zip(residues) {
            if a.rows() != n || a.cols() != n {
                return Err(Error::Dimension("residue has the wrong size".into()));
            }
            let pole = RatFunc::simple_pole(p.clone());
            h = h + a.map(|c| RatFunc::constant(c.clone()) * pole.clone());
        }
        Self::new(poles.to_vec(), h)
    }

    pub fn rank(&self) -> usize {
        self.hhat.rows()
    }

    pub fn poles(&self) -> &[Rational] {
        &self.poles
    }

    pub fn hhat(&self) -> &RationalFunctionMatrix {
        &self.hhat
    }

    pub fn unit(&self) -> &QMatrix {
        &self.unit
    }

    /// `D(x) = prod (x - p_i)`.
    pub fn pole_polynomial(&self) -> UniPoly {
        self.poles
            .iter()
            .fold(Poly::one(), |acc, p| acc * Poly::new(vec![-p.clone(), Rational::one()]))
    }

    /// Residues at the poles and the remainder `hhat - sum A_i/(x - p_i)`.
    pub fn decompose(&self) -> (Vec<QMatrix>, RationalFunctionMatrix) {
        let residues: Vec<QMatrix> = self.poles.iter().map(|p| self.residue_matrix(p)).collect();
        let mut rest = self.hhat.clone();
        for (p, a) in self.poles.iter().zip(&residues) {
            let pole = RatFunc::simple_pole(p.clone());
            rest = rest - a.map(|c| RatFunc::constant(c.clone()) * pole.clone());
        }
        (residues, rest)
    }

    fn residue_matrix(&self, p: &Rational) -> QMatrix {
        self.hhat.map(|r| r.residue(p))
    }

    /// `hhat(x)` in complex doubles; `None` at a pole.
    pub fn eval_complex(&self, x: Complex64) -> Option<Matrix<Complex64>> {
        let to_c = |q: &Rational| Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0);
        let mut out = Matrix::zeros(self.rank(), self.rank());
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                let r = &self.hhat[(i, j)];
                let den = r.denom().eval_with(&x, to_c);
                if den.norm() == 0.0 {
                    return None;
                }
                out[(i, j)] = r.numer().eval_with(&x, to_c) / den;
            }
        }
        Some(out)
    }
}

pub fn polar_part(psi: &HiggsField, p: &Rational) -> Result<PolarData> {
    if !psi.poles.contains(p) {
        return Err(Error::NotAPole(format_rational(p)));
    }
    let residue = psi.residue_matrix(p);
    Ok(PolarData {
        pole: p.clone(),
        rank: residue.rank(),
        trace_residue: residue.trace(),
        residue,
    })
}

/// Checks simple poles exactly on `C`, rank-one residues, identity unit.
pub fn validate(psi: &HiggsField) -> ValidationReport {
    let mut v = Vec::new();
    if psi.unit != QMatrix::identity(psi.rank()) {
        v.push("unit component is not the identity".to_string());
    }
    let d = psi.pole_polynomial();
    for i in 0..psi.rank() {
        for j in 0..psi.rank() {
            let r = &psi.hhat[(i, j)];
            if d.div_rem(r.denom()).1.is_zero() {
                continue;
            }
            for p in &psi.poles {
                let ord = r.order_at(p).unwrap_or(0);
                if ord < -1 {
                    v.push(format!(
                        "entry ({},{}) has pole order {} at {}",
                        i + 1,
                        j + 1,
                        -ord,
                        format_rational(p)
                    ));
                }
            }
            let mut stray = r.denom().clone();
            for p in &psi.poles {
                while stray.eval(p).is_zero() {
                    stray = stray.div_rem(&Poly::new(vec![-p.clone(), Rational::one()])).0;
                }
            }
            if stray.degree().unwrap_or(0) > 0 {
                v.push(format!(
                    "entry ({},{}) has poles outside C (zeros of {})",
                    i + 1,
                    j + 1,
                    stray.display("x")
                ));
            }
        }
    }
    for p in &psi.poles {
        let r = psi.residue_matrix(p).rank();
        if r != 1 {
            v.push(format!("residue at {} has rank {r}", format_rational(p)));
        }
    }
    ValidationReport { violations: v }
}

/// `[u, hhat] = 0` identically.
pub fn wedge_check(psi: &HiggsField) -> bool {
    let u = psi.unit.map(|c| RatFunc::constant(c.clone()));
    u.commutator(&psi.hhat).is_zero_matrix()
}

/// `hhat -> g hhat g^{-1}`; `g` and `g^{-1}` must be holomorphic at every pole.
pub fn gauge_transform(psi: &HiggsField, g: &RationalFunctionMatrix) -> Result<HiggsField> {
    if g.rows() != psi.rank() || !g.is_square() {
        return Err(Error::Dimension("gauge matrix has the wrong size".into()));
    }
    let det = g.det();
    if det.is_zero() {
        return Err(Error::NonInvertibleGauge("det g vanishes identically".into()));
    }
    for p in &psi.poles {
        if det.order_at(p) != Some(0) || g.entries().iter().any(|e| e.order_at(p).unwrap_or(0) < 0) {
            return Err(Error::NonInvertibleGauge(format!(
                "g is not holomorphic and invertible at {}",
                format_rational(p)
            )));
        }
    }
    let ginv = g.inverse()?;
    HiggsField::with_unit(
        psi.poles.clone(),
        g.clone() * psi.hhat.clone() * ginv,
        psi.unit.clone(),
    )
}

/// Constant gauge convenience wrapper.
pub fn gauge_constant(psi: &HiggsField, g: &QMatrix) -> Result<HiggsField> {
    gauge_transform(psi, &g.map(|c| RatFunc::constant(c.clone())))
}

/// Changes the trivialization of `L` by `ell`: `hhat -> hhat + (d log ell) Id`.
pub fn retrivialize_l(psi: &HiggsField, ell: &RatFunc) -> Result<HiggsField> {
    if ell.is_zero() {
        return Err(Error::NonInvertibleGauge("ell vanishes identically".into()));
    }
    let n = psi.rank();
    let shift = RationalFunctionMatrix::identity(n).scale(&ell.log_derivative());
    HiggsField::with_unit(psi.poles.clone(), psi.hhat.clone() + shift, psi.unit.clone())
}

pub fn trace_residues(psi: &HiggsField) -> Vec<(Rational, Rational)> {
    psi.poles
        .iter()
        .map(|p| (p.clone(), psi.residue_matrix(p).trace()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{int, rat};

    fn rf(num: &[i64], den: &[i64]) -> RatFunc {
        RatFunc::new(
            Poly::new(num.iter().map(|&c| int(c)).collect()),
            Poly::new(den.iter().map(|&c| int(c)).collect()),
        )
    }

    fn inv_x() -> RatFunc {
        rf(&[1], &[0, 1])
    }

    fn c(k: i64) -> RatFunc {
        RatFunc::constant(int(k))
    }

    #[test]
    fn polar_data_examples() {
        let psi = HiggsField::new(
            vec![int(0)],
            Matrix::from_rows(vec![vec![inv_x(), c(1)], vec![c(1), c(0)]]),
        )
        .unwrap();
        let pd = polar_part(&psi, &int(0)).unwrap();
        assert_eq!(pd.residue, QMatrix::from_rows(vec![vec![int(1), int(0)], vec![int(0), int(0)]]));
        assert_eq!((pd.rank, pd.trace_residue.clone()), (1, int(1)));
        assert!(validate(&psi).is_valid());
        assert!(matches!(polar_part(&psi, &int(3)), Err(Error::NotAPole(_))));
    }

    #[test]
    fn validation_catches_violations() {
        let double = HiggsField::new(
            vec![int(0)],
            Matrix::from_rows(vec![vec![rf(&[1], &[0, 0, 1]), c(0)], vec![c(0), c(0)]]),
        )
        .unwrap();
        let rep = validate(&double);
        assert!(rep.violations.iter().any(|s| s.contains("pole order 2")), "{rep}");
        let rank2 = HiggsField::new(
            vec![int(0)],
            Matrix::from_rows(vec![vec![inv_x(), c(0)], vec![c(0), inv_x()]]),
        )
        .unwrap();
        assert!(validate(&rank2).violations.iter().any(|s| s.contains("rank 2")));
        let stray = HiggsField::new(
            vec![int(0)],
            Matrix::from_rows(vec![vec![inv_x(), rf(&[1], &[-1, 1])], vec![c(0), c(0)]]),
        )
        .unwrap();
        assert!(!validate(&stray).is_valid());
    }

    #[test]
    fn wedge_with_relaxed_unit() {
        let nil = Matrix::from_rows(vec![vec![c(0), c(1)], vec![c(0), c(0)]]);
        let u = QMatrix::diagonal(&[int(1), int(2)]);
        let psi = HiggsField::with_unit(vec![], nil, u.clone()).unwrap();
        assert!(!wedge_check(&psi));
        let diag = Matrix::from_rows(vec![vec![inv_x(), c(0)], vec![c(0), c(3)]]);
        assert!(wedge_check(&HiggsField::with_unit(vec![int(0)], diag, u).unwrap()));
    }

    #[test]
    fn retrivialization_adds_log_derivative() {
        let psi = HiggsField::from_residues(
            &[int(0), int(1)],
            &[
                QMatrix::from_rows(vec![vec![int(2), int(0)], vec![int(0), int(0)]]),
                QMatrix::from_rows(vec![vec![int(-1), int(-1)], vec![int(1), int(-1)]]),
            ],
            &QMatrix::zeros(2, 2),
        )
        .unwrap();
        assert_eq!(trace_residues(&psi), vec![(int(0), int(2)), (int(1), int(-2))]);
        let ell = RatFunc::from_poly(Poly::new(vec![int(-5), int(1)]));
        let shifted = retrivialize_l(&psi, &ell).unwrap();
        assert_eq!(
            shifted.hhat()[(1, 1)].clone() - psi.hhat()[(1, 1)].clone(),
            RatFunc::simple_pole(int(5))
        );
        assert_eq!(trace_residues(&shifted), trace_residues(&psi));
        let same = retrivialize_l(&psi, &RatFunc::constant(rat(7, 3))).unwrap();
        assert_eq!(same, psi);
    }

    #[test]
    fn decomposition_recovers_constant() {
        let a0 = QMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        let a1 = QMatrix::from_rows(vec![vec![int(3), int(-2)], vec![int(0), int(0)]]);
        let psi = HiggsField::from_residues(&[int(0)], std::slice::from_ref(&a1), &a0).unwrap();
        let (res, rest) = psi.decompose();
        assert_eq!(res, vec![a1]);
        assert_eq!(rest, a0.map(|q| RatFunc::constant(q.clone())));
    }
}
