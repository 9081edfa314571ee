//! Spectral curve `P(x, eta) = D(x) det(hhat(x) - eta)` and its chart at
//! the divisor at infinity.

use num_traits::{One, Zero};

use crate::algebra::{Bivariate, Poly};
use crate::error::{Error, Result};
use crate::higgs::{polar_part, trace_residues, validate, HiggsField};
use crate::normal_form::{detect_case, Case};
use crate::{format_rational, BiPoly, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct InfinityPoint {
    pub pole: Rational,
    pub case: Case,
    pub trace_residue: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralCurve {
    /// Pole-cleared polynomial in `(x, eta)`; multiplied by exactly
    /// `D(x) = prod (x - p_i)`.
    pub p: BiPoly,
    /// `mu^n P(x, 1/mu)`.
    pub q: BiPoly,
    pub degree: usize,
    pub poles: Vec<Rational>,
    pub infinity: Vec<InfinityPoint>,
}

/// `D(x) det(hhat - eta)` without validation (any square field).
pub fn spectral_polynomial(psi: &HiggsField) -> Result<BiPoly> {
    let d = psi.pole_polynomial();
    let chi = psi.hhat().char_poly();
    let mut coeffs = Vec::with_capacity(chi.coeffs().len());
    for c in chi.coeffs() {
        let cleared = c.clone() * crate::RatFunc::from_poly(d.clone());
        if !cleared.is_polynomial() {
            return Err(Error::InvalidHiggs(format!(
                "D(x) times a coefficient of det(hhat - eta) is not polynomial: {cleared}"
            )));
        }
        coeffs.push(cleared.numer().clone());
    }
    Ok(Bivariate::from_eta_coeffs(coeffs))
}

pub fn spectral_curve(psi: &HiggsField) -> Result<SpectralCurve> {
    let report = validate(psi);
    if !report.is_valid() {
        return Err(Error::InvalidHiggs(report.to_string()));
    }
    let p = spectral_polynomial(psi)?;
    let q = p.invert_fibre();
    let mut infinity = Vec::new();
    for pole in psi.poles() {
        let pd = polar_part(psi, pole)?;
        infinity.push(InfinityPoint {
            pole: pole.clone(),
            case: detect_case(&pd)?,
            trace_residue: pd.trace_residue,
        });
    }
    Ok(SpectralCurve {
        p,
        q,
        degree: psi.rank(),
        poles: psi.poles().to_vec(),
        infinity,
    })
}

/// Reduction of the curve modulo `mu^2` at `(p, 0)`, as the ideal
/// `(r mu - (x - p), mu^2)` of the local ring, together with the order of
/// contact of the curve with the fibre `x = p` at that point.
#[derive(Clone, Debug, PartialEq)]
pub struct InfinityLaw {
    pub pole: Rational,
    /// `r` in `r mu - (x - p) = 0 mod mu^2`.
    pub r: Rational,
    /// Multiplicity of `mu = 0` as a root of `Q(p, mu)`: 1 for a point where
    /// `x` is a local coordinate, 2 for a simple branch point.
    pub contact: usize,
    pub case: Case,
}

impl InfinityLaw {
    /// `r mu - (x - p)` rendered with exact coefficients.
    pub fn display(&self) -> String {
        let shift = Poly::new(vec![-self.pole.clone(), Rational::one()]);
        let law = Bivariate::from_eta_coeffs(vec![-shift, Poly::constant(self.r.clone())]);
        format!("{} = 0 mod mu^2", law.display_with("mu"))
    }
}

/// Computes `r = -Q_1(p) / Q_0'(p)` from `Q = Q_0(x) + Q_1(x) mu + ...` and
/// checks it against the trace residue and the case of each pole.
pub fn infinity_intersection(s: &SpectralCurve) -> Result<Vec<InfinityLaw>> {
    let q0 = s.q.eta_coeff(0);
    let q1 = s.q.eta_coeff(1);
    let mut out = Vec::new();
    for pt in &s.infinity {
        let p = &pt.pole;
        let mismatch = |detail: String| Error::InfinityMismatch {
            pole: format_rational(p),
            detail,
        };
        if !q0.eval(p).is_zero() {
            return Err(mismatch("Q(p, 0) != 0: no point on D_inf over the pole".into()));
        }
        let slope = q0.derivative().eval(p);
        if slope.is_zero() {
            return Err(mismatch("Q_0 has a multiple root: pole is not simple".into()));
        }
        let r = -q1.eval(p) / slope;
        let fibre = s.q.at_x(p);
        let contact = fibre.valuation().unwrap_or(usize::MAX);
        if r != pt.trace_residue {
            return Err(mismatch(format!(
                "computed r = {} but trace residue is {}",
                format_rational(&r),
                format_rational(&pt.trace_residue)
            )));
        }
        let expected = match pt.case {
            Case::Case1 => 1,
            Case::Case2 => 2,
        };
        if contact != expected {
            return Err(mismatch(format!(
                "contact order {contact} with the fibre, expected {expected}"
            )));
        }
        out.push(InfinityLaw {
            pole: p.clone(),
            r,
            contact,
            case: pt.case,
        });
    }
    Ok(out)
}

/// `sum_i r_i + Res_inf(tr hhat)`; zero by the residue theorem.
pub fn residue_balance(psi: &HiggsField) -> Rational {
    let tr = psi.hhat().trace();
    trace_residues(psi)
        .into_iter()
        .fold(tr.residue_at_infinity(), |acc, (_, r)| acc + r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Matrix;
    use crate::{int, QMatrix, RatFunc};

    fn c(k: i64) -> RatFunc {
        RatFunc::constant(int(k))
    }

    #[test]
    fn case1_example() {
        let psi = HiggsField::new(
            vec![int(0)],
            Matrix::from_rows(vec![vec![RatFunc::simple_pole(int(0)), c(1)], vec![c(1), c(0)]]),
        )
        .unwrap();
        let s = spectral_curve(&psi).unwrap();
        assert_eq!(s.p.display(), "x*eta^2 - eta - x");
        assert_eq!(s.q.display_with("mu"), "-x*mu^2 - mu + x");
        let law = infinity_intersection(&s).unwrap();
        assert_eq!(law[0].r, int(1));
        assert_eq!(law[0].display(), "mu - x = 0 mod mu^2");
        assert_eq!(residue_balance(&psi), int(0));
    }

    #[test]
    fn case2_example() {
        let psi = HiggsField::new(
            vec![int(0)],
            Matrix::from_rows(vec![vec![c(0), c(1)], vec![RatFunc::simple_pole(int(0)), c(0)]]),
        )
        .unwrap();
        let s = spectral_curve(&psi).unwrap();
        assert_eq!(s.p.display(), "x*eta^2 - 1");
        assert_eq!(s.q.display_with("mu"), "-mu^2 + x");
        let law = infinity_intersection(&s).unwrap();
        assert_eq!((law[0].r.clone(), law[0].contact), (int(0), 2));
    }

    #[test]
    fn shifted_pole() {
        // residue [[3, 1], [0, 0]] at x = 2
        let a = QMatrix::from_rows(vec![vec![int(3), int(1)], vec![int(0), int(0)]]);
        let a0 = QMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
        let psi = HiggsField::from_residues(&[int(2)], &[a], &a0).unwrap();
        let law = infinity_intersection(&spectral_curve(&psi).unwrap()).unwrap();
        assert_eq!(law[0].display(), "3*mu - x + 2 = 0 mod mu^2");
    }

    #[test]
    fn constant_diagonal_has_no_infinity_points() {
        let psi = HiggsField::new(vec![], Matrix::from_rows(vec![vec![c(2), c(0)], vec![c(0), c(-1)]]))
            .unwrap();
        let s = spectral_curve(&psi).unwrap();
        assert_eq!(s.p.display(), "eta^2 - eta - 2");
        assert!(s.infinity.is_empty());
    }
}
