//! Rank-two inverse map: from a spectral curve and a Mumford pair `(u, v)`
//! back to a Higgs field whose cokernel divisor is `(u, v)`.

use num_traits::Zero;

use super::curve::SpectralCurve;
use super::divisor::{curve_residual, SpectralData};
use crate::algebra::{Matrix, Poly};
use crate::error::{Error, Result};
use crate::higgs::HiggsField;
use crate::{RatFunc, UniPoly};

/// `P(x, v(x))` as a polynomial in `x`.
fn substitute(p: &crate::BiPoly, v: &UniPoly) -> UniPoly {
    let mut acc = Poly::zero();
    for c in p.eta_coeffs().iter().rev() {
        acc = acc * v.clone() + c.clone();
    }
    acc
}

pub fn reconstruct(curve: &SpectralCurve, data: &SpectralData) -> Result<HiggsField> {
    if curve.degree != 2 {
        return Err(Error::Dimension(format!(
            "reconstruction is implemented for rank 2, got {}",
            curve.degree
        )));
    }
    let (u, v) = data
        .mumford
        .as_ref()
        .ok_or_else(|| Error::InconsistentDivisor("no exact (u, v) pair".into()))?;
    if !curve_residual(&curve.p, u, v).is_zero() {
        return Err(Error::InconsistentDivisor("u does not divide P(x, v(x))".into()));
    }
    let d = curve.p.eta_coeff(2);
    let trace = RatFunc::new(-curve.p.eta_coeff(1), d.clone());
    let (c, r) = substitute(&curve.p, v).div_rem(u);
    debug_assert!(r.is_zero());
    let v_rf = RatFunc::from_poly(v.clone());
    let hhat = Matrix::from_rows(vec![
        vec![v_rf.clone(), RatFunc::new(u.clone(), d)],
        vec![RatFunc::from_poly(-c), trace - v_rf],
    ]);
    HiggsField::new(curve.poles.clone(), hhat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{cokernel_divisor, spectral_curve};
    use crate::{int, rat};

    #[test]
    fn round_trip_single_point() {
        let b = RatFunc::new(Poly::new(vec![int(-2), int(1)]), Poly::x());
        let psi = HiggsField::new(
            vec![int(0)],
            Matrix::from_rows(vec![
                vec![RatFunc::simple_pole(int(0)) * RatFunc::constant(int(3)), b],
                vec![RatFunc::constant(int(1)), RatFunc::zero()],
            ]),
        )
        .unwrap();
        let data = cokernel_divisor(&psi).unwrap();
        let back = reconstruct(&data.curve, &data).unwrap();
        assert_eq!(spectral_curve(&back).unwrap().p, data.curve.p);
        assert_eq!(cokernel_divisor(&back).unwrap().mumford, data.mumford);
        assert_eq!(data.points[0].eta, super::super::Value::Exact(rat(3, 2)));
    }

    #[test]
    fn rejects_off_curve_pair() {
        let b = RatFunc::new(Poly::new(vec![int(-2), int(1)]), Poly::x());
        let psi = HiggsField::new(
            vec![int(0)],
            Matrix::from_rows(vec![
                vec![RatFunc::simple_pole(int(0)), b],
                vec![RatFunc::constant(int(1)), RatFunc::zero()],
            ]),
        )
        .unwrap();
        let mut data = cokernel_divisor(&psi).unwrap();
        data.mumford = Some((Poly::new(vec![int(-2), int(1)]), Poly::constant(int(7))));
        assert!(matches!(
            reconstruct(&data.curve.clone(), &data),
            Err(Error::InconsistentDivisor(_))
        ));
    }
}
