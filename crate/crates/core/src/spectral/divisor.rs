//! The divisor of the cokernel section: points `(x_k, eta_k)` where the
//! covector `e_1^T` is a left eigenvector of `hhat`.
//!
//! For `n = 2` this is the classical recipe: `x_k` are the zeros of the
//! `(1,2)` entry and `eta_k = hhat_11(x_k)`, stored exactly in Mumford form
//! `(u, v)` with `u` monic and `v = hhat_11 mod u`. For `n >= 3` the points
//! are the zeros of `det[e_n, hhat e_n, ..., hhat^{n-1} e_n]`, computed in
//! complex doubles.

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::curve::{spectral_curve, SpectralCurve};
use super::monodromy::{distinct_complex_roots, fibre_at};
use super::Value;
use crate::algebra::roots::{complex_roots, rational_roots};
use crate::algebra::{Matrix, Poly};
use crate::error::{Error, Result};
use crate::higgs::HiggsField;
use crate::{BiPoly, RatFunc, Rational, RationalFunctionMatrix, UniPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct DivisorPoint {
    pub x: Value,
    pub eta: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    pub curve: SpectralCurve,
    pub points: Vec<DivisorPoint>,
    /// `(u, v)` for `n = 2`.
    pub mumford: Option<(UniPoly, UniPoly)>,
    /// Number of points counted with multiplicity (`deg u`).
    pub degree: usize,
}

/// `P(x, v(x)) mod u`: zero exactly when every point of `(u, v)` is on the curve.
pub fn curve_residual(p: &BiPoly, u: &UniPoly, v: &UniPoly) -> UniPoly {
    let mut acc = Poly::zero();
    for c in p.eta_coeffs().iter().rev() {
        acc = (acc * v.clone() + c.clone()).div_rem(u).1;
    }
    acc
}

fn points_from_mumford(u: &UniPoly, v: &UniPoly, eta_fn: &RatFunc) -> Result<Vec<DivisorPoint>> {
    let mut points = Vec::new();
    let exact = rational_roots(u);
    for x in &exact {
        points.push(DivisorPoint {
            x: Value::Exact(x.clone()),
            eta: Value::Exact(v.eval(x)),
        });
    }
    let mut rest = u.square_free_part();
    for x in &exact {
        rest = rest.div_rem(&Poly::new(vec![-x.clone(), Rational::one()])).0;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let to_c = |q: &Rational| Value::Exact(q.clone()).to_complex();
        for z in distinct_complex_roots(&rest)? {
            let den = eta_fn.denom().eval_with(&z, to_c);
            points.push(DivisorPoint {
                x: Value::Approx(z),
                eta: Value::Approx(eta_fn.numer().eval_with(&z, to_c) / den),
            });
        }
    }
    Ok(points)
}

pub fn cokernel_divisor(psi: &HiggsField) -> Result<SpectralData> {
    let curve = spectral_curve(psi)?;
    if psi.rank() == 2 {
        return divisor_rank_two(psi, curve);
    }
    divisor_numeric(psi, curve)
}

fn divisor_rank_two(psi: &HiggsField, curve: SpectralCurve) -> Result<SpectralData> {
    let h = psi.hhat();
    let b = &h[(0, 1)];
    if b.is_zero() {
        return Err(Error::NonCyclic);
    }
    let u = b.numer().monic();
    let a = &h[(0, 0)];
    let v = if u.degree().unwrap_or(0) == 0 {
        Poly::zero()
    } else {
        let inv = a.denom().inverse_mod(&u).ok_or_else(|| {
            Error::NonGenericDivisor("a divisor point lies on D_inf (hhat_11 has a pole there)".into())
        })?;
        (a.numer().clone() * inv).div_rem(&u).1
    };
    let residual = curve_residual(&curve.p, &u, &v);
    if !residual.is_zero() {
        return Err(Error::InconsistentDivisor(format!(
            "P(x, v(x)) mod u = {}",
            residual.display("x")
        )));
    }
    let points = points_from_mumford(&u, &v, a)?;
    Ok(SpectralData {
        degree: u.degree().unwrap_or(0),
        mumford: Some((u, v)),
        points,
        curve,
    })
}

/// `det[e_n, hhat e_n, ..., hhat^{n-1} e_n]`.
pub fn krylov_determinant(h: &RationalFunctionMatrix) -> RatFunc {
    let n = h.rows();
    let mut cols: Vec<Vec<RatFunc>> = Vec::with_capacity(n);
    let mut v: Vec<RatFunc> = (0..n)
        .map(|i| if i + 1 == n { RatFunc::one() } else { RatFunc::zero() })
        .collect();
    for _ in 0..n {
        cols.push(v.clone());
        v = h.mul_vec(&v);
    }
    Matrix::from_fn(n, n, |i, j| cols[j][i].clone()).det()
}

fn adjugate_row(m: &Matrix<Complex64>) -> Vec<Complex64> {
    // Rows of adj(M) are left null vectors of a corank-one M; take the largest.
    let n = m.rows();
    let mut best = vec![Complex64::zero(); n];
    let mut best_norm = -1.0;
    for r in 0..n {
        let row: Vec<Complex64> = (0..n)
            .map(|c| {
                let minor = Matrix::from_fn(n - 1, n - 1, |i, j| {
                    let ii = if i < c { i } else { i + 1 };
                    let jj = if j < r { j } else { j + 1 };
                    m[(ii, jj)]
                });
                let sign = if (r + c) % 2 == 0 { 1.0 } else { -1.0 };
                minor.det() * sign
            })
            .collect();
        let norm: f64 = row.iter().map(|z| z.norm_sqr()).sum();
        if norm > best_norm {
            best_norm = norm;
            best = row;
        }
    }
    best
}

fn divisor_numeric(psi: &HiggsField, curve: SpectralCurve) -> Result<SpectralData> {
    let n = psi.rank();
    let k = krylov_determinant(psi.hhat());
    if k.is_zero() {
        return Err(Error::NonCyclic);
    }
    let xs = k.numer().clone();
    let degree = xs.degree().unwrap_or(0);
    let mut points = Vec::new();
    if degree > 0 {
        for x in complex_roots(&crate::algebra::roots::to_complex_poly(&xs))? {
            let hx = psi
                .eval_complex(x)
                .ok_or_else(|| Error::NonGenericDivisor("divisor point at a pole".into()))?;
            let mut best = (f64::INFINITY, Complex64::zero());
            for eta in complex_roots(&fibre_at(&curve.p, x))? {
                let shifted = Matrix::from_fn(n, n, |i, j| {
                    hx[(i, j)] - if i == j { eta } else { Complex64::zero() }
                });
                let l = adjugate_row(&shifted);
                let norm = l.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                let score = if norm > 0.0 { l[n - 1].norm() / norm } else { f64::INFINITY };
                if score < best.0 {
                    best = (score, eta);
                }
            }
            points.push(DivisorPoint {
                x: Value::Approx(x),
                eta: Value::Approx(best.1),
            });
        }
    }
    Ok(SpectralData {
        curve,
        points,
        mumford: None,
        degree,
    })
}

/// Distinctness check used by the Darboux test.
pub fn require_distinct(points: &[DivisorPoint], tol: f64) -> Result<()> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if (points[i].x.to_complex() - points[j].x.to_complex()).norm() < tol {
                return Err(Error::NonGenericDivisor(format!(
                    "x_{} = x_{} = {}",
                    i + 1,
                    j + 1,
                    points[i].x
                )));
            }
        }
    }
    Ok(())
}

/// Formats `(u, v)` for reports.
pub fn display_mumford(u: &UniPoly, v: &UniPoly) -> String {
    format!("u = {}, v = {}", u.display("x"), v.display("x"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    fn c(k: i64) -> RatFunc {
        RatFunc::constant(int(k))
    }

    fn psi(rows: Vec<Vec<RatFunc>>) -> HiggsField {
        HiggsField::new(vec![int(0)], Matrix::from_rows(rows)).unwrap()
    }

    #[test]
    fn single_point_divisor() {
        let b = RatFunc::from_poly(Poly::new(vec![int(-2), int(1)]));
        let h = psi(vec![vec![RatFunc::simple_pole(int(0)), b], vec![c(1), c(0)]]);
        let d = cokernel_divisor(&h).unwrap();
        assert_eq!(d.points, vec![DivisorPoint { x: Value::Exact(int(2)), eta: Value::Exact(crate::rat(1, 2)) }]);
        assert!(d.curve.p.eval(&int(2), &crate::rat(1, 2)).is_zero());
    }

    #[test]
    fn empty_and_non_cyclic() {
        let h = psi(vec![vec![RatFunc::simple_pole(int(0)), c(1)], vec![c(1), c(0)]]);
        let d = cokernel_divisor(&h).unwrap();
        assert!(d.points.is_empty());
        assert_eq!(d.degree, 0);
        let diag = psi(vec![vec![RatFunc::simple_pole(int(0)), c(0)], vec![c(0), c(3)]]);
        assert_eq!(cokernel_divisor(&diag).unwrap_err(), Error::NonCyclic);
    }

    #[test]
    fn krylov_matches_rank_two_recipe() {
        let b = RatFunc::from_poly(Poly::new(vec![int(-2), int(1)]));
        let h = psi(vec![vec![RatFunc::simple_pole(int(0)), b.clone()], vec![c(1), c(0)]]);
        assert_eq!(krylov_determinant(h.hhat()), -b);
    }
}
