//! Polynomial root isolation in complex doubles, plus exact recovery of
//! rational roots.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use super::poly::Poly;
use super::ring::{rationalize, Field, Rational};
use crate::error::{Error, Result};

/// Converts exact coefficients to complex doubles.
pub fn to_complex_poly<F: Field + ToComplex>(p: &Poly<F>) -> Poly<Complex64> {
    p.map(|c| c.to_c64())
}

pub trait ToComplex {
    fn to_c64(&self) -> Complex64;
}

impl ToComplex for Rational {
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

impl ToComplex for f64 {
    fn to_c64(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }
}

impl ToComplex for Complex64 {
    fn to_c64(&self) -> Complex64 {
        *self
    }
}

fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots (with multiplicity) by Aberth–Ehrlich iteration.
///
/// Accuracy is best for square-free input; callers that need certified
/// simple roots should pass the square-free part.
pub fn complex_roots(p: &Poly<Complex64>) -> Result<Vec<Complex64>> {
    let Some(n) = p.degree() else {
        return Err(Error::Numerical("roots of the zero polynomial".into()));
    };
    if n == 0 {
        return Ok(Vec::new());
    }
    let lc = p.leading();
    let coeffs: Vec<Complex64> = p.coeffs().iter().map(|c| c / lc).collect();
    if n == 1 {
        return Ok(vec![-coeffs[0]]);
    }
    // Cauchy bound for the initial circle.
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            Complex64::from_polar(radius * 0.5 + 0.1, theta)
        })
        .collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for i in 0..n {
            let (pv, dpv) = eval_with_derivative(&coeffs, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dpv;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(1e12, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    // Newton polish.
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (pv, dpv) = eval_with_derivative(&coeffs, *zi);
            if dpv.norm() > 0.0 {
                let s = pv / dpv;
                if s.is_finite() {
                    *zi -= s;
                }
            }
        }
    }
    Ok(z)
}

/// Distinct rational roots of an exact polynomial, each verified exactly.
pub fn rational_roots(p: &Poly<Rational>) -> Vec<Rational> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sf = p.square_free_part();
    let mut found: Vec<Rational> = Vec::new();
    let mut rest = sf.clone();
    // Zero is handled exactly so it never depends on rounding.
    if rest.coeff(0).is_zero() {
        found.push(Rational::zero());
        rest = rest.div_rem(&Poly::x()).0;
    }
    if let Ok(roots) = complex_roots(&to_complex_poly(&rest)) {
        for z in roots {
            if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
                continue;
            }
            for max_den in [1_000i64, 1_000_000, 1_000_000_000] {
                if let Some(q) = rationalize(z.re, max_den) {
                    if rest.eval(&q).is_zero() {
                        if !found.contains(&q) {
                            found.push(q);
                        }
                        break;
                    }
                }
            }
        }
    }
    found.sort();
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{int, rat};

    #[test]
    fn finds_complex_and_rational_roots() {
        // (x - 1/2)(x + 3)(x^2 + 1)
        let p = Poly::new(vec![rat(-1, 2), int(1)])
            * Poly::new(vec![int(3), int(1)])
            * Poly::new(vec![int(1), int(0), int(1)]);
        let roots = complex_roots(&to_complex_poly(&p)).unwrap();
        assert_eq!(roots.len(), 4);
        let has = |w: Complex64| roots.iter().any(|z| (z - w).norm() < 1e-10);
        assert!(has(Complex64::new(0.5, 0.0)));
        assert!(has(Complex64::new(0.0, 1.0)));
        assert_eq!(rational_roots(&p), vec![int(-3), rat(1, 2)]);
    }

    #[test]
    fn repeated_roots_reported_once() {
        let p = Poly::new(vec![int(0), int(0), int(1)]) * Poly::new(vec![int(-2), int(1)]);
        assert_eq!(rational_roots(&p), vec![int(0), int(2)]);
    }
}
