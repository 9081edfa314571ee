//! Sylvester resultants over an arbitrary commutative ring.

use super::matrix::Matrix;
use super::poly::Poly;
use super::ring::Ring;

/// Sylvester matrix of `f` (degree m) and `g` (degree k): k shifted rows of
/// `f` followed by m shifted rows of `g`, coefficients in descending order.
pub fn sylvester_matrix<T: Ring>(f: &Poly<T>, g: &Poly<T>) -> Matrix<T> {
    let m = f.degree().unwrap_or(0);
    let k = g.degree().unwrap_or(0);
    let size = m + k;
    let mut s = Matrix::zeros(size, size);
    for r in 0..k {
        for d in 0..=m {
            s[(r, r + m - d)] = f.coeff(d);
        }
    }
    for r in 0..m {
        for d in 0..=k {
            s[(k + r, r + k - d)] = g.coeff(d);
        }
    }
    s
}

/// `Res(f, g)` as the determinant of [`sylvester_matrix`]; no leading
/// coefficient normalization is applied.
pub fn resultant<T: Ring>(f: &Poly<T>, g: &Poly<T>) -> T {
    match (f.degree(), g.degree()) {
        (None, _) | (_, None) => T::zero(),
        (Some(0), Some(k)) => f.coeff(0).pow(k as u32),
        (Some(m), Some(0)) => g.coeff(0).pow(m as u32),
        _ => {
            let s = sylvester_matrix(f, g);
            if s.entries().iter().all(|e| e.is_zero()) {
                T::zero()
            } else {
                s.det_ring()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{int, Rational};

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::new(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn resultant_detects_common_roots() {
        // (x-1)(x-2) and (x-2)(x+5) share x = 2.
        let f = p(&[2, -3, 1]);
        let g = p(&[-10, 3, 1]);
        assert_eq!(resultant(&f, &g), int(0));
        // Res(x - a, x - b) = a - b ... for monic linear factors: b - a sign convention.
        let r = resultant(&p(&[-1, 1]), &p(&[-4, 1]));
        assert_eq!(r, int(-3));
    }

    #[test]
    fn resultant_is_product_over_roots() {
        // Res(f, g) = lc(f)^deg g * prod g(roots of f)
        let f = p(&[-2, -1, 1]); // roots 2, -1
        let g = p(&[1, 0, 1]); // x^2 + 1
        let expected = g.eval(&int(2)) * g.eval(&int(-1));
        assert_eq!(resultant(&f, &g), expected);
    }
}
