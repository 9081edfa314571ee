//! Truncated Laurent jets at a point, scalar and matrix valued.
//!
//! A jet with lowest exponent `l` and truncation order `m` stores the
//! coefficients of `(x - p)^l, ..., (x - p)^m`; everything above `m` is
//! unknown, so arithmetic always truncates to the largest order that is
//! still determined by the operands.

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::poly::Poly;
use super::ratfunc::RationalFunction;
use super::ring::Field;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentJet<F> {
    base: F,
    lowest: i64,
    coeffs: Vec<F>,
    order: i64,
}

impl<F: Field> LaurentJet<F> {
    pub fn new(base: F, lowest: i64, coeffs: Vec<F>, order: i64) -> Self {
        assert!(
            coeffs.len() as i64 <= (order - lowest + 1).max(0),
            "more coefficients than the truncation order allows"
        );
        LaurentJet {
            base,
            lowest,
            coeffs,
            order,
        }
    }

    pub fn zero(base: F, order: i64) -> Self {
        LaurentJet {
            base,
            lowest: order + 1,
            coeffs: Vec::new(),
            order,
        }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `(x - p)^k`; zero below the lowest exponent.
    /// Panics above the truncation order.
    pub fn coeff(&self, k: i64) -> F {
        assert!(k <= self.order, "coefficient {k} beyond truncation order {}", self.order);
        if k < self.lowest {
            return F::zero();
        }
        self.coeffs
            .get((k - self.lowest) as usize)
            .cloned()
            .unwrap_or_else(F::zero)
    }

    /// Lowest exponent with a nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.lowest + i as i64)
    }

    /// `sum c_k (x - p)^k` as an exact rational function.
    pub fn resum(&self) -> RationalFunction<F> {
        let y = RationalFunction::from_poly(Poly::new(vec![-self.base.clone(), F::one()]));
        let inv_y = RationalFunction::one() / y.clone();
        let mut acc = RationalFunction::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.lowest + i as i64;
            let mono = if k >= 0 {
                Ring::pow(&y, k as u32)
            } else {
                Ring::pow(&inv_y, (-k) as u32)
            };
            acc = acc + RationalFunction::constant(c.clone()) * mono;
        }
        acc
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = (self.order + rhs.lowest).min(rhs.order + self.lowest);
        let lowest = self.lowest + rhs.lowest;
        let len = (order - lowest + 1).max(0) as usize;
        let mut coeffs = vec![F::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j < len {
                    coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        LaurentJet::new(self.base.clone(), lowest, coeffs, order)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let lowest = self.lowest.min(rhs.lowest);
        let coeffs = (lowest..=order)
            .map(|k| self.coeff(k) + rhs.coeff(k))
            .collect();
        LaurentJet::new(self.base.clone(), lowest, coeffs, order)
    }
}

use super::ring::Ring;

/// Matrix-valued truncated Laurent jet.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixJet<F> {
    base: F,
    dim: usize,
    lowest: i64,
    coeffs: Vec<Matrix<F>>,
    order: i64,
}

impl<F: Field> MatrixJet<F> {
    pub fn new(base: F, dim: usize, lowest: i64, coeffs: Vec<Matrix<F>>, order: i64) -> Self {
        assert!(coeffs.iter().all(|c| c.rows() == dim && c.cols() == dim));
        assert!(coeffs.len() as i64 <= (order - lowest + 1).max(0));
        MatrixJet {
            base,
            dim,
            lowest,
            coeffs,
            order,
        }
    }

    /// Constant matrix as a jet known to order `order`.
    pub fn constant(base: F, m: Matrix<F>, order: i64) -> Self {
        let dim = m.rows();
        let coeffs = if order >= 0 { vec![m] } else { Vec::new() };
        MatrixJet::new(base, dim, 0, coeffs, order)
    }

    pub fn identity(base: F, dim: usize, order: i64) -> Self {
        Self::constant(base, Matrix::identity(dim), order)
    }

    /// Entrywise Laurent expansion of a rational-function matrix.
    pub fn expand(m: &Matrix<RationalFunction<F>>, base: &F, order: i64) -> Self {
        let n = m.rows();
        let lowest = m
            .entries()
            .iter()
            .filter_map(|e| e.order_at(base))
            .min()
            .unwrap_or(0)
            .min(0);
        let jets: Vec<LaurentJet<F>> = m.entries().iter().map(|e| e.laurent(base, order)).collect();
        let coeffs = (lowest..=order)
            .map(|k| Matrix::from_fn(n, n, |i, j| jets[i * n + j].coeff(k)))
            .collect();
        MatrixJet::new(base.clone(), n, lowest, coeffs, order)
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    /// Coefficient of `(x - p)^k`. Errors above the truncation order.
    pub fn coeff(&self, k: i64) -> Result<Matrix<F>> {
        if k > self.order {
            return Err(Error::InsufficientJet {
                requested: k,
                available: self.order,
            });
        }
        if k < self.lowest {
            return Ok(Matrix::zeros(self.dim, self.dim));
        }
        Ok(self
            .coeffs
            .get((k - self.lowest) as usize)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim, self.dim)))
    }

    /// Drops vanishing leading coefficients so that `lowest` is the true
    /// valuation (or `order + 1` for a zero jet). Products then keep more
    /// known orders.
    pub fn trim(&self) -> Self {
        let skip = self.coeffs.iter().take_while(|c| c.is_zero_matrix()).count();
        MatrixJet::new(
            self.base.clone(),
            self.dim,
            self.lowest + skip as i64,
            self.coeffs[skip..].to_vec(),
            self.order,
        )
    }

    /// Same jet with fewer known orders.
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        let coeffs = (self.lowest..=order)
            .map(|k| self.coeff(k).expect("within order"))
            .collect();
        MatrixJet::new(self.base.clone(), self.dim, self.lowest, coeffs, order)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = (self.order + rhs.lowest).min(rhs.order + self.lowest);
        let lowest = self.lowest + rhs.lowest;
        let len = (order - lowest + 1).max(0) as usize;
        let mut coeffs = vec![Matrix::zeros(self.dim, self.dim); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_matrix() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j < len {
                    coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        MatrixJet::new(self.base.clone(), self.dim, lowest, coeffs, order)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let lowest = self.lowest.min(rhs.lowest);
        let coeffs = (lowest..=order)
            .map(|k| self.coeff(k).unwrap() + rhs.coeff(k).unwrap())
            .collect();
        MatrixJet::new(self.base.clone(), self.dim, lowest, coeffs, order)
    }

    pub fn map_coeffs(&self, f: impl Fn(&Matrix<F>) -> Matrix<F>) -> Self {
        let coeffs: Vec<Matrix<F>> = self.coeffs.iter().map(f).collect();
        let dim = coeffs.first().map_or(self.dim, |c| c.rows());
        MatrixJet::new(self.base.clone(), dim, self.lowest, coeffs, self.order)
    }

    /// Inverse of a holomorphic jet whose constant term is invertible.
    pub fn inverse(&self) -> Result<Self> {
        if self.lowest < 0 && (self.lowest..0).any(|k| !self.coeff(k).unwrap().is_zero_matrix()) {
            return Err(Error::NonInvertibleGauge("jet has a pole".into()));
        }
        let g0_inv = self.coeff(0)?.inverse().map_err(|_| {
            Error::NonInvertibleGauge("constant term of gauge germ is singular".into())
        })?;
        let mut out: Vec<Matrix<F>> = Vec::new();
        for k in 0..=self.order {
            let mut acc = if k == 0 {
                Matrix::identity(self.dim)
            } else {
                Matrix::zeros(self.dim, self.dim)
            };
            for j in 1..=k {
                acc = acc - self.coeff(j)? * out[(k - j) as usize].clone();
            }
            out.push(g0_inv.clone() * acc);
        }
        Ok(MatrixJet::new(self.base.clone(), self.dim, 0, out, self.order))
    }

    /// `g * self * g^{-1}` truncated consistently.
    pub fn conjugate_by(&self, g: &Self) -> Result<Self> {
        let g_inv = g.inverse()?;
        Ok(g.mul(self).mul(&g_inv))
    }

    /// Whether both jets agree coefficientwise through order `m`.
    pub fn agrees_to(&self, other: &Self, m: i64) -> Result<bool> {
        let lo = self.lowest.min(other.lowest);
        for k in lo..=m {
            if self.coeff(k)? != other.coeff(k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact rational-function matrix `sum C_k (x - p)^k`.
    pub fn resum(&self) -> Matrix<RationalFunction<F>> {
        let n = self.dim;
        Matrix::from_fn(n, n, |i, j| {
            let coeffs = (self.lowest..=self.order)
                .map(|k| self.coeff(k).unwrap()[(i, j)].clone())
                .collect();
            LaurentJet::new(self.base.clone(), self.lowest, coeffs, self.order).resum()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{int, Rational};

    type R = RationalFunction<Rational>;

    #[test]
    fn scalar_jet_resum_agrees_to_order() {
        let r = R::new(
            Poly::new(vec![int(-1), int(2)]),
            Poly::new(vec![int(0), int(-1), int(1)]),
        );
        for m in 0..5 {
            let jet = r.laurent(&int(0), m);
            let diff = r.clone() - jet.resum();
            assert!(diff.is_zero() || diff.order_at(&int(0)).unwrap() > m);
        }
    }

    #[test]
    fn matrix_jet_inverse_roundtrip() {
        let g = Matrix::from_rows(vec![
            vec![R::one(), R::x()],
            vec![R::constant(int(2)), R::one() + R::x() * R::x()],
        ]);
        let jet = MatrixJet::expand(&g, &int(0), 4);
        let inv = jet.inverse().unwrap();
        let prod = jet.mul(&inv);
        assert!(prod.agrees_to(&MatrixJet::identity(int(0), 2, 4), 4).unwrap());
    }

    #[test]
    fn coefficient_beyond_order_is_an_error() {
        let jet = MatrixJet::identity(int(0), 2, 3);
        assert!(matches!(jet.coeff(4), Err(Error::InsufficientJet { .. })));
    }
}
