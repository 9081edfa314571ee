//! Polynomials in `(x, eta)` stored as polynomials in `eta` with
//! coefficients in `F[x]`.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::{format_poly_terms, monomial_name, Poly};
use super::resultant::resultant;
use super::ring::{Field, Rational, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bivariate<F> {
    by_eta: Poly<Poly<F>>,
}

impl<F: Field> Bivariate<F> {
    /// From coefficients of `eta^0, eta^1, ...`, each a polynomial in `x`.
    pub fn from_eta_coeffs(coeffs: Vec<Poly<F>>) -> Self {
        Bivariate {
            by_eta: Poly::new(coeffs),
        }
    }

    /// From `(x-degree, eta-degree, coefficient)` triples.
    pub fn from_terms(terms: &[(usize, usize, F)]) -> Self {
        let mut acc = Self::zero();
        for (i, j, c) in terms {
            acc = acc + Self::from_eta_coeffs(vec![Poly::zero(); *j]
                .into_iter()
                .chain(std::iter::once(Poly::monomial(c.clone(), *i)))
                .collect());
        }
        acc
    }

    pub fn x() -> Self {
        Self::from_eta_coeffs(vec![Poly::x()])
    }

    pub fn eta() -> Self {
        Self::from_eta_coeffs(vec![Poly::zero(), Poly::one()])
    }

    pub fn constant(c: F) -> Self {
        Self::from_eta_coeffs(vec![Poly::constant(c)])
    }

    /// Coefficient of `eta^j` as a polynomial in `x`.
    pub fn eta_coeff(&self, j: usize) -> Poly<F> {
        self.by_eta.coeff(j)
    }

    pub fn eta_coeffs(&self) -> &[Poly<F>] {
        self.by_eta.coeffs()
    }

    /// Coefficient of `x^i eta^j`.
    pub fn coeff(&self, i: usize, j: usize) -> F {
        self.by_eta.coeff(j).coeff(i)
    }

    pub fn eta_degree(&self) -> Option<usize> {
        self.by_eta.degree()
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.by_eta.coeffs().iter().filter_map(|c| c.degree()).max()
    }

    pub fn eval(&self, x: &F, eta: &F) -> F {
        self.at_x(x).eval(eta)
    }

    /// Fibre polynomial in `eta` over the base point `x`.
    pub fn at_x(&self, x: &F) -> Poly<F> {
        self.by_eta.map(|c| c.eval(x))
    }

    pub fn partial_eta(&self) -> Self {
        Bivariate {
            by_eta: self.by_eta.derivative(),
        }
    }

    pub fn partial_x(&self) -> Self {
        Bivariate {
            by_eta: self.by_eta.map(|c| c.derivative()),
        }
    }

    /// `mu^n P(x, 1/mu)` with `n` the eta-degree: the chart at infinity.
    pub fn invert_fibre(&self) -> Self {
        let n = self.eta_degree().unwrap_or(0);
        Bivariate {
            by_eta: self.by_eta.reversed(n),
        }
    }

    /// Substitutes `eta -> eta + s(x)` (requires polynomial `s`).
    pub fn shift_fibre(&self, s: &Poly<F>) -> Self {
        let lin = Poly::new(vec![s.clone(), Poly::one()]);
        Bivariate {
            by_eta: self.by_eta.compose(&lin),
        }
    }

    /// `Res_eta(P, dP/deta)`, a polynomial in `x`.
    ///
    /// Normalization: plain Sylvester determinant with `P` rows first and
    /// coefficients in descending eta-degree; no division by the leading
    /// coefficient and no sign correction. For `eta^2 - x` this gives `-4x`.
    pub fn discriminant_in_eta(&self) -> Result<Poly<F>> {
        match self.eta_degree() {
            None | Some(0) => Err(Error::NotACovering),
            Some(_) => Ok(resultant(&self.by_eta, &self.by_eta.derivative())),
        }
    }

    /// `Res_eta(self, other)`.
    pub fn resultant_eta(&self, other: &Self) -> Poly<F> {
        resultant(&self.by_eta, &other.by_eta)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Bivariate<G> {
        Bivariate {
            by_eta: self.by_eta.map(|c| c.map(&f)),
        }
    }

    /// Content in `x`: the monic gcd of all eta-coefficients.
    pub fn x_content(&self) -> Poly<F> {
        self.by_eta
            .coeffs()
            .iter()
            .fold(Poly::zero(), |g, c| g.gcd(c))
    }
}

impl Bivariate<Rational> {
    /// Renders with variable names `x` and `fibre` (e.g. `eta`, `mu`),
    /// highest fibre degree first.
    pub fn display_with(&self, fibre: &str) -> String {
        let mut terms = Vec::new();
        for (j, cx) in self.by_eta.coeffs().iter().enumerate().rev() {
            for (i, c) in cx.coeffs().iter().enumerate().rev() {
                if !c.is_zero() {
                    terms.push((c.clone(), monomial_name(&[("x", i), (fibre, j)])));
                }
            }
        }
        format_poly_terms(terms.into_iter())
    }

    pub fn display(&self) -> String {
        self.display_with("eta")
    }
}

impl<F: Field> Zero for Bivariate<F> {
    fn zero() -> Self {
        Bivariate { by_eta: Poly::zero() }
    }
    fn is_zero(&self) -> bool {
        self.by_eta.is_zero()
    }
}

impl<F: Field> One for Bivariate<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Field> Add for Bivariate<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Bivariate {
            by_eta: self.by_eta + rhs.by_eta,
        }
    }
}

impl<F: Field> Sub for Bivariate<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Bivariate {
            by_eta: self.by_eta - rhs.by_eta,
        }
    }
}

impl<F: Field> Neg for Bivariate<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Bivariate { by_eta: -self.by_eta }
    }
}

impl<F: Field> Mul for Bivariate<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Bivariate {
            by_eta: self.by_eta * rhs.by_eta,
        }
    }
}

impl<F: Field> Ring for Bivariate<F> {}
