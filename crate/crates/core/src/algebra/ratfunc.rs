//! Univariate rational functions in lowest terms.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::LaurentJet;
use super::poly::Poly;
use super::ring::{Field, Rational, Ring};

/// `numerator / denominator` with monic denominator and coprime parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RationalFunction<F> {
    /// Builds `num / den` and reduces it. Panics on a zero denominator.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let lc = den.leading().inv();
        RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    /// `1 / (x - p)`
    pub fn simple_pole(p: F) -> Self {
        Self::new(Poly::one(), Poly::new(vec![-p, F::one()]))
    }

    pub fn numer(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn as_constant(&self) -> Option<F> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(F::zero()),
            (Some(0), Some(0)) => Some(self.num.coeff(0)),
            _ => None,
        }
    }

    /// Value at `x`, `None` at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    pub fn derivative(&self) -> Self {
        let n = self.num.derivative() * self.den.clone() - self.num.clone() * self.den.derivative();
        Self::new(n, self.den.clone() * self.den.clone())
    }

    /// Logarithmic derivative `r'/r`.
    pub fn log_derivative(&self) -> Self {
        self.derivative() / self.clone()
    }

    /// `self(t(x))` for a rational substitution `t`.
    pub fn compose(&self, t: &RationalFunction<F>) -> Self {
        let n = self.num.eval_with(t, |c| Self::constant(c.clone()));
        let d = self.den.eval_with(t, |c| Self::constant(c.clone()));
        n / d
    }

    /// Order of vanishing at `p` (negative at poles). `None` for zero.
    pub fn order_at(&self, p: &F) -> Option<i64> {
        if self.num.is_zero() {
            return None;
        }
        Some(self.num.root_multiplicity(p) as i64 - self.den.root_multiplicity(p) as i64)
    }

    /// Order at infinity: `deg den - deg num`.
    pub fn order_at_infinity(&self) -> Option<i64> {
        Some(self.den.degree()? as i64 - self.num.degree()? as i64)
    }

    /// Truncated Laurent expansion at `p` with exponents up to `m`.
    pub fn laurent(&self, p: &F, m: i64) -> LaurentJet<F> {
        let shift = Poly::new(vec![p.clone(), F::one()]);
        let num = self.num.compose(&shift);
        let den = self.den.compose(&shift);
        let Some(jn) = num.valuation() else {
            return LaurentJet::zero(p.clone(), m);
        };
        let jd = den.valuation().expect("nonzero denominator");
        let lowest = jn as i64 - jd as i64;
        let len = if m >= lowest { (m - lowest + 1) as usize } else { 0 };
        let n: Vec<F> = num.coeffs()[jn..].to_vec();
        let d: Vec<F> = den.coeffs()[jd..].to_vec();
        let coeffs = series_divide(&n, &d, len);
        LaurentJet::new(p.clone(), lowest, coeffs, m)
    }

    /// Coefficient of `(x - p)^{-1}`; zero where `self` is holomorphic.
    pub fn residue(&self, p: &F) -> F {
        self.laurent(p, -1).coeff(-1)
    }

    /// Residue at infinity of `self * dx`.
    pub fn residue_at_infinity(&self) -> F {
        let (_, rem) = self.num.div_rem(&self.den);
        match (rem.degree(), self.den.degree()) {
            (Some(dr), Some(dd)) if dr + 1 == dd => -(rem.leading() / self.den.leading()),
            _ => F::zero(),
        }
    }

    /// `(polynomial part, proper part)` with `proper` of negative degree.
    pub fn split_polynomial_part(&self) -> (Poly<F>, Self) {
        let (q, r) = self.num.div_rem(&self.den);
        (q, Self::new(r, self.den.clone()))
    }
}

/// Power series quotient `n / d` to `len` terms; requires `d[0] != 0`.
pub(crate) fn series_divide<F: Field>(n: &[F], d: &[F], len: usize) -> Vec<F> {
    let inv0 = d[0].inv();
    let mut out: Vec<F> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = n.get(k).cloned().unwrap_or_else(F::zero);
        for j in 1..=k.min(d.len().saturating_sub(1)) {
            acc = acc - d[j].clone() * out[k - j].clone();
        }
        out.push(acc * inv0.clone());
    }
    out
}

impl RationalFunction<Rational> {
    pub fn display(&self) -> String {
        let n = self.num.display("x");
        if self.is_polynomial() {
            return n;
        }
        let d = self.den.display("x");
        let wrap = |s: String, p: &Poly<Rational>| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        format!("{}/{}", wrap(n, &self.num), wrap(d, &self.den))
    }
}

impl fmt::Display for RationalFunction<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl<F: Field> Zero for RationalFunction<F> {
    fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Field> One for RationalFunction<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Field> Add for RationalFunction<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return Self::new(self.num + rhs.num, self.den);
        }
        Self::new(
            self.num * rhs.den.clone() + rhs.num * self.den.clone(),
            self.den * rhs.den,
        )
    }
}

impl<F: Field> Sub for RationalFunction<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Neg for RationalFunction<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<F: Field> Mul for RationalFunction<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::new(self.num * rhs.num, self.den * rhs.den)
    }
}

impl<F: Field> Div for RationalFunction<F> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero rational function");
        Self::new(self.num * rhs.den, self.den * rhs.num)
    }
}

impl<F: Field> Ring for RationalFunction<F> {}

impl<F: Field> Field for RationalFunction<F> {
    fn from_rational(q: &Rational) -> Self {
        Self::constant(F::from_rational(q))
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
    fn is_exact() -> bool {
        F::is_exact()
    }
}
