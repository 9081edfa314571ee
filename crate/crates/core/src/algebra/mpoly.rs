//! Sparse multivariate polynomials.
//!
//! Exponent vectors are stored with trailing zeros trimmed, so polynomials in
//! different numbers of variables mix freely and `zero()`/`one()` need no
//! variable count.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::ring::{Field, Ring};

type Exponent = Vec<u16>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly<F> {
    terms: BTreeMap<Exponent, F>,
}

fn trim(mut e: Exponent) -> Exponent {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl<F: Field> MPoly<F> {
    pub fn constant(c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly { terms }
    }

    /// The variable with index `i`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0u16; i + 1];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, F::one());
        MPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &F)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&d| d as u32).sum())
            .max()
    }

    /// Highest variable index that occurs, plus one.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e.get(i).is_some_and(|&d| d > 0))
    }

    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    fn insert_term(terms: &mut BTreeMap<Exponent, F>, e: Exponent, c: F) {
        if c.is_zero() {
            return;
        }
        match terms.get_mut(&e) {
            Some(slot) => {
                let v = slot.clone() + c;
                if v.is_zero() {
                    terms.remove(&e);
                } else {
                    *slot = v;
                }
            }
            None => {
                terms.insert(e, c);
            }
        }
    }

    pub fn partial(&self, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = e.get(i).copied().unwrap_or(0);
            if d == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] = d - 1;
            Self::insert_term(&mut terms, trim(e2), c.clone() * F::from_i64(d as i64));
        }
        MPoly { terms }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (e.clone(), v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Evaluates in any ring the coefficients embed into.
    pub fn eval_with<S: Ring>(&self, values: &[S], embed: impl Fn(&F) -> S) -> S {
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut term = embed(c);
            for (i, &d) in e.iter().enumerate() {
                if d > 0 {
                    term = term * values[i].pow(d as u32);
                }
            }
            acc = acc + term;
        }
        acc
    }

    pub fn eval(&self, values: &[F]) -> F {
        self.eval_with(values, |c| c.clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> MPoly<G> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            MPoly::<G>::insert_term(&mut terms, e.clone(), f(c));
        }
        MPoly { terms }
    }
}

impl<F: Field> Zero for MPoly<F> {
    fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Field> One for MPoly<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Field> Add for MPoly<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.terms, rhs.terms)
        } else {
            (rhs.terms, self.terms)
        };
        for (e, c) in small {
            Self::insert_term(&mut big, e, c);
        }
        MPoly { terms: big }
    }
}

impl<F: Field> Sub for MPoly<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Neg for MPoly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        MPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<F: Field> Mul for MPoly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let len = ea.len().max(eb.len());
                let e: Exponent = (0..len)
                    .map(|i| ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0))
                    .collect();
                Self::insert_term(&mut terms, e, ca.clone() * cb.clone());
            }
        }
        MPoly { terms }
    }
}

impl<F: Field> Ring for MPoly<F> {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{int, Rational};

    type P = MPoly<Rational>;

    #[test]
    fn arithmetic_cancels() {
        let x = P::var(0);
        let y = P::var(2);
        let f = (x.clone() + y.clone()) * (x.clone() - y.clone());
        let g = x.clone() * x.clone() - y.clone() * y.clone();
        assert_eq!(f, g);
        assert!((f - g).is_zero());
        assert_eq!(P::var(3).partial(3), P::one());
    }

    #[test]
    fn partials_and_eval() {
        let x = P::var(0);
        let y = P::var(1);
        let f = x.clone() * x.clone() * y.clone() + P::constant(int(3)) * y.clone();
        assert_eq!(f.partial(0), P::constant(int(2)) * x.clone() * y.clone());
        assert_eq!(f.eval(&[int(2), int(5)]), int(35));
        assert!(f.depends_on(1));
        assert!(!f.depends_on(4));
    }
}
