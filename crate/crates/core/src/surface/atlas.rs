//! Chart models of the base curve and of line-bundle cocycles on it.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::{int, RatFunc, Rational};

/// Base curve described by named charts and coordinate changes.
///
/// `transitions[(a, b)]` expresses the coordinate of chart `b` as a rational
/// function of the coordinate of chart `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseAtlas {
    genus: u32,
    charts: Vec<String>,
    transitions: BTreeMap<(usize, usize), RatFunc>,
}

impl BaseAtlas {
    pub fn new(
        genus: u32,
        charts: Vec<String>,
        transitions: BTreeMap<(usize, usize), RatFunc>,
    ) -> Result<Self> {
        let atlas = BaseAtlas {
            genus,
            charts,
            transitions,
        };
        atlas.check()?;
        Ok(atlas)
    }

    /// P^1 covered by `x` and `w = 1/x`.
    pub fn projective_line() -> Self {
        let inv = RatFunc::new(Poly::one(), Poly::x());
        let mut transitions = BTreeMap::new();
        transitions.insert((0, 1), inv.clone());
        transitions.insert((1, 0), inv);
        BaseAtlas {
            genus: 0,
            charts: vec!["x".into(), "w".into()],
            transitions,
        }
    }

    /// A curve known only by its genus (no exact function theory).
    pub fn label_only(genus: u32) -> Self {
        BaseAtlas {
            genus,
            charts: Vec::new(),
            transitions: BTreeMap::new(),
        }
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn charts(&self) -> &[String] {
        &self.charts
    }

    pub fn transition(&self, a: usize, b: usize) -> Option<&RatFunc> {
        if a == b {
            return None;
        }
        self.transitions.get(&(a, b))
    }

    /// Whether this is the two-chart P^1 atlas where all exact work happens.
    pub fn is_standard_p1(&self) -> bool {
        self.genus == 0
            && self.charts.len() == 2
            && self.transition(0, 1) == Some(&RatFunc::new(Poly::one(), Poly::x()))
    }

    fn check(&self) -> Result<()> {
        let x = RatFunc::x();
        for (&(a, b), t) in &self.transitions {
            if a >= self.charts.len() || b >= self.charts.len() || a == b {
                return Err(Error::InvalidCocycle(format!("bad chart pair ({a}, {b})")));
            }
            let back = self.transitions.get(&(b, a)).ok_or_else(|| {
                Error::InvalidCocycle(format!("missing inverse transition ({b}, {a})"))
            })?;
            if back.compose(t) != x {
                return Err(Error::InvalidCocycle(format!(
                    "transition ({a}, {b}) is not inverted by ({b}, {a})"
                )));
            }
        }
        for (&(a, b), tab) in &self.transitions {
            for (&(b2, c), tbc) in &self.transitions {
                if b2 != b || c == a {
                    continue;
                }
                if let Some(tac) = self.transitions.get(&(a, c)) {
                    if &tbc.compose(tab) != tac {
                        return Err(Error::InvalidCocycle(format!(
                            "triple overlap ({a}, {b}, {c}) fails"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Line bundle given by transition functions `g_{ab}` written in the
/// coordinate of chart `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineBundleCocycle {
    base: BaseAtlas,
    transitions: BTreeMap<(usize, usize), RatFunc>,
    degree: i64,
}

impl LineBundleCocycle {
    /// Builds and validates a cocycle on the standard P^1 atlas from `g_01`.
    /// `g_10` is derived; the declared degree must match the computed one.
    pub fn on_p1(g01: RatFunc, declared_degree: i64) -> Result<Self> {
        let base = BaseAtlas::projective_line();
        if g01.is_zero() {
            return Err(Error::InvalidCocycle("transition function is zero".into()));
        }
        let computed = monomial_exponent(&g01).ok_or_else(|| {
            Error::InvalidCocycle(format!(
                "g_01 = {g01} vanishes or has a pole on the overlap C*"
            ))
        })?;
        if computed != declared_degree {
            return Err(Error::InvalidCocycle(format!(
                "declared degree {declared_degree} but cocycle has degree {computed}"
            )));
        }
        let t01 = base.transition(0, 1).cloned().expect("standard atlas");
        let t10 = base.transition(1, 0).cloned().expect("standard atlas");
        let g10 = RatFunc::one() / g01.compose(&t10);
        debug_assert_eq!(g01.clone() * g10.compose(&t01), RatFunc::one());
        let mut transitions = BTreeMap::new();
        transitions.insert((0, 1), g01);
        transitions.insert((1, 0), g10);
        Ok(LineBundleCocycle {
            base,
            transitions,
            degree: declared_degree,
        })
    }

    /// `O(d)` on P^1 with `g_01 = x^d`.
    pub fn o(d: i64) -> Self {
        Self::on_p1(x_power(d), d).expect("x^d is a valid cocycle")
    }

    pub fn base(&self) -> &BaseAtlas {
        &self.base
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn transition(&self, a: usize, b: usize) -> Option<&RatFunc> {
        self.transitions.get(&(a, b))
    }

    /// Tensor product, transitions multiplied.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.base != other.base {
            return Err(Error::InvalidCocycle("bundles live on different atlases".into()));
        }
        let g = self.transitions[&(0, 1)].clone() * other.transitions[&(0, 1)].clone();
        Self::on_p1(g, self.degree + other.degree)
    }
}

/// `c x^k`, `k` possibly negative.
pub fn x_power(k: i64) -> RatFunc {
    let m = Poly::monomial(int(1), k.unsigned_abs() as usize);
    if k >= 0 {
        RatFunc::from_poly(m)
    } else {
        RatFunc::new(Poly::one(), m)
    }
}

/// `Some(k)` when `r = c x^k` with `c != 0`, i.e. `r` is a unit on C*.
pub(crate) fn monomial_exponent(r: &RatFunc) -> Option<i64> {
    let mono = |p: &Poly<Rational>| -> Option<i64> {
        let d = p.degree()?;
        (p.valuation()? == d).then_some(d as i64)
    };
    Some(mono(r.numer())? - mono(r.denom())?)
}
