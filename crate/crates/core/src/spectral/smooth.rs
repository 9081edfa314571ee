//! Smoothness and genus of spectral curves.
//!
//! Singular points lie over common roots of `Res_eta(P, P_eta)` and
//! `Res_eta(P, P_x)` that are multiple roots of the discriminant (a smooth
//! point contributes `e - 1` to its order, a singular one more). Rational
//! candidates are decided exactly by a gcd of fibre polynomials; the rest
//! are checked in complex doubles and flagged as numeric.

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::curve::SpectralCurve;
use super::monodromy::{cycle_lengths, distinct_complex_roots, fibre_at, monodromy};
use super::Value;
use crate::algebra::roots::{complex_roots, rational_roots, to_complex_poly};
use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::{format_rational, BiPoly, Rational, UniPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct SingularPoint {
    /// `"eta"` for the finite chart, `"mu"` for the chart at infinity.
    pub chart: &'static str,
    pub x: Value,
    pub fibre: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothnessReport {
    pub smooth: bool,
    pub witnesses: Vec<SingularPoint>,
    /// Candidate base points decided exactly / numerically.
    pub exact_candidates: usize,
    pub numeric_candidates: usize,
}

fn linear(p: &Rational) -> UniPoly {
    Poly::new(vec![-p.clone(), Rational::one()])
}

/// Removes every factor `(x - p)` for the given points.
fn strip_points(f: &UniPoly, points: &[Rational]) -> UniPoly {
    let mut g = f.clone();
    for p in points {
        while !g.is_zero() && g.eval(p).is_zero() {
            g = g.div_rem(&linear(p)).0;
        }
    }
    g
}

/// Common fibre roots of `P`, `P_eta`, `P_x` over a rational base point.
fn exact_singular_fibre(p: &BiPoly, x0: &Rational) -> UniPoly {
    let f = p.at_x(x0);
    let fe = p.partial_eta().at_x(x0);
    let fx = p.partial_x().at_x(x0);
    f.gcd(&fe).gcd(&fx)
}

fn fibre_values(common: &UniPoly) -> Vec<Value> {
    let exact = rational_roots(common);
    if exact.len() == common.degree().unwrap_or(0) {
        return exact.into_iter().map(Value::Exact).collect();
    }
    complex_roots(&to_complex_poly(common))
        .map(|rs| rs.into_iter().map(Value::Approx).collect())
        .unwrap_or_default()
}

fn scale_of(f: &Poly<Complex64>) -> f64 {
    f.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max)
}

pub fn smoothness_check(s: &SpectralCurve) -> Result<SmoothnessReport> {
    let p = &s.p;
    let mut witnesses = Vec::new();
    let (mut exact_candidates, mut numeric_candidates) = (0, 0);
    let disc = p.discriminant_in_eta()?;
    if disc.is_zero() {
        // Repeated factor: every point of it is singular; report one.
        let x0 = (0..)
            .map(|k: i64| Rational::from_integer(k.into()))
            .find(|q| !p.eta_coeff(s.degree).eval(q).is_zero())
            .expect("leading coefficient has finitely many roots");
        let common = p.at_x(&x0).gcd(&p.partial_eta().at_x(&x0));
        for v in fibre_values(&common) {
            witnesses.push(SingularPoint { chart: "eta", x: Value::Exact(x0.clone()), fibre: v });
        }
        return Ok(SmoothnessReport { smooth: false, witnesses, exact_candidates: 1, numeric_candidates: 0 });
    }
    let px = p.partial_x();
    let rx = p.resultant_eta(&px);
    let g = if rx.is_zero() { disc.clone() } else { disc.gcd(&rx) };
    let candidates = g.gcd(&disc.derivative());
    // Poles are always checked exactly, in both charts.
    let mut rational: Vec<Rational> = s.poles.clone();
    for r in rational_roots(&candidates) {
        if !rational.contains(&r) {
            rational.push(r);
        }
    }
    for x0 in &rational {
        exact_candidates += 1;
        let common = exact_singular_fibre(p, x0);
        if common.is_zero() {
            // The whole fibre lies on the curve.
            witnesses.push(SingularPoint {
                chart: "eta",
                x: Value::Exact(x0.clone()),
                fibre: Value::Exact(Rational::zero()),
            });
        } else if common.degree().unwrap_or(0) > 0 {
            for v in fibre_values(&common) {
                witnesses.push(SingularPoint { chart: "eta", x: Value::Exact(x0.clone()), fibre: v });
            }
        }
    }
    for pole in &s.poles {
        let q = &s.q;
        let at = |b: &BiPoly| b.at_x(pole).eval(&Rational::zero());
        let on_curve = at(q).is_zero();
        if on_curve && at(&q.partial_x()).is_zero() && at(&q.partial_eta()).is_zero() {
            witnesses.push(SingularPoint {
                chart: "mu",
                x: Value::Exact(pole.clone()),
                fibre: Value::Exact(Rational::zero()),
            });
        }
    }
    let irrational = strip_points(&candidates, &rational);
    if irrational.degree().unwrap_or(0) > 0 {
        let pe = p.partial_eta();
        for x0 in distinct_complex_roots(&irrational)? {
            numeric_candidates += 1;
            let f = fibre_at(p, x0);
            let (fe, fx) = (fibre_at(&pe, x0), fibre_at(&px, x0));
            let tol = 1e-9;
            for eta in complex_roots(&f)? {
                let small = |g: &Poly<Complex64>| g.eval(&eta).norm() <= tol * scale_of(g) * (1.0 + eta.norm()).powi(s.degree as i32);
                if small(&fe) && small(&fx) {
                    witnesses.push(SingularPoint { chart: "eta", x: Value::Approx(x0), fibre: Value::Approx(eta) });
                }
            }
        }
    }
    Ok(SmoothnessReport {
        smooth: witnesses.is_empty(),
        witnesses,
        exact_candidates,
        numeric_candidates,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenusReport {
    pub genus: i64,
    /// `sum (e - 1)` over finite non-pole points, over the poles (finite
    /// and infinity points), and over `x = infinity`.
    pub ramification_finite: usize,
    pub ramification_poles: usize,
    pub ramification_infinity: usize,
    /// Cycle type of the monodromy around `x = infinity`.
    pub infinity_cycles: Vec<usize>,
}

impl GenusReport {
    pub fn total_ramification(&self) -> usize {
        self.ramification_finite + self.ramification_poles + self.ramification_infinity
    }
}

/// Riemann-Hurwitz over `P^1`: `2 g - 2 = -2 n + R`.
pub fn genus(s: &SpectralCurve) -> Result<GenusReport> {
    let smooth = smoothness_check(s)?;
    if !smooth.smooth {
        let w = &smooth.witnesses[0];
        return Err(Error::SingularCurve(format!("singular point at x = {}, fibre = {}", w.x, w.fibre)));
    }
    let p = &s.p;
    let n = s.degree;
    let disc = p.discriminant_in_eta()?;
    let reduced = strip_points(&disc, &s.poles);
    let ramification_finite = reduced.degree().unwrap_or(0);
    // Repeated discriminant roots: make sure no point has e >= 3.
    let repeated = reduced.gcd(&reduced.derivative());
    if repeated.degree().unwrap_or(0) > 0 {
        let exact = rational_roots(&repeated);
        for x0 in &exact {
            let f = p.at_x(x0);
            if f.gcd(&f.derivative()).gcd(&f.derivative().derivative()).degree().unwrap_or(0) > 0 {
                return Err(Error::NonSimpleBranching(format!(
                    "ramification index >= 3 over x = {}",
                    format_rational(x0)
                )));
            }
        }
        let rest = strip_points(&repeated, &exact);
        if rest.degree().unwrap_or(0) > 0 {
            for x0 in distinct_complex_roots(&rest)? {
                let roots = complex_roots(&fibre_at(p, x0))?;
                for z in &roots {
                    let close = roots.iter().filter(|w| (*w - z).norm() < 1e-4 * (1.0 + z.norm())).count();
                    if close >= 3 {
                        return Err(Error::NonSimpleBranching(format!(
                            "ramification index >= 3 over x = {x0}"
                        )));
                    }
                }
            }
        }
    }
    let mut ramification_poles = 0;
    for pt in &s.infinity {
        let f = p.at_x(&pt.pole);
        if f.is_zero() {
            return Err(Error::SingularCurve(format!(
                "the fibre over x = {} is contained in the curve",
                format_rational(&pt.pole)
            )));
        }
        let finite = f.degree().unwrap_or(0) - f.square_free_part().degree().unwrap_or(0);
        let contact = s.q.at_x(&pt.pole).valuation().unwrap_or(0);
        if contact > 2 || f.gcd(&f.derivative()).gcd(&f.derivative().derivative()).degree().unwrap_or(0) > 0 {
            return Err(Error::NonSimpleBranching(format!(
                "ramification index >= 3 over the pole {}",
                format_rational(&pt.pole)
            )));
        }
        ramification_poles += finite + contact.saturating_sub(1);
    }
    let mut critical: Vec<Complex64> = distinct_complex_roots(&disc)?;
    for pole in &s.poles {
        let z = Value::Exact(pole.clone()).to_complex();
        if !critical.iter().any(|c| (c - z).norm() < 1e-12) {
            critical.push(z);
        }
    }
    let mono = monodromy(p, &critical)?;
    if !mono.is_transitive() {
        return Err(Error::Reducible(format!(
            "monodromy of the {n}-sheeted cover is not transitive"
        )));
    }
    let infinity_cycles = cycle_lengths(&mono.at_infinity);
    if infinity_cycles.iter().any(|&c| c > 2) {
        return Err(Error::NonSimpleBranching(format!(
            "monodromy at x = infinity has cycle type {infinity_cycles:?}"
        )));
    }
    let ramification_infinity = n - infinity_cycles.len();
    let total = ramification_finite + ramification_poles + ramification_infinity;
    if total % 2 != 0 {
        return Err(Error::Numerical(format!("odd total ramification {total}")));
    }
    Ok(GenusReport {
        genus: 1 + (total as i64 - 2 * n as i64) / 2,
        ramification_finite,
        ramification_poles,
        ramification_infinity,
        infinity_cycles,
    })
}
