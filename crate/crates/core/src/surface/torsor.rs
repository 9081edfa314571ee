//! The affine bundle of connections on `L`, its tautological connection and
//! the compactified Poisson surface.
//!
//! Fibre coordinates: over chart `a` a connection on `L` is `d + eta_a dx_a`
//! in the frame of chart `a`. A frame change by `g_ab` shifts the connection
//! form by `d log g_ab`, so `eta_b dx_b = (eta_a + sigma_ab) dx_a` with
//! `sigma_ab = g_ab' / g_ab`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::atlas::{BaseAtlas, LineBundleCocycle};
use crate::algebra::{Poly, RationalFunction};
use crate::error::{Error, Result};
use crate::{RatFunc, Rational};

/// Functions of a fibre coordinate with coefficients in `Q(x)`.
pub type FiberFunction = RationalFunction<RatFunc>;

#[derive(Clone, Debug, PartialEq)]
pub struct TorsorAtlas {
    base: BaseAtlas,
    shifts: BTreeMap<(usize, usize), RatFunc>,
}

/// Build the torsor of connections from the line bundle's transitions.
pub fn build_torsor(l: &LineBundleCocycle) -> Result<TorsorAtlas> {
    let mut shifts = BTreeMap::new();
    for a in 0..l.base().charts().len() {
        for b in 0..l.base().charts().len() {
            if let Some(g) = l.transition(a, b) {
                if g.is_zero() {
                    return Err(Error::InvalidCocycle(format!(
                        "transition ({a}, {b}) is not invertible"
                    )));
                }
                shifts.insert((a, b), g.log_derivative());
            }
        }
    }
    let t = TorsorAtlas {
        base: l.base().clone(),
        shifts,
    };
    t.check_cocycle()?;
    Ok(t)
}

/// `f(t(x)) * t'(x)`: a 1-form coefficient moved from chart `b` to chart `a`.
fn transport(f: &RatFunc, t: &RatFunc) -> RatFunc {
    f.compose(t) * t.derivative()
}

fn fiber_var() -> FiberFunction {
    FiberFunction::x()
}

fn fiber_const(c: RatFunc) -> FiberFunction {
    FiberFunction::constant(c)
}

/// Rewrites the `Q(x_b)` coefficients of `f` in terms of `x_a` via `x_b = t(x_a)`.
fn substitute_base(f: &FiberFunction, t: &RatFunc) -> FiberFunction {
    let num = f.numer().map(|c| c.compose(t));
    let den = f.denom().map(|c| c.compose(t));
    FiberFunction::new(num, den)
}

impl TorsorAtlas {
    /// Torsor on the standard P^1 atlas from an arbitrary shift `sigma_01`,
    /// which must be holomorphic on the overlap C*. `sigma_10` is derived.
    pub fn from_shift_p1(sigma01: RatFunc) -> Result<Self> {
        let base = BaseAtlas::projective_line();
        if !is_x_power(sigma01.denom()) {
            return Err(Error::InvalidCocycle(format!(
                "shift {sigma01} has a pole on the overlap C*"
            )));
        }
        let t10 = base.transition(1, 0).cloned().expect("standard atlas");
        let sigma10 = -transport(&sigma01, &t10);
        let mut shifts = BTreeMap::new();
        shifts.insert((0, 1), sigma01);
        shifts.insert((1, 0), sigma10);
        let t = TorsorAtlas { base, shifts };
        t.check_cocycle()?;
        Ok(t)
    }

    pub fn base(&self) -> &BaseAtlas {
        &self.base
    }

    pub fn shift(&self, a: usize, b: usize) -> Option<&RatFunc> {
        self.shifts.get(&(a, b))
    }

    /// Additive cocycle identity `sigma_ab + t_ab^* sigma_bc = sigma_ac`
    /// (with `sigma_aa = 0`), checked exactly on all pairs and triples.
    pub fn check_cocycle(&self) -> Result<()> {
        let zero = RatFunc::zero();
        for (&(a, b), sab) in &self.shifts {
            let tab = self.base.transition(a, b).ok_or_else(|| {
                Error::InvalidCocycle(format!("shift ({a}, {b}) without base transition"))
            })?;
            for c in 0..self.base.charts().len() {
                if c == b {
                    continue;
                }
                let Some(sbc) = self.shifts.get(&(b, c)) else {
                    continue;
                };
                let sac = if c == a { &zero } else {
                    match self.shifts.get(&(a, c)) {
                        Some(s) => s,
                        None => continue,
                    }
                };
                if sab.clone() + transport(sbc, tab) != *sac {
                    return Err(Error::InvalidCocycle(format!(
                        "additive cocycle fails on ({a}, {b}, {c})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Replaces `sigma_01` by `sigma_01 + tau_0 - tau_1`, with `tau_a` a
    /// holomorphic 1-form coefficient on chart `a` (a polynomial).
    pub fn coboundary(&self, tau0: &Poly<Rational>, tau1: &Poly<Rational>) -> Result<Self> {
        self.require_p1()?;
        let t01 = self.base.transition(0, 1).expect("standard atlas");
        let s = self.shifts[&(0, 1)].clone() + RatFunc::from_poly(tau0.clone())
            - transport(&RatFunc::from_poly(tau1.clone()), t01);
        Self::from_shift_p1(s)
    }

    fn require_p1(&self) -> Result<()> {
        if self.base.is_standard_p1() {
            Ok(())
        } else {
            Err(Error::UnsupportedAtlas(format!(
                "exact torsor computations need the two-chart P^1 atlas, got {} charts",
                self.base.charts().len()
            )))
        }
    }

    /// The fibre coordinate change from `from` to `to`, together with the
    /// base coordinate change, both written in the coordinates of `from`.
    pub fn fiber_map(&self, from: ChartRef, to: ChartRef) -> Result<(RatFunc, FiberFunction)> {
        let into_eta = match from.fiber {
            Fiber::Eta => fiber_var(),
            Fiber::Mu => FiberFunction::one() / fiber_var(),
        };
        let out_of_eta = match to.fiber {
            Fiber::Eta => fiber_var(),
            Fiber::Mu => FiberFunction::one() / fiber_var(),
        };
        let (t, across) = if from.chart == to.chart {
            (RatFunc::x(), fiber_var())
        } else {
            let t = self
                .base
                .transition(from.chart, to.chart)
                .ok_or_else(|| {
                    Error::UnsupportedAtlas(format!(
                        "charts {} and {} do not overlap",
                        from.chart, to.chart
                    ))
                })?
                .clone();
            let s = self.shifts.get(&(from.chart, to.chart)).cloned().unwrap_or_else(RatFunc::zero);
            let tp = t.derivative();
            // eta_b = (eta_a + sigma_ab) / t'
            let phi = (fiber_var() + fiber_const(s)) * fiber_const(RatFunc::one() / tp);
            (t, phi)
        };
        let total = out_of_eta.compose(&across.compose(&into_eta));
        Ok((t, total))
    }

    pub fn chart_refs(&self) -> Vec<ChartRef> {
        (0..self.base.charts().len())
            .flat_map(|c| {
                [Fiber::Eta, Fiber::Mu]
                    .into_iter()
                    .map(move |fiber| ChartRef { chart: c, fiber })
            })
            .collect()
    }
}

fn is_x_power(p: &Poly<Rational>) -> bool {
    p.degree().is_some() && p.valuation() == p.degree()
}

/// Which fibre coordinate a chart of the surface uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Fiber {
    Eta,
    /// `mu = 1 / eta`, the chart at the divisor at infinity.
    Mu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChartRef {
    pub chart: usize,
    pub fiber: Fiber,
}

impl ChartRef {
    pub fn eta(chart: usize) -> Self {
        ChartRef {
            chart,
            fiber: Fiber::Eta,
        }
    }

    pub fn mu(chart: usize) -> Self {
        ChartRef {
            chart,
            fiber: Fiber::Mu,
        }
    }
}

/// The Čech class of the shift cocycle, normalized as `Res_{x=0} sigma_01`.
pub fn torsor_class(t: &TorsorAtlas) -> Result<Rational> {
    t.require_p1()?;
    Ok(t.shifts[&(0, 1)].residue(&Rational::zero()))
}

/// A splitting: per-chart connection coefficients `eta_a(x_a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GlobalSection {
    pub eta: Vec<RatFunc>,
}

/// A global holomorphic section of the torsor, if one exists.
///
/// Writing `sigma_01 = sum c_k x^k`, chart 0 forces `eta_0 = -(sum_{k>=0})`
/// and chart 1 then needs `c_{-1} = 0`, giving
/// `eta_1(w) = -sum_{k<=-2} c_k w^{-k-2}`.
pub fn global_section(t: &TorsorAtlas) -> Result<Option<GlobalSection>> {
    t.require_p1()?;
    let sigma = &t.shifts[&(0, 1)];
    let k = sigma.denom().degree().unwrap_or(0) as i64;
    let coeff = |j: i64| -> Rational {
        if j + k < 0 {
            Rational::zero()
        } else {
            sigma.numer().coeff((j + k) as usize)
        }
    };
    if !coeff(-1).is_zero() {
        return Ok(None);
    }
    let top = sigma.numer().degree().map_or(-1, |d| d as i64 - k);
    let eta0 = Poly::new((0..=top).map(|j| -coeff(j)).collect());
    let eta1 = Poly::new((2..=k).map(|j| -coeff(-j)).collect::<Vec<_>>());
    // Index i of eta1 is w^i, coming from c_{-(i+2)}.
    let section = GlobalSection {
        eta: vec![RatFunc::from_poly(eta0), RatFunc::from_poly(eta1)],
    };
    if !verify_section(t, &section)? {
        return Err(Error::Numerical("constructed splitting fails re-substitution".into()));
    }
    Ok(Some(section))
}

/// Checks `eta_1(t(x)) = (eta_0 + sigma_01) / t'(x)` exactly.
pub fn verify_section(t: &TorsorAtlas, s: &GlobalSection) -> Result<bool> {
    t.require_p1()?;
    let t01 = t.base.transition(0, 1).expect("standard atlas");
    let lhs = s.eta[1].compose(t01);
    let rhs = (s.eta[0].clone() + t.shifts[&(0, 1)].clone()) / t01.derivative();
    Ok(lhs == rhs && s.eta.iter().all(|e| e.is_polynomial()))
}

/// Coefficient of `d(fibre) ^ dx` in the curvature of the tautological
/// connection `d + eta dx`, computed as the fibre derivative of the
/// connection coefficient written in that chart.
pub fn curvature_form(chart: ChartRef) -> FiberFunction {
    let a = match chart.fiber {
        Fiber::Eta => fiber_var(),
        Fiber::Mu => FiberFunction::one() / fiber_var(),
    };
    a.derivative()
}

/// Coefficient `b` of the Poisson bivector `b dx ^ d(fibre)`.
pub fn bivector(chart: ChartRef) -> FiberFunction {
    match chart.fiber {
        Fiber::Eta => FiberFunction::one(),
        Fiber::Mu => -(fiber_var() * fiber_var()),
    }
}

/// Pulls the curvature of chart `to` back to chart `from`.
pub fn transported_curvature(t: &TorsorAtlas, from: ChartRef, to: ChartRef) -> Result<FiberFunction> {
    let (base_map, phi) = t.fiber_map(from, to)?;
    let c_to = substitute_base(&curvature_form(to), &base_map).compose(&phi);
    Ok(c_to * phi.derivative() * fiber_const(base_map.derivative()))
}

/// Pushes the bivector of chart `from` forward to chart `to`, written in
/// `from` coordinates, next to chart `to`'s own bivector in those
/// coordinates.
pub fn transported_bivector(
    t: &TorsorAtlas,
    from: ChartRef,
    to: ChartRef,
) -> Result<(FiberFunction, FiberFunction)> {
    let (base_map, phi) = t.fiber_map(from, to)?;
    let pushed = bivector(from) * phi.derivative() * fiber_const(base_map.derivative());
    let native = substitute_base(&bivector(to), &base_map).compose(&phi);
    Ok((pushed, native))
}

/// The compactified surface: torsor charts plus the `mu` charts.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonSurfaceAtlas {
    pub torsor: TorsorAtlas,
    pub bivectors: BTreeMap<ChartRef, FiberFunction>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceCheck {
    /// Curvature coefficient is 1 in every finite chart.
    pub liouville: bool,
    /// Pulled-back curvature agrees with the native one on every overlap.
    pub curvature_transport: bool,
    /// Pushed-forward bivector agrees with the native one on every overlap.
    pub bivector_transport: bool,
    /// Order of the bivector at `mu = 0` in each `mu` chart (should be 2).
    pub mu_orders: Vec<i64>,
    /// Curvature times bivector is 1 in every chart.
    pub inverse_pairing: bool,
}

impl SurfaceCheck {
    pub fn passed(&self) -> bool {
        self.liouville
            && self.curvature_transport
            && self.bivector_transport
            && self.inverse_pairing
            && self.mu_orders.iter().all(|&k| k == 2)
    }
}

pub fn compactify(t: &TorsorAtlas) -> PoissonSurfaceAtlas {
    PoissonSurfaceAtlas {
        torsor: t.clone(),
        bivectors: t.chart_refs().into_iter().map(|c| (c, bivector(c))).collect(),
    }
}

impl PoissonSurfaceAtlas {
    /// Verifies all chart identities symbolically.
    pub fn check(&self) -> Result<SurfaceCheck> {
        let t = &self.torsor;
        let refs = t.chart_refs();
        let mut out = SurfaceCheck {
            liouville: true,
            curvature_transport: true,
            bivector_transport: true,
            mu_orders: Vec::new(),
            inverse_pairing: true,
        };
        for &a in &refs {
            let omega = curvature_form(a);
            if a.fiber == Fiber::Eta && omega != FiberFunction::one() {
                out.liouville = false;
            }
            if omega * self.bivectors[&a].clone() != FiberFunction::one() {
                out.inverse_pairing = false;
            }
            if a.fiber == Fiber::Mu {
                let ord = self.bivectors[&a].order_at(&RatFunc::zero()).unwrap_or(i64::MAX);
                out.mu_orders.push(ord);
            }
            for &b in &refs {
                if a == b || (a.chart != b.chart && t.base().transition(a.chart, b.chart).is_none()) {
                    continue;
                }
                if transported_curvature(t, a, b)? != curvature_form(a) {
                    out.curvature_transport = false;
                }
                let (pushed, native) = transported_bivector(t, a, b)?;
                if pushed != native {
                    out.bivector_transport = false;
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::{int, rat};
    use crate::surface::atlas::x_power;

    fn sigma_of(d: i64) -> RatFunc {
        build_torsor(&LineBundleCocycle::o(d)).unwrap().shifts[&(0, 1)].clone()
    }

    #[test]
    fn shift_is_log_derivative() {
        assert!(sigma_of(0).is_zero());
        assert_eq!(sigma_of(3), x_power(-1) * RatFunc::constant(int(3)));
        let sum = build_torsor(&LineBundleCocycle::o(2).tensor(&LineBundleCocycle::o(-5)).unwrap())
            .unwrap();
        assert_eq!(sum.shifts[&(0, 1)], sigma_of(2) + sigma_of(-5));
    }

    #[test]
    fn class_and_section_dichotomy() {
        for d in -3..=3 {
            let t = build_torsor(&LineBundleCocycle::o(d)).unwrap();
            assert_eq!(torsor_class(&t).unwrap(), int(d));
            assert_eq!(global_section(&t).unwrap().is_some(), d == 0);
        }
    }

    #[test]
    fn section_of_shifted_trivial_torsor() {
        // sigma = 2 + 1/x^3: class 0, splitting eta_0 = -2, eta_1 = -w
        let sigma = RatFunc::constant(int(2)) + x_power(-3);
        let t = TorsorAtlas::from_shift_p1(sigma).unwrap();
        let s = global_section(&t).unwrap().unwrap();
        assert_eq!(s.eta[0], RatFunc::constant(int(-2)));
        assert_eq!(s.eta[1], -RatFunc::x());
    }

    #[test]
    fn coboundary_keeps_class() {
        let t = build_torsor(&LineBundleCocycle::o(2)).unwrap();
        let tau0 = Poly::new(vec![rat(1, 3), int(4)]);
        let tau1 = Poly::new(vec![int(-7), int(0), rat(5, 2)]);
        let t2 = t.coboundary(&tau0, &tau1).unwrap();
        assert_ne!(t2.shifts[&(0, 1)], t.shifts[&(0, 1)]);
        assert_eq!(torsor_class(&t2).unwrap(), int(2));
    }

    #[test]
    fn shift_with_pole_off_origin_rejected() {
        let bad = RatFunc::simple_pole(int(1));
        assert!(TorsorAtlas::from_shift_p1(bad).is_err());
    }

    #[test]
    fn surface_identities() {
        for d in [-2, 0, 3] {
            let p = compactify(&build_torsor(&LineBundleCocycle::o(d)).unwrap());
            let c = p.check().unwrap();
            assert!(c.passed(), "{d}: {c:?}");
            assert_eq!(c.mu_orders, vec![2, 2]);
        }
        // -mu^{-2} in the mu chart
        let mu = curvature_form(ChartRef::mu(0));
        assert_eq!(mu.order_at(&RatFunc::zero()), Some(-2));
        assert!(bivector(ChartRef::mu(1)).eval(&RatFunc::zero()).unwrap().is_zero());
    }
}
