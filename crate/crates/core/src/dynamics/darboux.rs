//! Finite-difference check that the divisor coordinates `(x_k, eta_k)` are
//! canonical for the Lie–Poisson bracket (rank two).

use num_complex::Complex64;
use serde::Serialize;

use super::bracket::lie_poisson_numeric;
use super::phase::{to_c64, Layout, PhasePoint};
use crate::algebra::roots::complex_roots;
use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::spectral::divisor::{cokernel_divisor, require_distinct};

pub const DEFAULT_STEP: f64 = 1e-5;
pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DarbouxReport {
    pub points: usize,
    pub step: f64,
    pub tol: f64,
    /// `{f_a, f_b}` for `f = (x_1..x_g, eta_1..eta_g)`, real and imaginary parts.
    pub matrix: Vec<Vec<(f64, f64)>>,
    /// Largest deviation from the canonical pattern.
    pub max_error: f64,
}

impl DarbouxReport {
    pub fn passed(&self) -> bool {
        self.max_error < self.tol
    }
}

/// Divisor coordinates at `coords`, matched to `reference` by nearest root.
fn divisor_coords(pt: &PhasePoint, layout: Layout, coords: &[Complex64], reference: &[Complex64]) -> Result<Vec<Complex64>> {
    let lin = |p: Complex64| Poly::new(vec![-p, Complex64::new(1.0, 0.0)]);
    let poles: Vec<Complex64> = pt.poles.iter().map(to_c64).collect();
    let d = poles.iter().fold(Poly::constant(Complex64::new(1.0, 0.0)), |acc, &p| acc * lin(p));
    let mut b = d.scale(&to_c64(&pt.constant[(0, 1)]));
    for i in 0..poles.len() {
        let cof = poles
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .fold(Poly::constant(Complex64::new(1.0, 0.0)), |acc, (_, &p)| acc * lin(p));
        b = b + cof.scale(&coords[layout.var(i, 0, 1)]);
    }
    let roots = complex_roots(&b)?;
    let mut xs = Vec::with_capacity(reference.len());
    for r in reference {
        let nearest = roots
            .iter()
            .min_by(|a, c| (*a - r).norm().total_cmp(&(*c - r).norm()))
            .copied()
            .ok_or_else(|| Error::Numerical("divisor point lost under perturbation".into()))?;
        xs.push(nearest);
    }
    let etas: Vec<Complex64> = xs
        .iter()
        .map(|&x| {
            poles.iter().enumerate().map(|(i, &p)| coords[layout.var(i, 0, 0)] / (x - p)).sum::<Complex64>()
                + to_c64(&pt.constant[(0, 0)])
        })
        .collect();
    Ok(xs.into_iter().chain(etas).collect())
}

/// Bracket matrix of the divisor coordinates with central differences of
/// step `step`.
pub fn darboux_matrix(pt: &PhasePoint, step: f64) -> Result<Vec<Vec<Complex64>>> {
    let layout = pt.layout();
    if layout.n != 2 {
        return Err(Error::Dimension(format!("divisor coordinates need rank 2, got {}", layout.n)));
    }
    let data = cokernel_divisor(&pt.to_higgs()?)?;
    if data.points.is_empty() {
        return Err(Error::NonGenericDivisor("empty divisor".into()));
    }
    if data.points.len() < data.degree {
        return Err(Error::NonGenericDivisor("coincident divisor points".into()));
    }
    require_distinct(&data.points, 1e-6)?;
    let reference: Vec<Complex64> = data.points.iter().map(|p| p.x.to_complex()).collect();
    let base = pt.coords_complex();
    let m = 2 * reference.len();
    let nv = layout.num_vars();
    let mut grads = vec![vec![Complex64::new(0.0, 0.0); nv]; m];
    for v in 0..nv {
        let mut plus = base.clone();
        let mut minus = base.clone();
        plus[v] += step;
        minus[v] -= step;
        let fp = divisor_coords(pt, layout, &plus, &reference)?;
        let fm = divisor_coords(pt, layout, &minus, &reference)?;
        for a in 0..m {
            grads[a][v] = (fp[a] - fm[a]) / (2.0 * step);
        }
    }
    Ok((0..m)
        .map(|a| (0..m).map(|b| lie_poisson_numeric(&grads[a], &grads[b], &base, layout)).collect())
        .collect())
}

/// `{x_j, x_k} = 0`, `{eta_j, eta_k} = 0`, `{x_j, eta_k} = delta_jk`.
pub fn darboux_check(pt: &PhasePoint, step: f64, tol: f64) -> Result<DarbouxReport> {
    let mat = darboux_matrix(pt, step)?;
    let g = mat.len() / 2;
    let mut max_error: f64 = 0.0;
    for a in 0..2 * g {
        for b in 0..2 * g {
            let expected = if a < g && b == a + g {
                1.0
            } else if b < g && a == b + g {
                -1.0
            } else {
                0.0
            };
            max_error = max_error.max((mat[a][b] - expected).norm());
        }
    }
    Ok(DarbouxReport {
        points: g,
        step,
        tol,
        matrix: mat.iter().map(|r| r.iter().map(|z| (z.re, z.im)).collect()).collect(),
        max_error,
    })
}
