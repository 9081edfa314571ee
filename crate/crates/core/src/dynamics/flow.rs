//! Hamiltonian flows `dA_i/dt = [grad_i H, A_i]` integrated with classical
//! fixed-step RK4 in complex doubles, with isospectral drift monitoring.

use num_complex::Complex64;
use serde::Serialize;

use super::bracket::matrix_gradient;
use super::hamiltonians::HamiltonianSet;
use super::phase::{to_c64, unflatten, Layout, PhasePoint};
use crate::error::{Error, Result};
use crate::{CMatrix, QPoly};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowReport {
    pub steps: usize,
    pub duration: f64,
    pub dt: f64,
    /// Max over the trajectory of the largest change in any coefficient of `P`.
    pub spectral_drift: f64,
    /// Max change of the trace residues `r_i = tr A_i`.
    pub trace_drift: f64,
    /// Largest 2x2 minor of a residue that started with rank one.
    pub rank_one_defect: f64,
    /// `(t, spectral drift at t)` samples, at most about 100 of them.
    pub samples: Vec<(f64, f64)>,
    #[serde(skip)]
    pub final_coords: Vec<Complex64>,
}

struct VectorField {
    layout: Layout,
    grad: Vec<Vec<Vec<QPoly>>>,
}

impl VectorField {
    fn new(h: &QPoly, layout: Layout) -> Self {
        VectorField { layout, grad: (0..layout.poles).map(|i| matrix_gradient(h, layout, i)).collect() }
    }

    fn eval(&self, coords: &[Complex64]) -> Vec<Complex64> {
        let n = self.layout.n;
        let a = unflatten(self.layout, coords);
        let mut out = Vec::with_capacity(coords.len());
        for (i, ai) in a.iter().enumerate() {
            let g = CMatrix::from_fn(n, n, |r, c| self.grad[i][r][c].eval_with(coords, to_c64));
            let d = g.clone() * ai.clone() - ai.clone() * g;
            out.extend_from_slice(d.entries());
        }
        // A promoted constant term does not move.
        out.resize(coords.len(), Complex64::new(0.0, 0.0));
        out
    }
}

fn axpy(x: &[Complex64], h: f64, k: &[Complex64]) -> Vec<Complex64> {
    x.iter().zip(k).map(|(a, b)| a + b * h).collect()
}

fn rk4_step(f: &VectorField, x: &[Complex64], h: f64) -> Vec<Complex64> {
    let k1 = f.eval(x);
    let k2 = f.eval(&axpy(x, h / 2.0, &k1));
    let k3 = f.eval(&axpy(x, h / 2.0, &k2));
    let k4 = f.eval(&axpy(x, h, &k3));
    (0..x.len())
        .map(|i| x[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0))
        .collect()
}

fn spectral_coeffs(set: &HamiltonianSet, coords: &[Complex64]) -> Vec<Complex64> {
    set.by_eta
        .iter()
        .flat_map(|c| c.coeffs().iter().map(|q| q.eval_with(coords, to_c64)))
        .collect()
}

fn traces(layout: Layout, coords: &[Complex64]) -> Vec<Complex64> {
    (0..layout.poles)
        .map(|i| (0..layout.n).map(|a| coords[layout.var(i, a, a)]).sum())
        .collect()
}

fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn max_minor(m: &CMatrix) -> f64 {
    let n = m.rows();
    let mut best: f64 = 0.0;
    for r1 in 0..n {
        for r2 in r1 + 1..n {
            for c1 in 0..n {
                for c2 in c1 + 1..n {
                    let d = m[(r1, c1)] * m[(r2, c2)] - m[(r1, c2)] * m[(r2, c1)];
                    best = best.max(d.norm());
                }
            }
        }
    }
    best
}

/// Integrates the flow of `h` from `start` for time `duration`, monitoring
/// the coefficients of the spectral polynomial of `monitored`.
pub fn hamiltonian_flow(
    h: &QPoly,
    monitored: &HamiltonianSet,
    start: &PhasePoint,
    duration: f64,
    dt: f64,
) -> Result<FlowReport> {
    if !(duration > 0.0 && duration.is_finite()) || !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidFlow(format!(
            "duration and step must be positive, got T = {duration}, dt = {dt}"
        )));
    }
    let layout = monitored.layout;
    if !start.layout().same_shape(&layout) {
        return Err(Error::InvalidPhasePoint("phase point does not match the Hamiltonian family".into()));
    }
    let field = VectorField::new(h, layout);
    let rank_one: Vec<usize> = (0..layout.poles)
        .filter(|&i| start.residues[i].rank() == 1)
        .collect();
    let mut x: Vec<Complex64> = start.coords_in(layout).iter().map(to_c64).collect();
    let p0 = spectral_coeffs(monitored, &x);
    let r0 = traces(layout, &x);
    let steps = (duration / dt).ceil() as usize;
    let every = steps.div_ceil(100).max(1);
    let mut report = FlowReport {
        steps,
        duration,
        dt,
        spectral_drift: 0.0,
        trace_drift: 0.0,
        rank_one_defect: 0.0,
        samples: vec![(0.0, 0.0)],
        final_coords: Vec::new(),
    };
    let mut t = 0.0;
    for s in 0..steps {
        let step = dt.min(duration - t);
        x = rk4_step(&field, &x, step);
        t += step;
        if x.iter().any(|z| !z.is_finite()) {
            return Err(Error::Numerical(format!("flow blew up at t = {t}")));
        }
        let drift = max_diff(&spectral_coeffs(monitored, &x), &p0);
        report.spectral_drift = report.spectral_drift.max(drift);
        report.trace_drift = report.trace_drift.max(max_diff(&traces(layout, &x), &r0));
        let mats = unflatten(layout, &x);
        for &i in &rank_one {
            report.rank_one_defect = report.rank_one_defect.max(max_minor(&mats[i]));
        }
        if (s + 1) % every == 0 || s + 1 == steps {
            report.samples.push((t, drift));
        }
    }
    report.final_coords = x;
    Ok(report)
}

/// Observed convergence orders of the spectral drift between successive
/// step sizes.
pub fn observed_order(
    h: &QPoly,
    monitored: &HamiltonianSet,
    start: &PhasePoint,
    duration: f64,
    dts: &[f64],
) -> Result<Vec<f64>> {
    let drifts = dts
        .iter()
        .map(|&dt| hamiltonian_flow(h, monitored, start, duration, dt).map(|r| r.spectral_drift))
        .collect::<Result<Vec<f64>>>()?;
    Ok((1..dts.len())
        .map(|k| (drifts[k - 1] / drifts[k]).ln() / (dts[k - 1] / dts[k]).ln())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{casimirs, hamiltonians};
    use num_traits::Zero;
    use crate::{int, QMatrix};

    fn q(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    fn fixture() -> PhasePoint {
        PhasePoint::new(
            vec![int(0), int(1)],
            vec![q(&[&[1, 2], &[1, 2]]), q(&[&[-1, 1], &[-2, 2]])],
            q(&[&[0, 1], &[3, 0]]),
        )
        .unwrap()
    }

    #[test]
    fn casimir_flow_is_stationary() {
        let pt = fixture();
        let set = hamiltonians(&pt.poles, &pt.constant).unwrap();
        let tr = casimirs(set.layout).remove(0).1;
        let r = hamiltonian_flow(&tr, &set, &pt, 0.5, 0.1).unwrap();
        assert_eq!(max_diff(&r.final_coords, &pt.coords_complex()), 0.0);
    }

    #[test]
    fn spectral_flow_is_isospectral() {
        let pt = fixture();
        let set = hamiltonians(&pt.poles, &pt.constant).unwrap();
        let h = set.get(0, 0).unwrap().clone();
        let r = hamiltonian_flow(&h, &set, &pt, 0.2, 1e-3).unwrap();
        assert!(r.spectral_drift < 1e-8, "{}", r.spectral_drift);
        assert!(r.rank_one_defect < 1e-8);
        let bad = set.layout.entry(0, 0, 1);
        let r = hamiltonian_flow(&bad, &set, &pt, 0.2, 1e-3).unwrap();
        assert!(r.spectral_drift > 1e-3);
        assert!(matches!(hamiltonian_flow(&h, &set, &pt, 1.0, 0.0), Err(Error::InvalidFlow(_))));
    }

    #[test]
    fn zero_field_has_no_drift() {
        let pt = fixture();
        let set = hamiltonians(&pt.poles, &pt.constant).unwrap();
        let r = hamiltonian_flow(&QPoly::zero(), &set, &pt, 0.1, 0.05).unwrap();
        assert_eq!(r.spectral_drift, 0.0);
    }
}
