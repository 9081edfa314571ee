//! Numerical continuation of the sheets `eta(x)` of a spectral cover along
//! paths in the base, and the resulting monodromy permutations.

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::algebra::roots::complex_roots;
use crate::algebra::Poly;
use crate::error::{Error, Result};
use crate::BiPoly;

/// Fibre polynomial in `eta` over a complex base point.
pub fn fibre_at(p: &BiPoly, x: Complex64) -> Poly<Complex64> {
    let to_c = |q: &crate::Rational| Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0);
    Poly::new(p.eta_coeffs().iter().map(|c| c.eval_with(&x, to_c)).collect())
}

fn min_separation(zs: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..zs.len() {
        for j in i + 1..zs.len() {
            best = best.min((zs[i] - zs[j]).norm());
        }
    }
    best
}

/// Assigns each old root to a distinct new root if every old root has a
/// clearly nearest new root.
fn match_roots(old: &[Complex64], new: &[Complex64]) -> Option<Vec<Complex64>> {
    let sep = min_separation(old).min(min_separation(new));
    let mut used = vec![false; new.len()];
    let mut out = Vec::with_capacity(old.len());
    for z in old {
        let (k, d) = new
            .iter()
            .enumerate()
            .map(|(k, w)| (k, (z - w).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))?;
        if used[k] || (sep.is_finite() && d > 0.25 * sep) {
            return None;
        }
        used[k] = true;
        out.push(new[k]);
    }
    Some(out)
}

/// Continues the roots `start` (over `path(0)`) to `path(1)`.
pub fn track(p: &BiPoly, path: &dyn Fn(f64) -> Complex64, start: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut t: f64 = 0.0;
    let mut h: f64 = 1.0 / 64.0;
    let mut current = start.to_vec();
    while t < 1.0 {
        let t1 = (t + h).min(1.0);
        let roots = complex_roots(&fibre_at(p, path(t1)))?;
        if roots.len() != current.len() {
            return Err(Error::Numerical("fibre degree dropped along a path".into()));
        }
        match match_roots(&current, &roots) {
            Some(next) => {
                current = next;
                t = t1;
                h = (h * 2.0).min(1.0 / 32.0);
            }
            None => {
                h /= 2.0;
                if h < 1e-10 {
                    return Err(Error::Numerical("path passes too close to a branch point".into()));
                }
            }
        }
    }
    Ok(current)
}

/// Permutation `sigma` with `end[i] = start[sigma[i]]` after a closed loop.
pub fn loop_permutation(p: &BiPoly, path: &dyn Fn(f64) -> Complex64, start: &[Complex64]) -> Result<Vec<usize>> {
    let end = track(p, path, start)?;
    match_roots(&end, start)
        .map(|matched| {
            matched
                .iter()
                .map(|z| start.iter().position(|w| w == z).expect("matched root"))
                .collect()
        })
        .ok_or_else(|| Error::Numerical("loop did not close up on the fibre".into()))
}

pub fn cycle_lengths(sigma: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; sigma.len()];
    let mut out = Vec::new();
    for i in 0..sigma.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = sigma[j];
            len += 1;
        }
        out.push(len);
    }
    out.sort_unstable();
    out
}

/// Monodromy of the cover around `x = infinity` and around each critical
/// point, all based at one point of a large circle.
#[derive(Clone, Debug)]
pub struct Monodromy {
    pub base: Complex64,
    pub at_infinity: Vec<usize>,
    pub around: Vec<(Complex64, Vec<usize>)>,
}

impl Monodromy {
    pub fn is_transitive(&self) -> bool {
        let n = self.at_infinity.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while parent[r] != r {
                r = parent[r];
            }
            parent[i] = r;
            r
        }
        let perms = std::iter::once(&self.at_infinity).chain(self.around.iter().map(|(_, s)| s));
        for s in perms {
            for (i, &j) in s.iter().enumerate() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
        let root = find(&mut parent, 0);
        (0..n).all(|i| find(&mut parent, i) == root)
    }
}

/// `critical` must contain every base point where the fibre degenerates
/// (roots of the discriminant, which include the poles).
pub fn monodromy(p: &BiPoly, critical: &[Complex64]) -> Result<Monodromy> {
    let reach = critical.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let big = 2.0 * (1.0 + reach);
    let theta0 = 0.123_456_7;
    let base = Complex64::from_polar(big, theta0);
    let start = complex_roots(&fibre_at(p, base))?;
    let circle = move |t: f64| Complex64::from_polar(big, theta0 + 2.0 * std::f64::consts::PI * t);
    let at_infinity = loop_permutation(p, &circle, &start)?;
    let mut spacing = f64::INFINITY;
    for i in 0..critical.len() {
        for j in i + 1..critical.len() {
            spacing = spacing.min((critical[i] - critical[j]).norm());
        }
    }
    let rho = if spacing.is_finite() { 0.3 * spacing } else { 0.5 };
    let mut around = Vec::new();
    for &c in critical {
        let dir = (c - base) / (c - base).norm();
        let entry = c - dir * rho;
        let lasso = move |t: f64| {
            if t < 1.0 / 3.0 {
                base + (entry - base) * (3.0 * t)
            } else if t < 2.0 / 3.0 {
                let s = 3.0 * t - 1.0;
                c + (entry - c) * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * s)
            } else {
                entry + (base - entry) * (3.0 * t - 2.0)
            }
        };
        around.push((c, loop_permutation(p, &lasso, &start)?));
    }
    Ok(Monodromy {
        base,
        at_infinity,
        around,
    })
}

/// Complex roots of a nonzero exact polynomial, deduplicated through its
/// square-free part.
pub fn distinct_complex_roots(f: &crate::UniPoly) -> Result<Vec<Complex64>> {
    if f.is_zero() {
        return Err(Error::Numerical("roots of the zero polynomial".into()));
    }
    let sf = f.square_free_part();
    complex_roots(&crate::algebra::roots::to_complex_poly(&sf))
}
