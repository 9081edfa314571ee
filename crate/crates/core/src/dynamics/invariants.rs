//! Involution of the spectral Hamiltonians and the Casimirs of each factor.

use num_traits::Zero;
use serde::Serialize;

use super::bracket::bracket_from_partials;
use super::hamiltonians::HamiltonianSet;
use super::phase::{format_observable, Layout};
use crate::algebra::Matrix;
use crate::QPoly;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub value: String,
    pub zero: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BracketReport {
    pub entries: Vec<BracketEntry>,
}

impl BracketReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.zero)
    }

    pub fn failures(&self) -> Vec<&BracketEntry> {
        self.entries.iter().filter(|e| !e.zero).collect()
    }
}

/// Named observables with their partials cached.
struct Observable {
    name: String,
    partials: Vec<QPoly>,
}

impl Observable {
    fn new(name: String, f: &QPoly, layout: Layout) -> Self {
        Observable { name, partials: (0..layout.num_vars()).map(|v| f.partial(v)).collect() }
    }
}

fn entry(a: &Observable, b: &Observable, layout: Layout) -> BracketEntry {
    let v = bracket_from_partials(&a.partials, &b.partials, layout);
    BracketEntry {
        left: a.name.clone(),
        right: b.name.clone(),
        zero: v.is_zero(),
        value: format_observable(&v, layout),
    }
}

fn members(h: &HamiltonianSet, extra: &[(String, QPoly)]) -> Vec<Observable> {
    (0..h.len())
        .map(|i| Observable::new(h.label(i), &h.members[i], h.layout))
        .chain(extra.iter().map(|(n, f)| Observable::new(n.clone(), f, h.layout)))
        .collect()
}

/// Every pairwise bracket among the Hamiltonians (plus any injected
/// observables), computed symbolically.
pub fn involution_check(h: &HamiltonianSet, extra: &[(String, QPoly)]) -> BracketReport {
    let obs = members(h, extra);
    let mut entries = Vec::new();
    for i in 0..obs.len() {
        for j in i + 1..obs.len() {
            entries.push(entry(&obs[i], &obs[j], h.layout));
        }
    }
    BracketReport { entries }
}

/// Coefficients of `det(t - A_i)` for every factor: `tr A_i`, ..., `det A_i`.
pub fn casimirs(layout: Layout) -> Vec<(String, QPoly)> {
    let n = layout.n;
    let mut out = Vec::new();
    for i in 0..layout.poles {
        let a = Matrix::from_fn(n, n, |r, c| layout.entry(i, r, c));
        let c = a.char_poly_monic();
        for k in 1..=n {
            // det(t - A) = sum_k (-1)^k e_k t^{n-k}
            let ek = if k % 2 == 0 { c[n - k].clone() } else { -c[n - k].clone() };
            let name = match k {
                1 => format!("tr A{}", i + 1),
                _ if k == n => format!("det A{}", i + 1),
                _ => format!("e{k}(A{})", i + 1),
            };
            out.push((name, ek));
        }
    }
    out
}

/// `{C, H} = 0` for every Casimir `C` (including the trace residues that fix
/// the curve's contact with infinity) and every claimed invariant in
/// `extra`, against every Hamiltonian.
pub fn leaf_and_casimir_check(h: &HamiltonianSet, extra: &[(String, QPoly)]) -> BracketReport {
    let cas: Vec<Observable> = casimirs(h.layout)
        .iter()
        .chain(extra)
        .map(|(n, f)| Observable::new(n.clone(), f, h.layout))
        .collect();
    let obs = members(h, &[]);
    let mut entries = Vec::new();
    for c in &cas {
        for o in &obs {
            entries.push(entry(c, o, h.layout));
        }
    }
    BracketReport { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::hamiltonians;
    use crate::{int, QMatrix};

    #[test]
    fn two_pole_involution_and_injection() {
        let a0 = QMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(3), int(-1)]]);
        let h = hamiltonians(&[int(0), int(1)], &a0).unwrap();
        assert!(involution_check(&h, &[]).passed());
        let inj = vec![("A1[1,2]".to_string(), h.layout.entry(0, 0, 1))];
        let r = involution_check(&h, &inj);
        assert!(!r.passed());
        assert!(r.failures().iter().all(|e| e.right == "A1[1,2]"));
        assert!(leaf_and_casimir_check(&h, &[]).passed());
        let r = leaf_and_casimir_check(&h, &inj);
        assert!(!r.passed());
        assert!(r.failures().iter().all(|e| e.left == "A1[1,2]"));
    }

    #[test]
    fn casimir_names() {
        let names: Vec<String> = casimirs(Layout::new(3, 1)).into_iter().map(|c| c.0).collect();
        assert_eq!(names, vec!["tr A1", "e2(A1)", "det A1"]);
    }
}
