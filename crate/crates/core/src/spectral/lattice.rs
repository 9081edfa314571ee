//! Lattices at a pole in the adapted (normal-form) frame.
//!
//! Every lattice here is diagonal: it is `⊕ z^{e_i} O e_i` for an integer
//! vector `e`, so it is stored as that vector. `End_psi` is stored as the
//! matrix of minimal entry orders plus the set of diagonal entries whose
//! residues must sum to zero.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::Matrix;
use crate::error::{Error, Result};
use crate::normal_form::{check_shape, Case, NormalFormResult, QJet};
use crate::Rational;

/// Number of holomorphic orders `z^0 .. z^{WINDOW-1}` sampled by the
/// definitional computation; enough for every order that can occur.
const WINDOW: i64 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeSheaf {
    pub pole: String,
    pub case: String,
    pub e0: Vec<i64>,
    pub e00: Vec<i64>,
    pub e_psi: Vec<i64>,
    /// Minimal order of each entry of an element of `End_psi`.
    pub end_psi: Vec<Vec<i64>>,
    /// Diagonal positions whose residues must sum to zero (empty when the
    /// trace condition already fixed them).
    pub trace_constraint: Vec<usize>,
}

impl LatticeSheaf {
    /// Simple-pole flags of `End_psi`: `1` where a pole is allowed.
    pub fn pole_pattern(&self) -> Vec<Vec<u8>> {
        self.end_psi
            .iter()
            .map(|row| row.iter().map(|&o| u8::from(o < 0)).collect())
            .collect()
    }

    /// Every lattice sits between `z^2 O^n` and `z^{-1} O^n`.
    pub fn orders_bounded(&self) -> bool {
        [&self.e0, &self.e00, &self.e_psi]
            .iter()
            .all(|e| e.iter().all(|&o| (-1..=2).contains(&o)))
    }
}

fn end_from(e0: &[i64], e_psi: &[i64]) -> (Vec<Vec<i64>>, Vec<usize>) {
    let n = e0.len();
    let mut end: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (e_psi[i] - e0[j]).clamp(-1, 0)).collect())
        .collect();
    let polar_diag: Vec<usize> = (0..n).filter(|&i| end[i][i] < 0).collect();
    if polar_diag.len() == 1 {
        end[polar_diag[0]][polar_diag[0]] = 0;
        return (end, Vec::new());
    }
    (end, polar_diag)
}

/// Closed forms in the adapted frame.
pub fn pushdown_lattices(nf: &NormalFormResult) -> Result<LatticeSheaf> {
    check_shape(nf)?;
    let n = nf.normalized.dim();
    let unit = |i: usize, v: i64| -> Vec<i64> { (0..n).map(|k| if k == i { v } else { 0 }).collect() };
    let (e0, e00, e_psi, end_psi, trace_constraint) = match nf.case {
        Case::Case1 => {
            let mut end = vec![vec![0; n]; n];
            for k in 1..n {
                end[0][k] = -1;
                end[k][0] = -1;
            }
            (unit(0, 1), unit(0, 2), unit(0, -1), end, Vec::new())
        }
        Case::Case2 => {
            let mut e00 = unit(0, 1);
            e00[1] = 1;
            let mut end = vec![vec![0; n]; n];
            end[0][0] = -1;
            end[1][0] = -1;
            end[1][1] = -1;
            for k in 2..n {
                end[1][k] = -1;
                end[k][0] = -1;
            }
            (unit(0, 1), e00, unit(1, -1), end, vec![0, 1])
        }
    };
    Ok(LatticeSheaf {
        pole: crate::format_rational(&nf.pole),
        case: format!("{:?}", nf.case),
        e0,
        e00,
        e_psi,
        end_psi,
        trace_constraint,
    })
}

/// Coefficient of `z^j` in `h * s`, where `s` has coefficients `s[k]` at `z^k`.
fn apply_coeff(h: &QJet, s: &[Vec<Rational>], j: i64) -> Result<Vec<Rational>> {
    let n = h.dim();
    let mut out = vec![Rational::zero(); n];
    for (k, sk) in s.iter().enumerate() {
        let d = j - k as i64;
        if d < h.lowest() {
            continue;
        }
        let hv = h.coeff(d)?.mul_vec(sk);
        for i in 0..n {
            out[i] += hv[i].clone();
        }
    }
    Ok(out)
}

/// Flattened polar part (degrees `lowest..-1`) of `h * s`.
fn polar_part(h: &QJet, s: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    for j in h.lowest().min(0)..0 {
        out.extend(apply_coeff(h, s, j)?);
    }
    Ok(out)
}

fn basis_vector(n: usize, k: usize, i: usize, len: usize) -> Vec<Vec<Rational>> {
    let mut s = vec![vec![Rational::zero(); n]; len];
    s[k][i] = Rational::one();
    s
}

fn flatten(s: &[Vec<Rational>]) -> Vec<Rational> {
    s.iter().flatten().cloned().collect()
}

fn span_rank(vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec()).rank()
}

fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let ra = span_rank(a);
    let joint: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    ra == span_rank(b) && ra == span_rank(&joint)
}

fn contains(span: &[Vec<Rational>], v: &[Rational]) -> bool {
    let mut joint = span.to_vec();
    joint.push(v.to_vec());
    span_rank(span) == span_rank(&joint)
}

/// Holomorphic lattice `{s : every jet in `conditions` maps s to no polar part}`,
/// read off in the window and checked to be diagonal.
fn holomorphic_kernel(conditions: &[QJet], n: usize) -> Result<Vec<i64>> {
    let len = WINDOW as usize;
    let mut columns = Vec::new();
    for k in 0..len {
        for i in 0..n {
            let s = basis_vector(n, k, i, len);
            let mut col = Vec::new();
            for h in conditions {
                col.extend(polar_part(h, &s)?);
            }
            columns.push(col);
        }
    }
    let rows = columns[0].len();
    let kernel: Vec<Vec<Rational>> = if rows == 0 {
        (0..n * len).map(|c| (0..n * len).map(|r| if r == c { Rational::one() } else { Rational::zero() }).collect()).collect()
    } else {
        Matrix::from_fn(rows, n * len, |r, c| columns[c][r].clone()).nullspace()
    };
    let mut orders = Vec::with_capacity(n);
    for i in 0..n {
        let ord = (0..len)
            .find(|&k| contains(&kernel, &flatten(&basis_vector(n, k, i, len))))
            .ok_or_else(|| Error::NotNormalized(format!("coordinate {} not in the lattice within the window", i + 1)))?;
        orders.push(ord as i64);
    }
    let diagonal: Vec<Vec<Rational>> = (0..n)
        .flat_map(|i| (orders[i] as usize..len).map(move |k| (k, i)))
        .map(|(k, i)| flatten(&basis_vector(n, k, i, len)))
        .collect();
    if !same_span(&kernel, &diagonal) {
        return Err(Error::NotNormalized("lattice is not diagonal in the adapted frame".into()));
    }
    Ok(orders)
}

/// `O^n + h O^n`, via the polar parts of `h z^k e_i`.
fn image_lattice(h: &QJet, n: usize) -> Result<Vec<i64>> {
    let len = WINDOW as usize;
    let lo = h.lowest().min(0);
    let depth = (-lo) as usize;
    let mut span = Vec::new();
    for k in 0..len {
        for i in 0..n {
            span.push(polar_part(h, &basis_vector(n, k, i, len))?);
        }
    }
    // Polar window coordinates: index (j - lo) * n + i for degree j.
    let unit = |j: i64, i: usize| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); depth * n];
        v[(j - lo) as usize * n + i] = Rational::one();
        v
    };
    let mut orders = Vec::with_capacity(n);
    for i in 0..n {
        orders.push((lo..0).find(|&j| contains(&span, &unit(j, i))).unwrap_or(0));
    }
    let diagonal: Vec<Vec<Rational>> = (0..n)
        .flat_map(|i| (orders[i]..0).map(move |j| (j, i)))
        .map(|(j, i)| unit(j, i))
        .collect();
    if depth > 0 && !same_span(&span, &diagonal) {
        return Err(Error::NotNormalized("image lattice is not diagonal in the adapted frame".into()));
    }
    Ok(orders)
}

/// The same lattices computed from their defining conditions on the jet:
/// `E_0 = {s : h s holomorphic}`, `E_00 = {s : h s in E_0}`,
/// `E_psi = O^n + h O^n`, and `End_psi` = simple-pole maps `E_0 -> E_psi`
/// with trace-free residue.
pub fn definitional_lattices(nf: &NormalFormResult) -> Result<LatticeSheaf> {
    check_shape(nf)?;
    let n = nf.normalized.dim();
    let h = nf.normalized.trim();
    let h2 = h.mul(&h).trim();
    let e0 = holomorphic_kernel(std::slice::from_ref(&h), n)?;
    let e00 = holomorphic_kernel(&[h.clone(), h2], n)?;
    let e_psi = image_lattice(&h, n)?;
    let (end_psi, trace_constraint) = end_from(&e0, &e_psi);
    Ok(LatticeSheaf {
        pole: crate::format_rational(&nf.pole),
        case: format!("{:?}", nf.case),
        e0,
        e00,
        e_psi,
        end_psi,
        trace_constraint,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::higgs::HiggsField;
    use crate::normal_form::reduce;
    use crate::{int, QMatrix};

    fn q(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
    }

    fn lattices(res: QMatrix, c: QMatrix) -> (LatticeSheaf, LatticeSheaf) {
        let psi = HiggsField::from_residues(&[int(0)], &[res], &c).unwrap();
        let nf = reduce(&psi, &int(0), 4).unwrap();
        (pushdown_lattices(&nf).unwrap(), definitional_lattices(&nf).unwrap())
    }

    #[test]
    fn case1_rank_two() {
        let (closed, def) = lattices(q(&[&[1, 0], &[0, 0]]), q(&[&[0, 1], &[1, 0]]));
        assert_eq!(closed.e0, vec![1, 0]);
        assert_eq!(closed.e00, vec![2, 0]);
        assert_eq!(closed.pole_pattern(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(closed, def);
    }

    #[test]
    fn case2_rank_two_and_three() {
        let (closed, def) = lattices(q(&[&[0, 0], &[1, 0]]), q(&[&[0, 1], &[0, 0]]));
        assert_eq!(closed, def);
        assert_eq!(def.trace_constraint, vec![0, 1]);
        let (closed, def) = lattices(
            q(&[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]),
            q(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 2]]),
        );
        assert_eq!(closed, def);
        assert!(def.orders_bounded());
    }

    #[test]
    fn case1_rank_three() {
        let (closed, def) = lattices(
            q(&[&[2, 0, 0], &[0, 0, 0], &[0, 0, 0]]),
            q(&[&[0, 1, 1], &[1, 0, 3], &[1, 1, 0]]),
        );
        assert_eq!(closed, def);
    }
}
