//! Formal reduction of a Higgs field at a simple rank-one pole.
//!
//! Case1 (trace residue `a != 0`): split on image/kernel of the residue and
//! kill off-diagonal blocks order by order; each step is a Sylvester solve
//! with spectra `{a}` and `{0}`.
//!
//! Case2 (nilpotent residue): `J = z hhat^2` is holomorphic with leading
//! term of spectrum `{a_0, a_0, 0, ..., 0}`. Block-diagonalizing `J` forces
//! `hhat` block-diagonal (it commutes with `J`), and on the 2x2 block the
//! cyclic frame `[s, z hhat s]` gives `[[0, -z det], [1/z, tr]]`.

use num_traits::{One, Zero};

use crate::algebra::{Matrix, MatrixJet, Poly};
use crate::error::{Error, Result};
use crate::higgs::{polar_part, HiggsField, PolarData};
use crate::{QMatrix, Rational, UniPoly};

pub const DEFAULT_JET_ORDER: i64 = 6;

pub type QJet = MatrixJet<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case {
    Case1,
    Case2,
}

#[derive(Clone, Debug, PartialEq)]
pub enum NormalInvariants {
    /// `a_{-1}, a_0, ..., a_m` of the scalar block and the characteristic
    /// polynomial `det(A_0 - t)` of the holomorphic block's constant term.
    Case1 { a: Vec<Rational>, block_char_poly: UniPoly },
    /// Coefficients `a_0..a_m`, `b_0..b_m` of the 2x2 block.
    Case2 { a: Vec<Rational>, b: Vec<Rational> },
}

impl NormalInvariants {
    /// `a_{-1}` (Case1) or `(a_0, b_0)` (Case2) as a short list.
    pub fn leading(&self) -> Vec<Rational> {
        match self {
            NormalInvariants::Case1 { a, .. } => a.iter().take(2).cloned().collect(),
            NormalInvariants::Case2 { a, b } => vec![a[0].clone(), b[0].clone()],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormalFormResult {
    pub case: Case,
    pub pole: Rational,
    pub order: i64,
    /// Holomorphic gauge germ, known to order `order + 1`.
    pub gauge: QJet,
    /// `gauge * hhat * gauge^{-1}` to order `order`.
    pub normalized: QJet,
    pub invariants: NormalInvariants,
}

pub fn detect_case(pd: &PolarData) -> Result<Case> {
    if pd.rank != 1 {
        return Err(Error::ResidueRank(pd.rank));
    }
    Ok(if pd.trace_residue.is_zero() {
        Case::Case2
    } else {
        Case::Case1
    })
}

/// Reduce at `p` choosing the case from the residue.
pub fn reduce(psi: &HiggsField, p: &Rational, m: i64) -> Result<NormalFormResult> {
    let pd = polar_part(psi, p)?;
    match detect_case(&pd)? {
        Case::Case1 => reduce_case1(psi, p, m),
        Case::Case2 => reduce_case2(psi, p, m),
    }
}

/// `R = v w^T` with the first nonzero entry of `v` equal to 1.
fn rank_one_factors(r: &QMatrix) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let n = r.rows();
    let c = (0..n)
        .find(|&j| (0..n).any(|i| !r[(i, j)].is_zero()))
        .ok_or(Error::ResidueRank(0))?;
    let r0 = (0..n).find(|&i| !r[(i, c)].is_zero()).expect("nonzero column");
    let pivot = r[(r0, c)].clone();
    let v: Vec<Rational> = (0..n).map(|i| r[(i, c)].clone() / pivot.clone()).collect();
    let w = r.row(r0);
    let outer = Matrix::from_fn(n, n, |i, j| v[i].clone() * w[j].clone());
    if &outer != r {
        return Err(Error::ResidueRank(r.rank()));
    }
    Ok((v, w))
}

fn times_z(jet: &QJet) -> QJet {
    let coeffs = (jet.lowest()..=jet.order())
        .map(|k| jet.coeff(k).expect("within order"))
        .collect();
    MatrixJet::new(jet.base().clone(), jet.dim(), jet.lowest() + 1, coeffs, jet.order() + 1)
}

/// `I + T z^k` as a jet known to `order`.
fn elementary_gauge(base: &Rational, t: &QMatrix, k: i64, order: i64) -> QJet {
    let n = t.rows();
    let coeffs = (0..=order)
        .map(|j| {
            if j == 0 {
                QMatrix::identity(n)
            } else if j == k {
                t.clone()
            } else {
                QMatrix::zeros(n, n)
            }
        })
        .collect();
    MatrixJet::new(base.clone(), n, 0, coeffs, order)
}

/// Block off-diagonal `T` with `[T, lead]` cancelling the off-diagonal
/// blocks of `c`, where `lead` is block-diagonal with split at `k`.
fn sylvester_step(lead: &QMatrix, c: &QMatrix, k: usize, order: i64) -> Result<QMatrix> {
    let n = lead.rows();
    let l11 = lead.submatrix(0..k, 0..k);
    let l22 = lead.submatrix(k..n, k..n);
    let resonant = |e: Error| match e {
        Error::ResonantSylvester { .. } => Error::ResonantSylvester {
            order: Some(order.max(0) as usize),
        },
        other => other,
    };
    let t12 = Matrix::sylvester_solve(&l11, &l22, &c.submatrix(0..k, k..n)).map_err(resonant)?;
    let t21 = Matrix::sylvester_solve(&l22, &l11, &c.submatrix(k..n, 0..k)).map_err(resonant)?;
    let mut t = QMatrix::zeros(n, n);
    t.set_block(0, k, &t12);
    t.set_block(k, 0, &t21);
    Ok(t)
}

fn off_diagonal_zero(m: &QMatrix, k: usize) -> bool {
    let n = m.rows();
    (0..n).all(|i| (0..n).all(|j| (i < k) == (j < k) || m[(i, j)].is_zero()))
}

/// Kills the off-diagonal blocks of `target` at orders `from..=to`, using
/// the fixed leading coefficient at order `from - shift`. Returns the
/// accumulated gauge (applied on the left of `gauge`).
fn block_diagonalize(
    mut target: QJet,
    lead_order: i64,
    k: usize,
    orders: std::ops::RangeInclusive<i64>,
    mut gauge: QJet,
    gauge_order: i64,
) -> Result<QJet> {
    let lead = target.coeff(lead_order)?;
    let p = target.base().clone();
    for j in orders {
        let c = target.coeff(j)?;
        if off_diagonal_zero(&c, k) {
            continue;
        }
        let t = sylvester_step(&lead, &c, k, j)?;
        let step = elementary_gauge(&p, &t, j - lead_order, gauge_order);
        target = target.conjugate_by(&step)?;
        gauge = step.mul(&gauge);
    }
    Ok(gauge)
}

pub fn reduce_case1(psi: &HiggsField, p: &Rational, m: i64) -> Result<NormalFormResult> {
    let pd = polar_part(psi, p)?;
    if detect_case(&pd)? != Case::Case1 {
        return Err(Error::NotNormalized("residue has zero trace; this is Case2".into()));
    }
    let n = psi.rank();
    let h = MatrixJet::expand(psi.hhat(), p, m + 1);
    let (v, w) = rank_one_factors(&pd.residue)?;
    let mut s = QMatrix::zeros(n, n);
    for i in 0..n {
        s[(i, 0)] = v[i].clone();
    }
    let kernel = QMatrix::from_rows(vec![w]).nullspace();
    for (j, kv) in kernel.iter().enumerate() {
        for i in 0..n {
            s[(i, j + 1)] = kv[i].clone();
        }
    }
    let g0 = MatrixJet::constant(p.clone(), s.inverse()?, m + 1);
    let h0 = h.conjugate_by(&g0)?;
    let gauge = if n == 1 {
        g0
    } else {
        block_diagonalize(h0, -1, 1, 0..=m, g0, m + 1)?
    };
    let normalized = h.conjugate_by(&gauge)?.truncate(m);
    let a = (-1..=m)
        .map(|k| normalized.coeff(k).map(|c| c[(0, 0)].clone()))
        .collect::<Result<Vec<_>>>()?;
    let a0 = normalized.coeff(0)?;
    let block_char_poly = if n > 1 {
        a0.submatrix(1..n, 1..n).char_poly()
    } else {
        Poly::one()
    };
    let result = NormalFormResult {
        case: Case::Case1,
        pole: p.clone(),
        order: m,
        gauge,
        normalized,
        invariants: NormalInvariants::Case1 { a, block_char_poly },
    };
    check_shape(&result)?;
    Ok(result)
}

pub fn reduce_case2(psi: &HiggsField, p: &Rational, m: i64) -> Result<NormalFormResult> {
    let pd = polar_part(psi, p)?;
    if detect_case(&pd)? != Case::Case2 {
        return Err(Error::NotNormalized("residue has nonzero trace; this is Case1".into()));
    }
    let n = psi.rank();
    if n < 2 {
        return Err(Error::ResidueRank(pd.rank));
    }
    // Two spare orders: J = z hhat^2 loses one, the final conjugation another.
    let h = MatrixJet::expand(psi.hhat(), p, m + 2);
    let j_of = |jet: &QJet| times_z(&jet.mul(jet)).trim();
    let a0 = j_of(&h).coeff(0)?.trace() / Rational::from_integer(2.into());
    if a0.is_zero() {
        return Err(Error::NonGenericCase2);
    }
    let mut gauge = MatrixJet::identity(p.clone(), n, m + 1);
    if n > 2 {
        let j0 = j_of(&h).coeff(0)?;
        let power = |mat: QMatrix| (1..n).fold(mat.clone(), |acc, _| acc * mat.clone());
        let top = power(j0.clone() - QMatrix::identity(n).scale(&a0)).nullspace();
        let bottom = power(j0).nullspace();
        if top.len() != 2 || bottom.len() != n - 2 {
            return Err(Error::NonGenericCase2);
        }
        let cols: Vec<&Vec<Rational>> = top.iter().chain(bottom.iter()).collect();
        let s = Matrix::from_fn(n, n, |i, j| cols[j][i].clone());
        let s_inv = s.inverse()?;
        let g0 = MatrixJet::constant(p.clone(), s_inv.clone(), m + 1);
        // A constant gauge is exact to any order; keep J known through m + 1.
        let jet = j_of(&h.conjugate_by(&MatrixJet::constant(p.clone(), s_inv, m + 3))?);
        gauge = block_diagonalize(jet, 0, 2, 1..=m + 1, g0, m + 1)?;
    }
    let split = h.conjugate_by(&gauge)?;
    for k in -1..=m {
        if !off_diagonal_zero(&split.coeff(k)?, 2) {
            return Err(Error::NonGenericCase2);
        }
    }
    // Cyclic frame on the 2x2 block.
    let block = split.map_coeffs(|c| c.submatrix(0..2, 0..2));
    let r = block.coeff(-1)?;
    let (_, w) = rank_one_factors(&r)?;
    let k = w.iter().position(|c| !c.is_zero()).expect("rank one");
    let mut s1 = vec![Rational::zero(); 2];
    s1[k] = Rational::one() / w[k].clone();
    let zh = times_z(&block).truncate(m + 1);
    let frame_coeffs: Vec<QMatrix> = (0..=m + 1)
        .map(|d| {
            let second = zh.coeff(d).expect("within order").mul_vec(&s1);
            Matrix::from_fn(2, 2, |i, j| match (j, d) {
                (0, 0) => s1[i].clone(),
                (0, _) => Rational::zero(),
                _ => second[i].clone(),
            })
        })
        .collect();
    let frame = MatrixJet::new(p.clone(), 2, 0, frame_coeffs, m + 1);
    let frame_inv = frame.inverse()?;
    let embed = MatrixJet::new(
        p.clone(),
        n,
        0,
        (0..=m + 1)
            .map(|d| {
                let mut c = if d == 0 { QMatrix::identity(n) } else { QMatrix::zeros(n, n) };
                c.set_block(0, 0, &frame_inv.coeff(d).expect("within order"));
                c
            })
            .collect(),
        m + 1,
    );
    gauge = embed.mul(&gauge);
    let normalized = h.conjugate_by(&gauge)?.truncate(m);
    let a = (0..=m)
        .map(|d| normalized.coeff(d).map(|c| c[(0, 1)].clone()))
        .collect::<Result<Vec<_>>>()?;
    let b = (0..=m)
        .map(|d| normalized.coeff(d).map(|c| c[(1, 1)].clone()))
        .collect::<Result<Vec<_>>>()?;
    if a[0].is_zero() {
        return Err(Error::NonGenericCase2);
    }
    let result = NormalFormResult {
        case: Case::Case2,
        pole: p.clone(),
        order: m,
        gauge,
        normalized,
        invariants: NormalInvariants::Case2 { a, b },
    };
    check_shape(&result)?;
    Ok(result)
}

/// Block shape of the normalized jet, coefficientwise through its order.
pub fn check_shape(r: &NormalFormResult) -> Result<()> {
    let n = r.normalized.dim();
    let bad = |msg: String| Err(Error::NotNormalized(msg));
    for k in r.normalized.lowest().min(-1)..=r.order {
        let c = r.normalized.coeff(k)?;
        match r.case {
            Case::Case1 => {
                if !off_diagonal_zero(&c, 1) {
                    return bad(format!("off-diagonal block at order {k}"));
                }
                if k < 0 && (1..n).any(|i| (1..n).any(|j| !c[(i, j)].is_zero())) {
                    return bad("holomorphic block has a pole".into());
                }
            }
            Case::Case2 => {
                if !off_diagonal_zero(&c, 2) || !c[(0, 0)].is_zero() {
                    return bad(format!("Case2 block pattern broken at order {k}"));
                }
                let expect_21 = if k == -1 { Rational::one() } else { Rational::zero() };
                if c[(1, 0)] != expect_21 {
                    return bad(format!("(2,1) entry is not x^-1 at order {k}"));
                }
                if k < 0 && (0..n).any(|i| (0..n).any(|j| (i, j) != (1, 0) && !c[(i, j)].is_zero()))
                {
                    return bad("pole outside the (2,1) entry".into());
                }
            }
        }
    }
    Ok(())
}

/// Re-applies the gauge to the input jet and compares through order `m`.
pub fn verify_normal_form(r: &NormalFormResult, psi: &HiggsField, p: &Rational, m: i64) -> Result<bool> {
    if m > r.order {
        return Err(Error::InsufficientJet {
            requested: m,
            available: r.order,
        });
    }
    if p != &r.pole {
        return Ok(false);
    }
    let h = MatrixJet::expand(psi.hhat(), p, r.order + 1);
    let conj = match h.conjugate_by(&r.gauge) {
        Ok(c) => c,
        Err(Error::NonInvertibleGauge(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(conj.agrees_to(&r.normalized, m)? && check_shape(r).is_ok())
}

/// Whether two normalized jets differ only by a constant gauge preserving
/// the block structure (`diag(1, C)` for Case1, `diag(I_2, C)` for Case2).
pub fn equivalent_normal_forms(a: &NormalFormResult, b: &NormalFormResult) -> Result<bool> {
    if a.case != b.case || a.order != b.order || a.normalized.dim() != b.normalized.dim() {
        return Ok(false);
    }
    let n = a.normalized.dim();
    let k = match a.case {
        Case::Case1 => 1,
        Case::Case2 => 2,
    };
    let lo = a.normalized.lowest().min(b.normalized.lowest());
    for d in lo..=a.order {
        let (ca, cb) = (a.normalized.coeff(d)?, b.normalized.coeff(d)?);
        if ca.submatrix(0..k, 0..k) != cb.submatrix(0..k, 0..k) {
            return Ok(false);
        }
    }
    if n == k {
        return Ok(true);
    }
    // Solve X A_d = B_d X for all d on the holomorphic blocks.
    let q = n - k;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for d in 0..=a.order {
        let ad = a.normalized.coeff(d)?.submatrix(k..n, k..n);
        let bd = b.normalized.coeff(d)?.submatrix(k..n, k..n);
        for i in 0..q {
            for j in 0..q {
                let mut row = vec![Rational::zero(); q * q];
                for l in 0..q {
                    row[i * q + l] = row[i * q + l].clone() + ad[(l, j)].clone();
                    row[l * q + j] = row[l * q + j].clone() - bd[(i, l)].clone();
                }
                rows.push(row);
            }
        }
    }
    let basis = QMatrix::from_rows(rows).nullspace();
    if basis.is_empty() {
        return Ok(false);
    }
    // A generic member of the solution space is invertible iff any is; try a
    // few fixed integer combinations.
    for seed in 1..=8i64 {
        let x = Matrix::from_fn(q, q, |i, j| {
            basis.iter().enumerate().fold(Rational::zero(), |acc, (t, v)| {
                let w = Rational::from_integer(((seed * (t as i64 + 3)).pow(2) % 17 + 1).into());
                acc + w * v[i * q + j].clone()
            })
        });
        if !x.det().is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}
