//! Spectral Hamiltonians: the coefficients of
//! `P(x, eta) = D(x) det(hhat(x) - eta)` as polynomials in the residue entries.
//!
//! Off the rank-one locus `D det(hhat - eta)` is not polynomial in `x`; the
//! members are the polynomial parts, which agree with `P` on rank-one points.

use num_traits::One;

use super::phase::{Layout, PhasePoint};
use crate::algebra::{Matrix, Poly};
use crate::error::{Error, Result};
use crate::{BiPoly, QMatrix, QPoly, Rational, UniPoly};

#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianSet {
    pub layout: Layout,
    pub poles: Vec<Rational>,
    pub constant: QMatrix,
    /// Coefficient of `eta^k` as a polynomial in `x` over observables.
    pub by_eta: Vec<Poly<QPoly>>,
    /// `(j, k)` labels of the members, `x^j eta^k`.
    pub labels: Vec<(usize, usize)>,
    pub members: Vec<QPoly>,
}

impl HamiltonianSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn label(&self, idx: usize) -> String {
        let (j, k) = self.labels[idx];
        format!("H[x^{j} eta^{k}]")
    }

    pub fn get(&self, j: usize, k: usize) -> Option<&QPoly> {
        self.labels.iter().position(|&l| l == (j, k)).map(|i| &self.members[i])
    }

    /// `P(x, eta)` at a phase point.
    pub fn evaluate(&self, pt: &PhasePoint) -> Result<BiPoly> {
        let fixed_ok = self.layout.promoted || pt.constant == self.constant;
        if !pt.layout().same_shape(&self.layout) || pt.poles != self.poles || !fixed_ok {
            return Err(Error::InvalidPhasePoint("phase point does not match the Hamiltonian family".into()));
        }
        let coords = pt.coords_in(self.layout);
        Ok(BiPoly::from_eta_coeffs(
            self.by_eta
                .iter()
                .map(|c| UniPoly::new(c.coeffs().iter().map(|q| q.eval(&coords)).collect()))
                .collect(),
        ))
    }
}

/// All non-constant coefficients of the pole-cleared spectral polynomial.
pub fn hamiltonians(poles: &[Rational], constant: &QMatrix) -> Result<HamiltonianSet> {
    hamiltonians_with(poles, constant, false)
}

/// As [`hamiltonians`]; with `promote`, the constant term's entries are
/// variables (Casimirs of the trivial bracket) and `constant` only fixes the size.
pub fn hamiltonians_with(poles: &[Rational], constant: &QMatrix, promote: bool) -> Result<HamiltonianSet> {
    let n = constant.rows();
    if !constant.is_square() || n == 0 {
        return Err(Error::Dimension("constant term must be square and nonempty".into()));
    }
    let base = Layout::new(n, poles.len());
    let layout = if promote { base.promote() } else { base };
    let a0 = |a: usize, b: usize| {
        if promote {
            QPoly::var(layout.constant_var(a, b))
        } else {
            QPoly::constant(constant[(a, b)].clone())
        }
    };
    let linear = |p: &Rational| Poly::new(vec![QPoly::constant(-p.clone()), QPoly::one()]);
    let d = poles.iter().fold(Poly::<QPoly>::one(), |acc, p| acc * linear(p));
    let cofactor: Vec<Poly<QPoly>> = (0..poles.len())
        .map(|i| {
            poles
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Poly::one(), |acc, (_, p)| acc * linear(p))
        })
        .collect();
    let m = Matrix::from_fn(n, n, |a, b| {
        let mut e = d.scale(&a0(a, b));
        for (i, c) in cofactor.iter().enumerate() {
            e = e + c.scale(&layout.entry(i, a, b));
        }
        e
    });
    let c = m.char_poly_monic();
    let sign = if n % 2 == 0 { QPoly::one() } else { -QPoly::one() };
    let mut by_eta = Vec::with_capacity(n + 1);
    for (k, ck) in c.into_iter().enumerate() {
        let signed = ck.scale(&sign);
        let coeff = if k + 1 >= n {
            (0..k + 1 - n).fold(signed, |acc, _| acc * d.clone())
        } else {
            // The remainder is a combination of 2x2 minors of the residues:
            // it vanishes on the rank-one locus and is dropped. The quotient's
            // coefficients are constant combinations of those of det(M - D eta),
            // so they still Poisson-commute everywhere.
            let dk = (0..n - 1 - k).fold(Poly::<QPoly>::one(), |acc, _| acc * d.clone());
            signed.div_rem_monic(&dk).0
        };
        by_eta.push(coeff);
    }
    let mut labels = Vec::new();
    let mut members = Vec::new();
    for (k, ck) in by_eta.iter().enumerate() {
        for (j, h) in ck.coeffs().iter().enumerate() {
            if h.as_constant().is_none() {
                labels.push((j, k));
                members.push(h.clone());
            }
        }
    }
    Ok(HamiltonianSet {
        layout,
        poles: poles.to_vec(),
        constant: constant.clone(),
        by_eta,
        labels,
        members,
    })
}
