use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::higgs::HiggsField;
use crate::{format_rational, CMatrix, QMatrix, QPoly, Rational};

/// Shape of the phase space: rank `n` and number of poles `k`. When
/// `promoted`, the entries of the constant term are extra variables (after
/// the residues) with identically zero brackets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Layout {
    pub n: usize,
    pub poles: usize,
    pub promoted: bool,
}

impl Layout {
    pub fn new(n: usize, poles: usize) -> Self {
        Layout { n, poles, promoted: false }
    }

    pub fn promote(self) -> Self {
        Layout { promoted: true, ..self }
    }

    pub fn same_shape(&self, other: &Layout) -> bool {
        self.n == other.n && self.poles == other.poles
    }

    /// Variable of the constant-term entry `(a, b)`; requires `promoted`.
    pub fn constant_var(&self, a: usize, b: usize) -> usize {
        debug_assert!(self.promoted);
        self.poles * self.n * self.n + a * self.n + b
    }

    pub fn var(&self, i: usize, a: usize, b: usize) -> usize {
        i * self.n * self.n + a * self.n + b
    }

    pub fn num_vars(&self) -> usize {
        (self.poles + usize::from(self.promoted)) * self.n * self.n
    }

    /// `(A_i)_{ab}` as an observable.
    pub fn entry(&self, i: usize, a: usize, b: usize) -> QPoly {
        QPoly::var(self.var(i, a, b))
    }

    /// Human-readable name of a variable, 1-based: `A1[1,2]`.
    pub fn name(&self, v: usize) -> String {
        let nn = self.n * self.n;
        let factor = if v / nn == self.poles { 0 } else { v / nn + 1 };
        format!("A{}[{},{}]", factor, (v % nn) / self.n + 1, v % self.n + 1)
    }
}

/// Residues at fixed poles plus the fixed constant term.
#[derive(Clone, Debug, PartialEq)]
pub struct PhasePoint {
    pub poles: Vec<Rational>,
    pub residues: Vec<QMatrix>,
    pub constant: QMatrix,
}

impl PhasePoint {
    pub fn new(poles: Vec<Rational>, residues: Vec<QMatrix>, constant: QMatrix) -> Result<Self> {
        let n = constant.rows();
        if !constant.is_square() || n == 0 {
            return Err(Error::InvalidPhasePoint("constant term must be square and nonempty".into()));
        }
        if poles.len() != residues.len() {
            return Err(Error::InvalidPhasePoint(format!(
                "{} poles but {} residues",
                poles.len(),
                residues.len()
            )));
        }
        if let Some(i) = residues.iter().position(|a| a.rows() != n || a.cols() != n) {
            return Err(Error::InvalidPhasePoint(format!("residue {} is not {n}x{n}", i + 1)));
        }
        Ok(PhasePoint { poles, residues, constant })
    }

    pub fn from_higgs(psi: &HiggsField) -> Result<Self> {
        let (residues, rest) = psi.decompose();
        let constant = rest
            .to_rows()
            .into_iter()
            .map(|row| row.into_iter().map(|r| r.as_constant()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidPhasePoint("regular part of hhat is not constant".into()))?;
        Self::new(psi.poles().to_vec(), residues, QMatrix::from_rows(constant))
    }

    pub fn layout(&self) -> Layout {
        Layout::new(self.constant.rows(), self.poles.len())
    }

    pub fn to_higgs(&self) -> Result<HiggsField> {
        HiggsField::from_residues(&self.poles, &self.residues, &self.constant)
    }

    /// Coordinates in variable order.
    pub fn coords(&self) -> Vec<Rational> {
        self.residues.iter().flat_map(|a| a.entries().to_vec()).collect()
    }

    pub fn coords_complex(&self) -> Vec<Complex64> {
        self.coords().iter().map(to_c64).collect()
    }

    /// Coordinates for `layout`, with the constant term appended when promoted.
    pub fn coords_in(&self, layout: Layout) -> Vec<Rational> {
        let mut c = self.coords();
        if layout.promoted {
            c.extend(self.constant.entries().iter().cloned());
        }
        c
    }

    /// Indices of residues whose rank is not one.
    pub fn rank_violations(&self) -> Vec<usize> {
        (0..self.residues.len()).filter(|&i| self.residues[i].rank() != 1).collect()
    }

    pub fn describe(&self) -> String {
        let fmt_m = |m: &QMatrix| {
            let rows: Vec<String> = m
                .to_rows()
                .iter()
                .map(|r| format!("[{}]", r.iter().map(format_rational).collect::<Vec<_>>().join(", ")))
                .collect();
            format!("[{}]", rows.join(", "))
        };
        let parts: Vec<String> = self
            .poles
            .iter()
            .zip(&self.residues)
            .map(|(p, a)| format!("A at {} = {}", format_rational(p), fmt_m(a)))
            .collect();
        format!("{}; A0 = {}", parts.join("; "), fmt_m(&self.constant))
    }
}

pub(crate) fn to_c64(q: &Rational) -> Complex64 {
    Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
}

/// Residues from a flat complex coordinate vector.
pub(crate) fn unflatten(layout: Layout, coords: &[Complex64]) -> Vec<CMatrix> {
    let nn = layout.n * layout.n;
    (0..layout.poles)
        .map(|i| CMatrix::from_fn(layout.n, layout.n, |a, b| coords[i * nn + a * layout.n + b]))
        .collect()
}

/// Renders an observable with variables named by [`Layout::name`].
pub fn format_observable(q: &QPoly, layout: Layout) -> String {
    if q.num_terms() == 0 {
        return "0".into();
    }
    let mut out = String::new();
    for (e, c) in q.terms() {
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d > 0)
            .map(|(v, &d)| if d == 1 { layout.name(v) } else { format!("{}^{d}", layout.name(v)) })
            .collect();
        let negative = *c < Rational::from_integer(0.into());
        let mag = if negative { -c.clone() } else { c.clone() };
        let body = match (mono.is_empty(), mag == Rational::from_integer(1.into())) {
            (true, _) => format_rational(&mag),
            (false, true) => mono.join("*"),
            (false, false) => format!("{}*{}", format_rational(&mag), mono.join("*")),
        };
        if out.is_empty() {
            out = if negative { format!("-{body}") } else { body };
        } else {
            out.push_str(if negative { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    out
}
