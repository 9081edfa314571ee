//! The Lie–Poisson bracket on a product of `gl(n)^*` factors:
//! `{F, G} = sum_i tr(A_i [grad_i F, grad_i G])`, where `grad_i F` is the
//! transpose of the matrix of partials `dF/d(A_i)_{ab}`. On coordinates,
//! `{A_ab, A_cd} = delta_ad A_cb - delta_bc A_ad`.

use num_complex::Complex64;
use num_traits::Zero;

use super::phase::Layout;

use crate::QPoly;

fn partials(f: &QPoly, layout: Layout) -> Vec<QPoly> {
    (0..layout.num_vars()).map(|v| f.partial(v)).collect()
}

pub fn lie_poisson_bracket(f: &QPoly, g: &QPoly, layout: Layout) -> QPoly {
    let df = partials(f, layout);
    let dg = partials(g, layout);
    bracket_from_partials(&df, &dg, layout)
}

/// `-sum A_ad (F_ab G_bd - G_ab F_bd)` with `F_ab = dF/dA_ab`.
pub(crate) fn bracket_from_partials(df: &[QPoly], dg: &[QPoly], layout: Layout) -> QPoly {
    let n = layout.n;
    let mut acc = QPoly::zero();
    for i in 0..layout.poles {
        for a in 0..n {
            for d in 0..n {
                let mut inner = QPoly::zero();
                for b in 0..n {
                    let (ab, bd) = (layout.var(i, a, b), layout.var(i, b, d));
                    if !df[ab].is_zero() && !dg[bd].is_zero() {
                        inner = inner + df[ab].clone() * dg[bd].clone();
                    }
                    if !dg[ab].is_zero() && !df[bd].is_zero() {
                        inner = inner - dg[ab].clone() * df[bd].clone();
                    }
                }
                if !inner.is_zero() {
                    acc = acc - layout.entry(i, a, d) * inner;
                }
            }
        }
    }
    acc
}

/// The same bracket from numeric gradients at a point.
pub fn lie_poisson_numeric(df: &[Complex64], dg: &[Complex64], coords: &[Complex64], layout: Layout) -> Complex64 {
    let n = layout.n;
    let mut acc = Complex64::zero();
    for i in 0..layout.poles {
        for a in 0..n {
            for d in 0..n {
                let mut inner = Complex64::zero();
                for b in 0..n {
                    let (ab, bd) = (layout.var(i, a, b), layout.var(i, b, d));
                    inner += df[ab] * dg[bd] - dg[ab] * df[bd];
                }
                acc -= coords[layout.var(i, a, d)] * inner;
            }
        }
    }
    acc
}

/// Matrix gradient `grad_i H` (transpose of the partials), as polynomials.
pub fn matrix_gradient(h: &QPoly, layout: Layout, i: usize) -> Vec<Vec<QPoly>> {
    let n = layout.n;
    (0..n)
        .map(|a| (0..n).map(|b| h.partial(layout.var(i, b, a))).collect())
        .collect()
}
