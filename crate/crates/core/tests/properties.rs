use lconn::algebra::{Matrix, Poly};
use lconn::dynamics::{lie_poisson_bracket, Layout};
use lconn::higgs::HiggsField;
use lconn::spectral::curve::{residue_balance, spectral_polynomial};
use lconn::surface::{torsor_class, TorsorAtlas};
use lconn::{int, QMatrix, QPoly, RatFunc, Rational, UniPoly};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn monomial(exps: &[u8]) -> QPoly {
    exps.iter()
        .enumerate()
        .fold(QPoly::one(), |acc, (v, &e)| (0..e).fold(acc, |m, _| m * QPoly::var(v)))
}

/// Observable of total degree <= 2 on `vars` coordinates.
fn observable(vars: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec((-3i64..=3, prop::collection::vec(0u8..=1, vars)), 1..5).prop_map(|terms| {
        terms.into_iter().fold(QPoly::zero(), |acc, (c, exps)| {
            let capped: Vec<u8> = exps.into_iter().scan(0u8, |used, e| {
                let e = if *used + e > 2 { 0 } else { e };
                *used += e;
                Some(e)
            }).collect();
            acc + monomial(&capped).scale(&int(c))
        })
    })
}

fn linear(vars: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, vars)
}

fn small_matrix(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(-3i64..=3, n * n)
        .prop_map(move |e| Matrix::from_fn(n, n, |a, b| int(e[a * n + b])))
}

/// Unimodular `L U` with unit triangular factors.
fn unimodular(n: usize) -> impl Strategy<Value = QMatrix> {
    (prop::collection::vec(-2i64..=2, n * n), prop::collection::vec(-2i64..=2, n * n)).prop_map(move |(l, u)| {
        let lo = Matrix::from_fn(n, n, |a, b| if a == b { int(1) } else if a > b { int(l[a * n + b]) } else { int(0) });
        let up = Matrix::from_fn(n, n, |a, b| if a == b { int(1) } else if a < b { int(u[a * n + b]) } else { int(0) });
        lo * up
    })
}

fn outer(u: &[i64], v: &[i64]) -> QMatrix {
    Matrix::from_fn(u.len(), v.len(), |a, b| int(u[a] * v[b]))
}

fn rank_one(n: usize) -> impl Strategy<Value = QMatrix> {
    (prop::collection::vec(-2i64..=2, n), prop::collection::vec(-2i64..=2, n)).prop_map(|(u, v)| outer(&u, &v))
}

/// Structure-constant oracle on linear observables:
/// `{A_ab, A_cd} = delta_ad A_cb - delta_bc A_ad` within one residue.
fn structure_bracket(f: &[i64], g: &[i64], layout: Layout) -> QPoly {
    let n = layout.n;
    let mut out = QPoly::zero();
    for i in 0..layout.poles {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let w = f[layout.var(i, a, b)] * g[layout.var(i, c, d)];
                        if w == 0 {
                            continue;
                        }
                        if a == d {
                            out = out + QPoly::var(layout.var(i, c, b)).scale(&int(w));
                        }
                        if b == c {
                            out = out - QPoly::var(layout.var(i, a, d)).scale(&int(w));
                        }
                    }
                }
            }
        }
    }
    out
}

fn linear_observable(f: &[i64]) -> QPoly {
    f.iter().enumerate().fold(QPoly::zero(), |acc, (v, &c)| acc + QPoly::var(v).scale(&int(c)))
}

fn laurent(coeffs: &[i64], lowest: i64) -> RatFunc {
    let shift = (-lowest).max(0) as usize;
    let num = Poly::new(coeffs.iter().map(|&c| int(c)).collect());
    let num = if lowest > 0 { num * Poly::monomial(int(1), lowest as usize) } else { num };
    RatFunc::new(num, Poly::monomial(int(1), shift))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_antisymmetric(f in observable(4), g in observable(4)) {
        let layout = Layout::new(2, 1);
        let fg = lie_poisson_bracket(&f, &g, layout);
        let gf = lie_poisson_bracket(&g, &f, layout);
        prop_assert!((fg + gf).is_zero());
    }

    #[test]
    fn bracket_satisfies_jacobi(f in observable(4), g in observable(4), h in observable(4)) {
        let l = Layout::new(2, 1);
        let br = |a: &QPoly, b: &QPoly| lie_poisson_bracket(a, b, l);
        let sum = br(&f, &br(&g, &h)) + br(&g, &br(&h, &f)) + br(&h, &br(&f, &g));
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn bracket_is_a_derivation(f in observable(4), g in observable(4), h in observable(4)) {
        let l = Layout::new(2, 1);
        let lhs = lie_poisson_bracket(&f, &(g.clone() * h.clone()), l);
        let rhs = lie_poisson_bracket(&f, &g, l) * h.clone() + g * lie_poisson_bracket(&f, &h, l);
        prop_assert!((lhs - rhs).is_zero());
    }

    #[test]
    fn linear_brackets_match_structure_constants(f in linear(18), g in linear(18)) {
        let layout = Layout::new(3, 2);
        let got = lie_poisson_bracket(&linear_observable(&f), &linear_observable(&g), layout);
        prop_assert_eq!(got, structure_bracket(&f, &g, layout));
    }

    #[test]
    fn torsor_class_survives_coboundaries(
        sigma in prop::collection::vec(-5i64..=5, 7),
        tau0 in prop::collection::vec(-5i64..=5, 0..4),
        tau1 in prop::collection::vec(-5i64..=5, 0..4),
    ) {
        // sigma_01 = sum_{k=-3}^{3} c_k x^k; its class is c_{-1}.
        let t = TorsorAtlas::from_shift_p1(laurent(&sigma, -3)).unwrap();
        prop_assert_eq!(torsor_class(&t).unwrap(), int(sigma[2]));
        let tau = |c: &[i64]| -> UniPoly { Poly::new(c.iter().map(|&k| int(k)).collect()) };
        let moved = t.coboundary(&tau(&tau0), &tau(&tau1)).unwrap();
        prop_assert_eq!(torsor_class(&moved).unwrap(), int(sigma[2]));
    }

    #[test]
    fn char_poly_is_conjugation_invariant(a in small_matrix(3), g in unimodular(3)) {
        let conj = g.clone() * a.clone() * g.inverse().unwrap();
        prop_assert_eq!(conj.char_poly(), a.char_poly());
        prop_assert_eq!(conj.trace(), a.trace());
        prop_assert_eq!(conj.det(), a.det());
    }

    #[test]
    fn trace_residues_balance(
        r in prop::collection::vec(small_matrix(2), 1..4),
        c in small_matrix(2),
    ) {
        let poles: Vec<Rational> = (0..r.len() as i64).map(|k| int(2 * k - 1)).collect();
        let psi = HiggsField::from_residues(&poles, &r, &c).unwrap();
        prop_assert!(residue_balance(&psi).is_zero());
    }

    #[test]
    fn spectral_polynomial_is_cleared_determinant(
        r in prop::collection::vec(rank_one(2), 1..4),
        c in small_matrix(2),
        x0 in (-7i64..=7).prop_map(|k| Rational::new(k.into(), 3.into())),
        eta0 in -5i64..=5,
    ) {
        let poles: Vec<Rational> = (0..r.len() as i64).map(int).collect();
        prop_assume!(!poles.contains(&x0));
        let psi = HiggsField::from_residues(&poles, &r, &c).unwrap();
        let p = spectral_polynomial(&psi).unwrap();
        // Oracle: evaluate hhat at x0 entrywise, take the determinant there.
        let h = Matrix::from_fn(2, 2, |a, b| psi.hhat()[(a, b)].eval(&x0).unwrap());
        let shifted = h - QMatrix::identity(2).scale(&int(eta0));
        let d = poles.iter().fold(int(1), |acc, p| acc * (x0.clone() - p.clone()));
        prop_assert_eq!(p.eval(&x0, &int(eta0)), d * shifted.det());
    }
}
