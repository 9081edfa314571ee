//! Small named phase points used by the test suites and the CLI.
//!
//! Residues are built as `v w^T` with small integer vectors, so they are
//! rank one by construction.

use crate::dynamics::PhasePoint;
use crate::{int, QMatrix, Rational};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub point: PhasePoint,
}

fn outer(v: &[i64], w: &[i64]) -> QMatrix {
    QMatrix::from_fn(v.len(), w.len(), |i, j| int(v[i] * w[j]))
}

fn q(rows: &[&[i64]]) -> QMatrix {
    QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect())
}

fn fixture(name: &str, poles: &[i64], residues: Vec<QMatrix>, constant: QMatrix) -> Fixture {
    let poles: Vec<Rational> = poles.iter().map(|&p| int(p)).collect();
    Fixture {
        name: name.to_string(),
        point: PhasePoint::new(poles, residues, constant).expect("fixture shapes are consistent"),
    }
}

/// Rank-one residues with nonzero trace (Case1 at every pole), for
/// `n in {2, 3}` and `|C| in {1, 2, 3}`.
pub fn case1_fixtures() -> Vec<Fixture> {
    let r2 = [outer(&[1, 1], &[1, 2]), outer(&[1, 2], &[-1, 1]), outer(&[1, -1], &[2, 1])];
    let c2 = q(&[&[0, 1], &[3, 0]]);
    let r3 = [
        outer(&[1, 0, 1], &[1, 1, 0]),
        outer(&[0, 1, 1], &[1, 0, 3]),
        outer(&[1, 1, 0], &[0, 1, -1]),
    ];
    let c3 = q(&[&[0, 1, 0], &[0, 0, 1], &[2, 1, 1]]);
    let poles = [0, 1, -1];
    let mut out = Vec::new();
    for k in 1..=3 {
        out.push(fixture(&format!("case1-n2-c{k}"), &poles[..k], r2[..k].to_vec(), c2.clone()));
    }
    for k in 1..=3 {
        out.push(fixture(&format!("case1-n3-c{k}"), &poles[..k], r3[..k].to_vec(), c3.clone()));
    }
    out
}

/// Nilpotent rank-one residues (Case2), generic position.
pub fn case2_fixtures() -> Vec<Fixture> {
    vec![
        fixture("case2-n2-c1", &[0], vec![q(&[&[0, 0], &[1, 0]])], q(&[&[0, 1], &[0, 0]])),
        fixture(
            "case2-n2-c2",
            &[0, 1],
            vec![outer(&[1, 1], &[1, -1]), outer(&[1, 2], &[2, -1])],
            q(&[&[1, 1], &[2, 0]]),
        ),
        fixture(
            "case2-n3-c1",
            &[0],
            vec![q(&[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]])],
            q(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 2]]),
        ),
        fixture(
            "case2-n3-c2",
            &[0, 2],
            vec![outer(&[1, 0, 1], &[1, 1, -1]), outer(&[0, 1, 1], &[1, 1, -1])],
            q(&[&[0, 1, 0], &[0, 0, 1], &[1, 1, 2]]),
        ),
    ]
}

/// Mixed fixture: one Case1 and one Case2 pole.
pub fn mixed_fixtures() -> Vec<Fixture> {
    vec![fixture(
        "mixed-n2-c2",
        &[0, 1],
        vec![outer(&[1, 1], &[1, 2]), q(&[&[0, 0], &[1, 0]])],
        q(&[&[0, 1], &[1, 0]]),
    )]
}

/// `hhat = [[0, 1], [f, 0]]` with `f = c_0 + sum c_i/(x - p_i)`, so the
/// curve is `eta^2 = f`. Entries: `(poles, residues c_i, c_0)`.
pub fn hyperelliptic_family() -> Vec<(Fixture, Vec<i64>, Vec<i64>, i64)> {
    let cases: Vec<(Vec<i64>, Vec<i64>, i64)> = vec![
        (vec![0], vec![1], 0),
        (vec![0], vec![1], 1),
        (vec![0, 1], vec![1, 1], 0),
        (vec![0, 1], vec![1, 2], 1),
        (vec![0, 1, -1], vec![1, 1, 1], 0),
        (vec![0, 1, -1], vec![1, -2, 3], 1),
        (vec![0, 1, 2], vec![2, -1, 1], 0),
    ];
    cases
        .into_iter()
        .enumerate()
        .map(|(k, (poles, res, c0))| {
            let residues = res.iter().map(|&c| q(&[&[0, 0], &[c, 0]])).collect();
            let f = fixture(&format!("hyperelliptic-{k}"), &poles, residues, q(&[&[0, 1], &[c0, 0]]));
            (f, poles, res, c0)
        })
        .collect()
}

/// Rank-two fixtures with `hhat_12` not identically zero, for the divisor checks.
pub fn rank_two_fixtures() -> Vec<Fixture> {
    case1_fixtures()
        .into_iter()
        .chain(case2_fixtures())
        .chain(mixed_fixtures())
        .filter(|f| f.point.constant.rows() == 2)
        .collect()
}

/// The one-point divisor fixture `[[c/x, (x - 2)/x], [1, 0]]`.
pub fn one_point_divisor(c: i64) -> Fixture {
    fixture("one-point-divisor", &[0], vec![q(&[&[c, -2], &[0, 0]])], q(&[&[0, 1], &[1, 0]]))
}

/// Two poles whose divisor is a double point at `x = -1`.
pub fn coincident_divisor() -> Fixture {
    fixture(
        "coincident-divisor",
        &[0, 1],
        vec![outer(&[1, 1], &[1, -1]), outer(&[2, 1], &[1, 2])],
        q(&[&[0, 1], &[1, 0]]),
    )
}

pub fn all() -> Vec<Fixture> {
    case1_fixtures()
        .into_iter()
        .chain(case2_fixtures())
        .chain(mixed_fixtures())
        .chain(hyperelliptic_family().into_iter().map(|t| t.0))
        .chain([one_point_divisor(3), coincident_divisor()])
        .collect()
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}
