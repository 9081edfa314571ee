use std::fmt;
use std::str::FromStr;

use lconn::algebra::roots::complex_roots;
use lconn::algebra::Matrix;
use lconn::dynamics::{
    darboux_check, hamiltonian_flow, hamiltonians_with, involution_check, leaf_and_casimir_check, BracketReport,
    HamiltonianSet,
};
use lconn::higgs::{gauge_constant, HiggsField};
use lconn::normal_form::{equivalent_normal_forms, reduce, verify_normal_form, DEFAULT_JET_ORDER};
use lconn::spectral::curve::residue_balance;
use lconn::spectral::divisor::display_mumford;
use lconn::spectral::lattice::definitional_lattices;
use lconn::spectral::monodromy::fibre_at;
use lconn::spectral::{
    cokernel_divisor, genus, infinity_intersection, pushdown_lattices, reconstruct, smoothness_check, spectral_curve,
};
use lconn::surface::{classify_ruled_poisson, compactify, global_section, torsor_class};
use lconn::{format_rational, int, QMatrix, QPoly, Rational};
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::Report;
use crate::scene::{Options, SceneFile};
use crate::CliError;

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_GAUGES: usize = 20;
pub const DEFAULT_FLOW_T: f64 = 1.0;
pub const DEFAULT_FLOW_DT: f64 = 1e-3;
pub const DEFAULT_FLOW_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    TorsorClass,
    ClassifySurface,
    Spectral,
    NormalForm,
    Involution,
    LeafCheck,
    Flow,
    DarbouxCheck,
    Lattices,
    Roundtrip,
}

impl Command {
    pub const ALL: [Command; 10] = [
        Command::TorsorClass,
        Command::ClassifySurface,
        Command::Spectral,
        Command::NormalForm,
        Command::Involution,
        Command::LeafCheck,
        Command::Flow,
        Command::DarbouxCheck,
        Command::Lattices,
        Command::Roundtrip,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::TorsorClass => "torsor-class",
            Command::ClassifySurface => "classify-surface",
            Command::Spectral => "spectral",
            Command::NormalForm => "normal-form",
            Command::Involution => "involution",
            Command::LeafCheck => "leaf-check",
            Command::Flow => "flow",
            Command::DarbouxCheck => "darboux-check",
            Command::Lattices => "lattices",
            Command::Roundtrip => "roundtrip",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown command {s:?}"))
    }
}

pub struct Outcome {
    pub report: Report,
    /// Plot data, header included.
    pub csv: Option<String>,
}

/// Runs `command` on `scene` with `overrides` taking precedence over the
/// scene's own options. The report echoes the scene with all options
/// resolved so that re-running on the echo is byte-identical.
pub fn run(command: Command, scene: &SceneFile, overrides: &Options) -> Result<Outcome, CliError> {
    let mut resolved = scene.clone();
    resolved.options = resolve(command, &scene.options.merged(overrides));
    let mut report = Report::new(command.name(), resolved.clone());
    let csv = match command {
        Command::TorsorClass => torsor_cmd(&resolved, &mut report)?,
        Command::ClassifySurface => classify_cmd(&resolved, &mut report)?,
        Command::Spectral => spectral_cmd(&resolved, &mut report)?,
        Command::NormalForm => normal_form_cmd(&resolved, &mut report)?,
        Command::Involution | Command::LeafCheck => brackets_cmd(command, &resolved, &mut report)?,
        Command::Flow => flow_cmd(&resolved, &mut report)?,
        Command::DarbouxCheck => darboux_cmd(&resolved, &mut report)?,
        Command::Lattices => lattices_cmd(&resolved, &mut report)?,
        Command::Roundtrip => roundtrip_cmd(&resolved, &mut report)?,
    };
    Ok(Outcome { report, csv })
}

/// Fills in the defaults each command reads; unused options stay unset.
fn resolve(command: Command, o: &Options) -> Options {
    let mut out = o.clone();
    match command {
        Command::NormalForm | Command::Lattices => {
            out.jet_order.get_or_insert(DEFAULT_JET_ORDER);
        }
        Command::Flow => {
            out.flow_t.get_or_insert(DEFAULT_FLOW_T);
            out.flow_dt.get_or_insert(DEFAULT_FLOW_DT);
            out.tol.get_or_insert(DEFAULT_FLOW_TOL);
            out.promote_constant.get_or_insert(false);
        }
        Command::DarbouxCheck => {
            out.step.get_or_insert(lconn::dynamics::darboux::DEFAULT_STEP);
            out.tol.get_or_insert(lconn::dynamics::darboux::DEFAULT_TOL);
        }
        Command::Involution | Command::LeafCheck => {
            out.promote_constant.get_or_insert(false);
        }
        _ => {}
    }
    if command == Command::NormalForm {
        out.seed.get_or_insert(DEFAULT_SEED);
        out.gauges.get_or_insert(DEFAULT_GAUGES);
    }
    out
}

fn strings(qs: &[Rational]) -> Vec<String> {
    qs.iter().map(format_rational).collect()
}

fn matrix_strings(m: &lconn::RationalFunctionMatrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|e| e.display()).collect()).collect()
}

fn torsor_cmd(scene: &SceneFile, report: &mut Report) -> Result<Option<String>, CliError> {
    let (t, degree) = scene.torsor()?;
    let class = torsor_class(&t)?;
    let section = global_section(&t)?;
    report.value("shift", t.shift(0, 1).map(|s| s.display()));
    report.value("class", format_rational(&class));
    report.value(
        "global section",
        section.as_ref().map(|s| s.eta.iter().map(|e| e.display()).collect::<Vec<_>>()),
    );
    report.exact(
        "section iff class zero",
        section.is_some() == class.is_zero(),
        format!("class {}, section {}", format_rational(&class), if section.is_some() { "found" } else { "none" }),
    );
    if let Some(d) = degree {
        report.exact("class equals degree", class == int(d), format!("degree {d}"));
    }
    let check = compactify(&t).check()?;
    report.exact(
        "poisson surface",
        check.passed(),
        format!(
            "liouville {}, transports {}/{}, bivector orders at mu = 0 {:?}",
            check.liouville, check.curvature_transport, check.bivector_transport, check.mu_orders
        ),
    );
    Ok(None)
}

fn classify_cmd(scene: &SceneFile, report: &mut Report) -> Result<Option<String>, CliError> {
    let class = classify_ruled_poisson(scene.genus(), scene.bundle()?)?;
    report.value("case", class.case);
    report.value("genus", class.genus);
    report.value("degree", class.degree);
    report.value("divisor", class.divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>());
    if !class.notes.is_empty() {
        report.value("notes", &class.notes);
    }
    report.exact("classified", !class.divisors.is_empty(), format!("{} divisor types", class.divisors.len()));
    Ok(None)
}

/// Real sample grid for plotting, `x = -3, -2.9, ..., 3`.
fn sample_csv(curve: &lconn::spectral::SpectralCurve) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io { path: "csv".into(), source: e.into() };
    w.write_record(["x", "branch", "re_eta", "im_eta"]).map_err(io)?;
    let poles: Vec<f64> = curve.poles.iter().map(|p| num_traits::ToPrimitive::to_f64(p).unwrap_or(f64::NAN)).collect();
    for k in -30i32..=30 {
        let x = f64::from(k) / 10.0;
        if poles.iter().any(|p| (p - x).abs() < 1e-9) {
            continue;
        }
        let fibre = fibre_at(&curve.p, Complex64::new(x, 0.0));
        if fibre.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut roots = complex_roots(&fibre)?;
        roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        for (branch, eta) in roots.iter().enumerate() {
            w.write_record([x.to_string(), branch.to_string(), eta.re.to_string(), eta.im.to_string()]).map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io { path: "csv".into(), source: e.into_error() })?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

fn spectral_cmd(scene: &SceneFile, report: &mut Report) -> Result<Option<String>, CliError> {
    let psi = scene.higgs()?;
    let curve = spectral_curve(&psi)?;
    report.value("curve", curve.p.display());
    report.value("curve at infinity", curve.q.display_with("mu"));
    report.value("degree", curve.degree);
    let smooth = smoothness_check(&curve)?;
    report.value("smooth", smooth.smooth);
    if smooth.smooth {
        match genus(&curve) {
            Ok(g) => report.value("genus", g.genus),
            Err(e) => report.value("genus", e.to_string()),
        }
    } else {
        let w: Vec<String> = smooth.witnesses.iter().map(|w| format!("x = {}, {} = {}", w.x, w.chart, w.fibre)).collect();
        report.value("singular points", w);
    }
    match cokernel_divisor(&psi) {
        Ok(data) => {
            report.value("divisor degree", data.degree);
            let pts: Vec<String> = data.points.iter().map(|p| format!("({}, {})", p.x, p.eta)).collect();
            report.value("divisor points", pts);
            if let Some((u, v)) = &data.mumford {
                report.value("mumford", display_mumford(u, v));
            }
        }
        Err(e) => report.value("divisor", e.to_string()),
    }
    let balance = residue_balance(&psi);
    report.exact("residue theorem", balance.is_zero(), format!("sum of residues of tr hhat = {}", format_rational(&balance)));
    match infinity_intersection(&curve) {
        Ok(laws) => {
            let shown: Vec<String> = laws
                .iter()
                .map(|l| format!("{} (contact {}, {:?})", l.display(), l.contact, l.case))
                .collect();
            report.value("infinity", shown);
            report.exact("infinity law", true, format!("{} poles", laws.len()));
        }
        Err(e) => report.exact("infinity law", false, e.to_string()),
    }
    Ok(Some(sample_csv(&curve)?))
}

/// Random unimodular `L U` with small integer entries.
fn random_gauge(rng: &mut ChaCha8Rng, n: usize) -> QMatrix {
    let entries: Vec<i64> = (0..2 * n * n).map(|_| rng.gen_range(-2..=2)).collect();
    let lo = Matrix::from_fn(n, n, |a, b| match a.cmp(&b) {
        std::cmp::Ordering::Equal => int(1),
        std::cmp::Ordering::Greater => int(entries[a * n + b]),
        std::cmp::Ordering::Less => int(0),
    });
    let up = Matrix::from_fn(n, n, |a, b| match a.cmp(&b) {
        std::cmp::Ordering::Equal => int(1),
        std::cmp::Ordering::Less => int(entries[n * n + a * n + b]),
        std::cmp::Ordering::Greater => int(0),
    });
    lo * up
}

fn normal_form_cmd(scene: &SceneFile, report: &mut Report) -> Result<Option<String>, CliError> {
    let psi = scene.higgs()?;
    let o = &scene.options;
    let m = o.jet_order.unwrap_or(DEFAULT_JET_ORDER);
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed.unwrap_or(DEFAULT_SEED));
    let gauges = o.gauges.unwrap_or(DEFAULT_GAUGES);
    let mut summary = Vec::new();
    for p in psi.poles() {
        let r = reduce(&psi, p, m)?;
        let label = format!("pole {}", format_rational(p));
        summary.push(format!("{label}: {:?}, leading {:?}", r.case, strings(&r.invariants.leading())));
        report.exact(&format!("{label} re-conjugation"), verify_normal_form(&r, &psi, p, m)?, format!("order {m}"));
        let mut agree = 0;
        for _ in 0..gauges {
            let g = random_gauge(&mut rng, psi.rank());
            let moved = gauge_constant(&psi, &g)?;
            let r2 = reduce(&moved, p, m)?;
            if r2.invariants.leading() == r.invariants.leading() && equivalent_normal_forms(&r, &r2)? {
                agree += 1;
            }
        }
        report.exact(&format!("{label} gauge invariance"), agree == gauges, format!("{agree}/{gauges} random constant gauges"));
    }
    report.value("normal forms", summary);
    Ok(None)
}

fn hamiltonian_set(scene: &SceneFile) -> Result<(HamiltonianSet, lconn::dynamics::PhasePoint), CliError> {
    let pt = scene.phase_point()?;
    let set = hamiltonians_with(&pt.poles, &pt.constant, scene.options.promote_constant.unwrap_or(false))?;
    Ok((set, pt))
}

fn bracket_summary(report: &mut Report, name: &str, b: &BracketReport) {
    let failures: Vec<String> = b.failures().iter().map(|e| format!("{{{}, {}}} = {}", e.left, e.right, e.value)).collect();
    report.exact(name, b.passed(), format!("{} brackets, {} nonzero", b.entries.len(), failures.len()));
    if !failures.is_empty() {
        report.value("nonzero brackets", failures);
    }
}

fn brackets_cmd(command: Command, scene: &SceneFile, report: &mut Report) -> Result<Option<String>, CliError> {
    let (set, _) = hamiltonian_set(scene)?;
    report.value("hamiltonians", (0..set.len()).map(|k| set.label(k)).collect::<Vec<_>>());
    if command == Command::Involution {
        bracket_summary(report, "involution", &involution_check(&set, &[]));
    } else {
        bracket_summary(report, "leaf invariants", &leaf_and_casimir_check(&set, &[]));
    }
    Ok(None)
}

/// `sum_k H_k / (k + 2)`: a fixed generic combination of the Hamiltonians.
fn flow_hamiltonian(set: &HamiltonianSet) -> QPoly {
    set.members
        .iter()
        .enumerate()
        .fold(QPoly::zero(), |acc, (k, h)| acc + h.scale(&Rational::new(1.into(), (k as i64 + 2).into())))
}

fn flow_cmd(scene: &SceneFile, report: &mut Report) -> Result<Option<String>, CliError> {
    let (set, pt) = hamiltonian_set(scene)?;
    let o = &scene.options;
    let (t, dt, tol) = (
        o.flow_t.unwrap_or(DEFAULT_FLOW_T),
        o.flow_dt.unwrap_or(DEFAULT_FLOW_DT),
        o.tol.unwrap_or(DEFAULT_FLOW_TOL),
    );
    let r = hamiltonian_flow(&flow_hamiltonian(&set), &set, &pt, t, dt)?;
    report.value("steps", r.steps);
    report.numeric("spectral drift", r.spectral_drift, tol);
    report.numeric("trace drift", r.trace_drift, tol);
    report.numeric("rank-one defect", r.rank_one_defect, tol);
    let mut csv = String::from("t,spectral_drift\n");
    for (t, d) in &r.samples {
        csv.push_str(&format!("{t},{d}\n"));
    }
    Ok(Some(csv))
}

fn darboux_cmd(scene: &SceneFile, report: &mut Report) -> Result<Option<String>, CliError> {
    let pt = scene.phase_point()?;
    let o = &scene.options;
    let step = o.step.unwrap_or(lconn::dynamics::darboux::DEFAULT_STEP);
    let tol = o.tol.unwrap_or(lconn::dynamics::darboux::DEFAULT_TOL);
    let r = darboux_check(&pt, step, tol)?;
    report.value("divisor points", r.points);
    report.value("bracket matrix", &r.matrix);
    report.numeric("canonical pattern", r.max_error, tol);
    Ok(None)
}

fn lattices_cmd(scene: &SceneFile, report: &mut Report) -> Result<Option<String>, CliError> {
    let psi = scene.higgs()?;
    let m = scene.options.jet_order.unwrap_or(DEFAULT_JET_ORDER);
    let mut sheaves = Vec::new();
    for p in psi.poles() {
        let nf = reduce(&psi, p, m)?;
        let closed = pushdown_lattices(&nf)?;
        let jets = definitional_lattices(&nf)?;
        report.exact(
            &format!("pole {} lattices", format_rational(p)),
            closed == jets && closed.orders_bounded(),
            format!("{} closed form agrees with jet computation: {}", closed.case, closed == jets),
        );
        sheaves.push(closed);
    }
    report.value("lattices", sheaves);
    Ok(None)
}

fn roundtrip_cmd(scene: &SceneFile, report: &mut Report) -> Result<Option<String>, CliError> {
    let psi: HiggsField = scene.higgs()?;
    let curve = spectral_curve(&psi)?;
    let data = cokernel_divisor(&psi)?;
    let rebuilt = reconstruct(&curve, &data)?;
    if let Some((u, v)) = &data.mumford {
        report.value("mumford", display_mumford(u, v));
    }
    report.value("reconstructed", matrix_strings(rebuilt.hhat()));
    let same = rebuilt.hhat().char_poly() == psi.hhat().char_poly();
    report.exact("characteristic polynomial", same, format!("curve {}", curve.p.display()));
    Ok(None)
}
