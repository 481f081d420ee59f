//! Exit criteria. Each test prints one PASS/FAIL line per criterion.

use std::io::Write;
use std::time::{Duration, Instant};

use lamedtn::harness::config::GeometrySpec;
use lamedtn::harness::experiments::{
    run_converge_disk, run_eikonal_residual, run_oracle_halfspace, run_verify_algebra,
};
use lamedtn::harness::{ExperimentConfig, ExperimentKind, Report};
use lamedtn::medium::Harmonic;
use lamedtn::parametrix::LocalParametrix;
use lamedtn::quantizer::japanese;
use lamedtn::reference::bessel::{bessel_logderiv, bessel_ratio};
use lamedtn::reference::disk::disk_dn_mode;
use lamedtn::reference::halfspace::halfspace_dn_exact;
use lamedtn::reference::Orientation;
use lamedtn::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    criterion: &'static str,
    lines: Vec<(Option<bool>, String)>,
    started: Instant,
    budget: Duration,
}

impl Verdict {
    fn new(criterion: &'static str, budget_secs: u64) -> Self {
        Self { criterion, lines: Vec::new(), started: Instant::now(), budget: Duration::from_secs(budget_secs) }
    }

    fn sub(&mut self, ok: bool, msg: impl Into<String>) {
        self.lines.push((Some(ok), msg.into()));
    }

    fn info(&mut self, msg: impl Into<String>) {
        self.lines.push((None, msg.into()));
    }

    fn from_report(&mut self, report: &Report, names: &[&str]) {
        for name in names {
            let c = report.find(name).unwrap_or_else(|| panic!("missing check {name}"));
            self.sub(c.passed, c.line());
        }
    }

    fn finish(mut self) {
        let took = self.started.elapsed();
        self.sub(
            took <= self.budget,
            format!("runtime {:.2} s (budget {} s)", took.as_secs_f64(), self.budget.as_secs()),
        );
        let ok = self.lines.iter().all(|l| l.0 != Some(false));
        let mut text = String::new();
        for (pass, l) in &self.lines {
            let tag = match pass {
                Some(true) => "ok  ",
                Some(false) => "FAIL",
                None => "    ",
            };
            text.push_str(&format!("    {tag} {l}\n"));
        }
        text.push_str(&format!("{} {}\n", if ok { "PASS" } else { "FAIL" }, self.criterion));
        // straight to the handle so the lines survive output capture
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes()).unwrap();
        out.flush().unwrap();
        assert!(ok, "{} failed", self.criterion);
    }
}

#[test]
fn criterion_1_algebra_suite() {
    let mut v = Verdict::new("criterion 1: algebra identities, 1000 instances, d = 2..5, tolerance 1e-11", 5);
    let config = ExperimentConfig::default_for(ExperimentKind::VerifyAlgebra);
    assert_eq!(config.instances, 1000);
    assert_eq!(config.grids.dims, vec![2, 3, 4, 5]);
    assert_eq!(config.tolerances.algebra, 1e-11);
    let report = run_verify_algebra(&config).unwrap();
    v.from_report(
        &report,
        &[
            "u0-maps-xi-to-e1",
            "z0-commutes-with-e11",
            "det-m-closed-form",
            "theta-conjugation",
            "inverse-d2-formula",
            "inverse-closed-form-vs-lu",
            "u-pi-ut-identity",
            "det-w0-closed-form",
        ],
    );
    // negative control: the transposed outer product breaks the first identity
    let mut bad = config.clone();
    bad.debug.transposed_outer = true;
    bad.instances = 50;
    let r = run_verify_algebra(&bad).unwrap();
    v.sub(!r.find("u0-maps-xi-to-e1").unwrap().passed, "transposed ⊗ control fails as expected");
    v.finish();
}

#[test]
fn criterion_2_identity_suite() {
    let mut v = Verdict::new("criterion 2: r₀ + ρ_sρ_p identities to 1e-12 on 500 samples, positive lower bound", 5);
    let mut config = ExperimentConfig::default_for(ExperimentKind::VerifyAlgebra);
    config.instances = 1;
    let report = run_verify_algebra(&config).unwrap();
    v.from_report(
        &report,
        &["r0-plus-rho-product-sum-identity", "r0-plus-rho-product-difference-identity", "min-abs-r0-plus-rho-product"],
    );
    let c = report.find("min-abs-r0-plus-rho-product").unwrap();
    v.info(format!("scan minimum |r₀ + ρ_sρ_p| = {:.6e}", c.value));
    v.finish();
}

#[test]
fn criterion_3_halfspace_oracle() {
    let mut v = Verdict::new("criterion 3: symbol vs exact half-space DN, ≥ 200 points, tolerance 1e-8", 10);
    let config = ExperimentConfig::default_for(ExperimentKind::OracleHalfspace);
    assert_eq!(config.media.len(), 3);
    assert_eq!(config.grids.dims, vec![2, 3]);
    assert!(config.grids.theta.iter().all(|t| (0.1..=1.0).contains(t)));
    assert!(config.grids.xi.iter().all(|x| x.abs() <= 10.0));
    let report = run_oracle_halfspace(&config).unwrap();
    v.from_report(&report, &["halfspace-oracle-max-rel-diff"]);
    let points = report.tables[0].rows.iter().filter(|r| r[5] == "true").count();
    v.sub(points >= 200, format!("{points} in-regime grid points"));
    v.finish();
}

#[test]
fn criterion_4_disk_rate() {
    let mut v = Verdict::new("criterion 4: O(h) rate on the unit disk, slopes in [0.9, 1.5], θ-shape ratio ≤ 10", 120);
    let config = ExperimentConfig::default_for(ExperimentKind::ConvergeDisk);
    assert_eq!(config.media[0].constants().unwrap(), (1.0, 2.0, 1.0));
    assert!(matches!(config.geometry, GeometrySpec::Circle { radius } if radius == 1.0));
    let hs: Vec<f64> = (4..=9).map(|k| 0.5f64.powi(k)).collect();
    assert_eq!(config.grids.h, hs);
    assert_eq!(config.grids.fixed_theta, Some(0.5));
    assert_eq!(config.grids.fixed_h, Some(0.5f64.powi(6)));
    let report = run_converge_disk(&config).unwrap();
    v.from_report(&report, &["per-mode-slope-in-h", "full-operator-slope-in-h", "per-mode-theta-shape-ratio"]);
    v.info(report.find("full-operator-theta-shape-ratio").unwrap().line());
    v.finish();
}

#[test]
fn criterion_5_eikonal_residual() {
    let mut v = Verdict::new("criterion 5: eikonal residual halving 2^-N, flat residual < 1e-15, phase checks", 10);
    let config = ExperimentConfig::default_for(ExperimentKind::EikonalResidual);
    assert!(matches!(config.geometry, GeometrySpec::Circle { radius } if radius == 1.0));
    assert_eq!(config.grids.orders, vec![4, 6, 8]);
    assert_eq!(config.grids.theta.len() * config.grids.xi.len(), 20);
    let report = run_eikonal_residual(&config).unwrap();
    v.from_report(&report, &["residual-ratio-log2-deviation", "phase-checks-without-collar", "flat-constant-residual"]);
    v.finish();
}

fn varying_medium(rng: &mut ChaCha8Rng) -> ElasticMedium {
    let mut wave = |k: f64| Harmonic {
        axis: 0,
        wavenumber: k,
        cos: rng.random_range(-0.1..0.1),
        sin: rng.random_range(-0.1..0.1),
    };
    let (a, b, c) = (wave(1.0), wave(2.0), wave(1.0));
    ElasticMedium::from_profiles(
        Profile { base: 1.0, harmonics: vec![a], normal: vec![0.2, -0.1] },
        Profile { base: 2.0, harmonics: vec![b], normal: vec![0.3] },
        Profile { base: 1.0, harmonics: vec![c], normal: vec![-0.15] },
    )
}

#[test]
fn criterion_6_amplitude_constraints() {
    let mut v = Verdict::new("criterion 6: amplitude constraints and dual-path boundary reduction", 10);
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let (mut sum, mut pol, mut mdiff, mut qdiff) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for i in 0..100 {
        let chart = if i % 2 == 0 {
            GeometryChart::PlanarCurve(PlanarCurve::circle(rng.random_range(0.8..3.0)).unwrap())
        } else {
            GeometryChart::FlatHalfspace { dim: 2 }
        };
        let medium = varying_medium(&mut rng);
        let p = SemiclassicalParams::from_h_theta(0.02, rng.random_range(0.1..1.0)).unwrap();
        let pt = chart.cotangent_point(&[rng.random_range(0.0..3.0)], &[rng.random_range(-4.0..4.0)]).unwrap();
        let lp = LocalParametrix::new(&p, &medium, &chart, &pt, 6).unwrap();
        sum = sum.max(lp.amplitudes(0.0).unwrap().sum_defect());
        pol = pol.max(lp.polarization_defect(rng.random_range(0.0..0.02)).unwrap());
        let r = lp.reduction().unwrap();
        mdiff = mdiff.max(r.m_diff);
        qdiff = qdiff.max(r.q_diff);
    }
    v.sub(sum <= 1e-12, format!("amplitude sum equals identity: {sum:.3e} (limit 1e-12)"));
    v.sub(pol <= 1e-10, format!("polarization constraint: {pol:.3e} (limit 1e-10)"));
    v.sub(mdiff <= 1e-11, format!("principal symbol, reduction vs closed form: {mdiff:.3e} (limit 1e-11)"));
    v.sub(qdiff <= 1e-11, format!("subprincipal term, reduction vs closed form: {qdiff:.3e} (limit 1e-11)"));

    let medium = ElasticMedium::constant(1.0, 2.0, 1.0).unwrap();
    let chart = GeometryChart::PlanarCurve(PlanarCurve::circle(1.0).unwrap());
    let (mut closed, mut check) = (0.0f64, 0.0f64);
    for &xi in &[-3.0, -1.0, 0.0, 0.4, 2.5] {
        let p = SemiclassicalParams::from_h_theta(0.02, 0.5).unwrap();
        let pt = chart.cotangent_point(&[0.7], &[xi]).unwrap();
        let r = LocalParametrix::new(&p, &medium, &chart, &pt, 6).unwrap().reduction().unwrap();
        closed = closed.max(r.q_closed.max_abs());
        check = check.max(r.q_check.max_abs());
    }
    v.sub(closed <= 1e-11, format!("closed-form q on the circle, constant medium: {closed:.3e}"));
    v.sub(check <= 1e-11, format!("reduction q on the circle, constant medium: {check:.3e}"));
    v.finish();
}

#[test]
fn criterion_7_quantizer() {
    let mut v = Verdict::new("criterion 7: quantizer identity, Parseval, Sobolev weights", 2);
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let length = 2.0 * std::f64::consts::PI * 1.3;
    let modes = 40usize;
    let mut f = FourierBoundaryData::zeros(length, 2, modes).unwrap();
    for n in f.mode_range().collect::<Vec<_>>() {
        let c =
            ComplexVector((0..2).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect());
        f.set_mode(n, c).unwrap();
    }
    let h = 0.05;
    let m = 4 * modes + 16;
    let samples = f.synthesize(m).unwrap();

    let id = f.apply_symbol(h, m, |_, _| Ok(ComplexMatrix::identity(2))).unwrap();
    let e = id.max_abs_diff(&samples) / samples.values.iter().map(|v| v.max_abs()).fold(0.0, f64::max);
    v.sub(e <= 1e-13, format!("Op_h(1) = identity: {e:.3e} (limit 1e-13)"));

    let back = FourierBoundaryData::analyze(length, &samples.values, modes).unwrap();
    let mut rt = 0.0f64;
    for n in f.mode_range() {
        rt = rt.max((back.mode(n).unwrap() - f.mode(n).unwrap()).max_abs());
    }
    let pars = (samples.l2_norm() - f.l2_norm()).abs() / f.l2_norm();
    v.sub(rt <= 1e-12 && pars <= 1e-12, format!("round trip {rt:.3e}, Parseval {pars:.3e} (limit 1e-12)"));

    let mut worst = 0.0f64;
    for s in [-1.0, 0.5, 3.0] {
        let g = f.apply_multiplier(h, |xi| Ok(ComplexMatrix::identity(2).scale(japanese(xi).powf(s).into()))).unwrap();
        for n in f.mode_range() {
            let w = japanese(-2.0 * std::f64::consts::PI * h * n as f64 / length).powf(s);
            let expect = f.mode(n).unwrap().scale(w.into());
            worst = worst.max((g.mode(n).unwrap() - &expect).max_abs() / expect.max_abs());
        }
        let direct: f64 = f
            .mode_range()
            .map(|n| japanese(f.frequency(n, h)).powf(2.0 * s) * f.mode(n).unwrap().norm().powi(2))
            .sum::<f64>()
            .sqrt();
        worst = worst.max((f.hs_norm(s, h) - direct).abs() / direct);
    }
    v.sub(worst <= 4.0 * f64::EPSILON, format!("⟨ξ⟩^s acts diagonally per mode: {worst:.3e}"));
    v.finish();
}

/// `J_n(w)` from its power series.
fn bessel_series(n: u32, w: C64) -> C64 {
    let half = w / 2.0;
    let mut term = half.powu(n) / (1..=n).map(f64::from).product::<f64>();
    let mut acc = term;
    for k in 1..80 {
        term *= -half * half / (k as f64 * (k + n) as f64);
        acc += term;
    }
    acc
}

#[test]
fn criterion_8_bessel_kernel() {
    let mut v = Verdict::new("criterion 8: Bessel log-derivative, recurrence, disk mode 0, half-space limit", 10);
    let one = C64::new(1.0, 0.0);
    let oracle = -bessel_series(1, one) / bessel_series(0, one);
    let got = bessel_logderiv(0, one).unwrap();
    let e = (got - oracle).norm() / oracle.norm();
    v.sub(e <= 1e-12, format!("J₀'/J₀ at w = 1 vs power series: {e:.3e} (limit 1e-12)"));

    // J_n/J_{n−1} = 1/(2n/w − J_{n+1}/J_n) on |w| = 500
    let mut rec = 0.0f64;
    for arg in [0.0, 0.3, 0.8, 1.2] {
        let w = C64::from_polar(500.0, arg);
        for n in [1u32, 5, 40, 200, 499, 700] {
            let lhs = bessel_ratio(n - 1, w).unwrap();
            let rhs = (w.inv() * (2.0 * n as f64) - bessel_ratio(n, w).unwrap()).inv();
            rec = rec.max((lhs - rhs).norm() / lhs.norm());
        }
    }
    v.sub(rec <= 1e-12, format!("three-term recurrence at |w| = 500: {rec:.3e} (limit 1e-12)"));

    let mut off = 0.0f64;
    for theta in [0.1, 0.5, 1.0] {
        for h in [0.1, 0.01] {
            let p = SemiclassicalParams::from_h_theta(h, theta).unwrap();
            let m = disk_dn_mode(&p, 1.0, 2.0, 1.0, 1.0, 0, Orientation::Inward).unwrap().matrix;
            off = off.max(m[(0, 1)].norm().max(m[(1, 0)].norm()) / m.max_abs());
        }
    }
    v.sub(off <= 1e-12, format!("disk mode 0 off-diagonal entries: {off:.3e} (limit 1e-12)"));

    // fixed ξ, growing radius: the disk DN tends to the half-space DN like 1/R.
    // In the inward disk frame (−r̂, −φ̂) mode n has tangential wave number −hn/R.
    let p = SemiclassicalParams::from_h_theta(1.0 / 16.0, 0.5).unwrap();
    let radii: Vec<f64> = (0..6).map(|k| 2f64.powi(k)).collect();
    let mut slopes = Vec::new();
    for xi in [0.0, 0.5, -1.5] {
        let mut logs = Vec::new();
        for &r in &radii {
            let mode = (-xi * r / p.h()).round() as i64;
            let disk = disk_dn_mode(&p, 1.0, 2.0, 1.0, r, mode, Orientation::Inward).unwrap().matrix;
            let half = halfspace_dn_exact(&p, 1.0, 2.0, 1.0, &[xi], Orientation::Inward).unwrap().matrix;
            logs.push(((&disk - &half).max_abs() / japanese(xi).powi(3)).ln());
        }
        let x: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
        let n = x.len() as f64;
        let (mx, my) = (x.iter().sum::<f64>() / n, logs.iter().sum::<f64>() / n);
        let sxy: f64 = x.iter().zip(&logs).map(|(a, b)| (a - mx) * (b - my)).sum();
        let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
        slopes.push(sxy / sxx);
    }
    let ok = slopes.iter().all(|s| (s + 1.0).abs() <= 0.3);
    v.sub(ok, format!("disk → half-space log-log slope in R: {slopes:.3?} (target −1 ± 0.3)"));
    v.finish();
}
