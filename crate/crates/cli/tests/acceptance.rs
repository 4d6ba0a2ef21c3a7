//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use cavity_sta::sta::{max_effective_speed, sup_distance_to_limit};
use cavity_sta::{
    critical_tau, density, effective_pair, eval_mode, limit_trajectory, make_reference, thermal_z, AdiabaticGrid,
    AdiabaticMoore, CriticalOptions, EffectiveOptions, EffectiveTrajectory, ExactMoore, Family, Jet, Mirror,
    MooreSolution, ReferenceGeometry, Side, ThermalState, TrajectoryPair, Which,
};
use cavity_sta_cli::run::RunReport;
use cavity_sta_cli::{run, sweep_tau, RunConfig, RunOptions};

type Outcome = Result<String, String>;

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn load(name: &str) -> RunConfig {
    let mut cfg = RunConfig::load(&configs().join(name)).expect("config loads");
    cfg.numerics.critical_tau = None;
    cfg
}

fn run_in(cfg: &RunConfig, dir: &Path, strict: bool) -> Result<RunReport, String> {
    run(cfg, &RunOptions { strict, out_dir: Some(dir.to_path_buf()) }).map_err(|e| e.to_string())
}

fn pair(family: Family, lf: f64, eps: f64, tau: f64) -> TrajectoryPair {
    make_reference(family, ReferenceGeometry { l0: 0.0, lf: Some(lf), r0: 1.0, eps }, tau).expect("reference pair")
}

fn contraction(tau: f64) -> TrajectoryPair {
    pair(Family::Contraction, 0.3, 0.3, tau)
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

struct Runs {
    _dir: tempfile::TempDir,
    reports: Vec<(&'static str, RunReport)>,
}

fn scenario_runs() -> Result<Runs, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    for name in ["static", "contraction", "expansion", "rigid"] {
        let out = dir.path().join(name);
        reports.push((name, run_in(&load(&format!("{name}.toml")), &out, false)?));
    }
    Ok(Runs { _dir: dir, reports })
}

fn static_baseline(runs: &Runs) -> Outcome {
    let report = &runs.reports[0].1;
    let (mut q_err, mut e_err) = (0.0f64, 0.0f64);
    for rec in &report.records {
        let want = -PI / 24.0 + thermal_z(rec.temperature).map_err(|e| e.to_string())?;
        for i in 0..rec.times.len() {
            q_err = q_err.max((rec.q_ref[i] - 1.0).abs()).max((rec.q_eff[i] - 1.0).abs());
            e_err = e_err.max((rec.e_ref[i] - want).abs() / want.abs()).max((rec.e_eff[i] - want).abs() / want.abs());
        }
    }
    verdict(q_err < 1e-9 && e_err < 1e-9, format!("max |Q-1| = {q_err:.2e}, max rel E error = {e_err:.2e}"))
}

fn sta_endpoint(runs: &Runs) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, report) in &runs.reports[1..] {
        let r = &report.summary.results;
        for (i, t) in r.temperatures.iter().enumerate() {
            let (qe, qr) = ((r.q_eff_final[i] - 1.0).abs(), (r.q_ref_final[i] - 1.0).abs());
            ok &= qe < 1e-3 && qr > 0.05;
            parts.push(format!("{name}@T={t}: |Qeff-1|={qe:.1e} |Qref-1|={qr:.3}"));
        }
    }
    verdict(ok, parts.join("; "))
}

fn moore_residuals(runs: &Runs) -> Outcome {
    let mut worst = 0.0f64;
    for (_, report) in &runs.reports {
        let r = &report.summary.results;
        worst = worst.max(r.exact_residual_left).max(r.exact_residual_right);
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cfg = RunConfig::load(&configs().join("sweep.toml")).map_err(|e| e.to_string())?;
    let taus = [5.0, 10.0, 20.0, 40.0, 80.0];
    let sweep = sweep_tau(&cfg, &taus, &RunOptions { strict: false, out_dir: Some(dir.path().into()) })
        .map_err(|e| e.to_string())?;
    let slope = sweep.results.residual_slope;
    verdict(
        worst < 1e-6 && (slope + 2.0).abs() <= 0.2,
        format!("max exact residual = {worst:.2e}, adiabatic residual slope = {slope:.3}"),
    )
}

fn limit_formulas() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    // Slope from each side's own formula.
    let (l, r) = limit_trajectory(0.0, 0.3, 1.0, 0.7).map_err(|e| e.to_string())?;
    let (d0, df) = (1.0, 0.4);
    let oracle = -(d0 - df) / (d0 + df);
    ok &= l.slope == r.slope && (r.slope - oracle).abs() < 1e-15;
    ok &= (r.slope + 3.0 / 7.0).abs() < 1e-15 && (r.intercept - 11.0 / 14.0).abs() < 1e-15;
    notes.push(format!("contraction v_lim = {:.15}, R_c = {:.15}", r.slope, r.intercept));
    let (rl, rr) = limit_trajectory(0.0, 0.3, 1.0, 1.3).map_err(|e| e.to_string())?;
    ok &= rl.slope == 0.0 && rr.slope == 0.0;
    notes.push(format!("rigid v_lim = {}", rr.slope));

    let tau = 0.4;
    for (name, p) in [
        ("asymmetric contraction", pair(Family::Contraction, 0.5, -0.3, tau)),
        ("rigid", pair(Family::Rigid, 0.4, -0.4, tau)),
    ] {
        let e = p.ends;
        let am = Arc::new(AdiabaticMoore::build(&p, AdiabaticGrid::default()).map_err(|e| e.to_string())?);
        let (ll, rl) = limit_trajectory(e.l0, e.lf, e.r0, e.rf).map_err(|e| e.to_string())?;
        let opts = EffectiveOptions::default();
        let left = EffectiveTrajectory::solve(am.clone(), Side::Left, opts).map_err(|e| e.to_string())?;
        let right = EffectiveTrajectory::solve(am, Side::Right, opts).map_err(|e| e.to_string())?;
        let (dl, dr) = (sup_distance_to_limit(&left, &ll, tau), sup_distance_to_limit(&right, &rl, tau));
        ok &= dl < 0.05 && dr < 0.05;
        notes.push(format!("{name} at tau=0.4: dist L {dl:.4}, R {dr:.4}"));
    }
    verdict(ok, notes.join("; "))
}

fn cross_solver() -> Outcome {
    let mut mismatch = 0.0f64;
    for p in [contraction(1.2), pair(Family::Expansion, -0.3, -0.3, 1.2), pair(Family::Rigid, 0.3, -0.3, 1.2)] {
        let am = Arc::new(AdiabaticMoore::build(&p, AdiabaticGrid::default()).map_err(|e| e.to_string())?);
        let (lp, rp) = effective_pair(&am).map_err(|e| e.to_string())?;
        let exact = ExactMoore::new(lp, rp).map_err(|e| e.to_string())?;
        for i in 0..=200 {
            let z = -2.5 + 9.0 * i as f64 / 200.0;
            for which in [Which::F, Which::G] {
                let a = am.jet(which, z).map_err(|e| e.to_string())?.value();
                let b = exact.jet(which, z).map_err(|e| e.to_string())?.value();
                mismatch = mismatch.max((a - b).abs());
            }
        }
    }

    // Densities of the slow reference run, exact against adiabatic.
    let tau = 40.0;
    let p = contraction(tau);
    let exact = ExactMoore::from_pair(&p).map_err(|e| e.to_string())?;
    let am = AdiabaticMoore::build(&p, AdiabaticGrid::default()).map_err(|e| e.to_string())?;
    let state = ThermalState::new(0.0, p.ends.d0()).map_err(|e| e.to_string())?;
    let (t0, t1) = (-(p.ends.r0 + tau), tau + 3.0 * p.ends.df());
    let (mut diff, mut size) = (0.0f64, 0.0f64);
    for i in 0..=200 {
        let t = t0 + (t1 - t0) * i as f64 / 200.0;
        let (l, r) = (p.left.position(t), p.right.position(t));
        for j in 0..=20 {
            let x = l + (r - l) * j as f64 / 20.0;
            let de = density(&exact, (l, r), x, t, &state).map_err(|e| e.to_string())?;
            let da = density(&am, (l, r), x, t, &state).map_err(|e| e.to_string())?;
            diff = diff.max((de - da).abs());
            size = size.max(da.abs());
        }
    }
    let rel = diff / size;
    verdict(
        mismatch < 1e-6 && rel < 1e-3,
        format!("exact-on-effective vs adiabatic = {mismatch:.2e}; density sup-relative gap at tau=40 = {rel:.3e}"),
    )
}

fn richardson(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> [f64; 3] {
    let raw = |h: f64| {
        let (p1, m1, p2, m2, c) = (f(x + h), f(x - h), f(x + 2.0 * h), f(x - 2.0 * h), f(x));
        [(p1 - m1) / (2.0 * h), (p1 - 2.0 * c + m1) / (h * h), (p2 - 2.0 * p1 + 2.0 * m1 - m2) / (2.0 * h * h * h)]
    };
    let (coarse, fine) = (raw(h), raw(h / 2.0));
    std::array::from_fn(|k| fine[k] + (fine[k] - coarse[k]) / 3.0)
}

/// Worst mismatch per order, relative to that order's largest magnitude.
fn jet_mismatch(moore: &dyn MooreSolution, which: Which, lo: f64, hi: f64, h: f64) -> Result<f64, String> {
    let kinks = match which {
        Which::F => moore.f_kinks(lo - 1.0, hi + 1.0),
        Which::G => moore.g_kinks(lo - 1.0, hi + 1.0),
    };
    let value = |z: f64| moore.jet(which, z).map(|j| j.value()).unwrap_or(f64::NAN);
    let mut rows = Vec::new();
    let mut scale = [0.0f64; 3];
    for i in 0..=200 {
        let z = lo + (hi - lo) * i as f64 / 200.0;
        if kinks.iter().any(|k| (z - k).abs() <= 0.1) {
            continue;
        }
        let jet: Jet = moore.jet(which, z).map_err(|e| e.to_string())?;
        for (s, k) in scale.iter_mut().zip(1..) {
            *s = s.max(jet.d(k).abs());
        }
        rows.push((jet, richardson(&value, z, h)));
    }
    let mut worst = 0.0f64;
    for (jet, fd) in rows {
        for k in 0..3 {
            worst = worst.max((jet.d(k + 1) - fd[k]).abs() / scale[k]);
        }
    }
    Ok(worst)
}

fn derivative_oracles() -> Outcome {
    let mut worst_exact = 0.0f64;
    let mut worst_ad = 0.0f64;
    for p in [contraction(1.2), pair(Family::Expansion, -0.3, -0.3, 1.2), pair(Family::Rigid, 0.3, -0.3, 1.2)] {
        let exact = ExactMoore::from_pair(&p).map_err(|e| e.to_string())?;
        let am = AdiabaticMoore::build(&p, AdiabaticGrid::default()).map_err(|e| e.to_string())?;
        for which in [Which::F, Which::G] {
            worst_exact = worst_exact.max(jet_mismatch(&exact, which, -2.0, 6.0, 0.005)?);
            worst_ad = worst_ad.max(jet_mismatch(&am, which, -2.0, 4.0, 0.005)?);
        }
    }
    verdict(
        worst_exact < 1e-4 && worst_ad < 1e-4,
        format!("worst relative derivative mismatch: exact {worst_exact:.2e}, adiabatic {worst_ad:.2e}"),
    )
}

fn boundary_conditions() -> Outcome {
    let mut worst = 0.0f64;
    for p in [pair(Family::Contraction, 0.0, 0.0, 1.2), contraction(1.2)] {
        let exact = ExactMoore::from_pair(&p).map_err(|e| e.to_string())?;
        let am = Arc::new(AdiabaticMoore::build(&p, AdiabaticGrid::default()).map_err(|e| e.to_string())?);
        let opts = EffectiveOptions::default();
        let le = EffectiveTrajectory::solve(am.clone(), Side::Left, opts).map_err(|e| e.to_string())?;
        let re = EffectiveTrajectory::solve(am.clone(), Side::Right, opts).map_err(|e| e.to_string())?;
        for i in 0..=200 {
            let t = -2.2 + 6.0 * i as f64 / 200.0;
            let (l, r) = (p.left.position(t), p.right.position(t));
            let (el, er) = (le.resolve(t).map_err(|e| e.to_string())?, re.resolve(t).map_err(|e| e.to_string())?);
            for k in [1u32, 2, 5] {
                for x in [l, r] {
                    worst = worst.max(eval_mode(&exact, (l, r), k, x, t).map_err(|e| e.to_string())?.norm());
                }
                for x in [el, er] {
                    worst = worst.max(eval_mode(am.as_ref(), (el, er), k, x, t).map_err(|e| e.to_string())?.norm());
                }
            }
        }
    }
    verdict(worst < 1e-12, format!("max |psi_k| on the mirrors = {worst:.2e}"))
}

fn realizability() -> Outcome {
    let geom = ReferenceGeometry { l0: 0.0, lf: Some(0.3), r0: 1.0, eps: 0.3 };
    let opts = CriticalOptions::default();
    let tau_c = critical_tau(Family::Contraction, geom, (0.3, 2.0), opts).map_err(|e| e.to_string())?;
    let probe = [0.5, 0.75, tau_c - 2e-3, tau_c + 2e-3, 1.5, 2.0];
    let mut speeds = Vec::new();
    for &tau in &probe {
        let p = make_reference(Family::Contraction, geom, tau).map_err(|e| e.to_string())?;
        speeds.push(max_effective_speed(&p, opts.grid, opts.effective).map_err(|e| e.to_string())?);
    }
    let monotone = speeds.windows(2).all(|w| w[0] > w[1]);
    let crosses = speeds[2] > 1.0 && speeds[3] < 1.0;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut cfg = load("contraction.toml");
    cfg.geometry.tau = 0.8;
    cfg.outputs.moore = false;
    let report = run_in(&cfg, dir.path(), true)?;
    let flagged = !report.summary.results.realizable && report.failures().iter().any(|c| c.name == "subluminal");
    verdict(
        monotone && crosses && flagged,
        format!(
            "tau_c = {tau_c:.4}; max speeds {:?} at tau {:?}; tau=0.8 flagged superluminal: {flagged}",
            speeds.iter().map(|v| format!("{v:.3}")).collect::<Vec<_>>(),
            probe.iter().map(|v| format!("{v:.3}")).collect::<Vec<_>>(),
        ),
    )
}

fn main() {
    let start = Instant::now();
    let runs = scenario_runs();
    let with_runs = |f: fn(&Runs) -> Outcome| match &runs {
        Ok(r) => f(r),
        Err(e) => Err(format!("scenario runs failed: {e}")),
    };
    let criteria: Vec<(&str, Outcome)> = vec![
        ("static baseline", with_runs(static_baseline)),
        ("STA endpoint", with_runs(sta_endpoint)),
        ("Moore residuals", with_runs(moore_residuals)),
        ("limit trajectories", limit_formulas()),
        ("cross-solver oracle", cross_solver()),
        ("derivative oracles", derivative_oracles()),
        ("boundary conditions", boundary_conditions()),
        ("realizability", realizability()),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in criteria.iter().enumerate() {
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {} [{tag}] {name}: {detail}", i + 1);
    }
    println!("{} of {} criteria passed in {:.1?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
