//! One scenario: reference run, shortcut run, limit curves, energies.

use std::path::PathBuf;
use std::sync::Arc;

use cavity_sta::energy::{energy_parts, EnergyParts, EnergyQuadrature, EnergyRecord, ThermalState};
use cavity_sta::moore_adiabatic::{AdiabaticGrid, AdiabaticMoore};
use cavity_sta::sta::{
    critical_tau, effective_pair, effective_window, limit_trajectory, CriticalOptions, EffectiveOptions,
    EffectiveTrajectory,
};
use cavity_sta::{ExactMoore, Family, Mirror, MooreSolution, ReferenceGeometry, Side, TrajectoryPair};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Geometry, Numerics, Outputs, RunConfig};
use crate::output::{ensure_dir, write_csv, write_toml};
use crate::CliError;

/// Command-line overrides.
#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Treat superluminal effective mirrors as a hard failure.
    pub strict: bool,
    pub out_dir: Option<PathBuf>,
}

/// A named pass/fail check recorded in the summary.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub limit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Results {
    pub tau: f64,
    pub d0: f64,
    pub df: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub time_samples: usize,
    pub temperatures: Vec<f64>,
    pub q_ref_final: Vec<f64>,
    pub q_eff_final: Vec<f64>,
    pub max_speed_left: f64,
    pub max_speed_right: f64,
    pub realizable: bool,
    pub exact_residual_left: f64,
    pub exact_residual_right: f64,
    pub adiabatic_residual_left: f64,
    pub adiabatic_residual_right: f64,
    pub effective_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub effective_exact_mismatch: Option<f64>,
    pub continuity: bool,
    pub v_lim: f64,
    pub limit_intercept_left: f64,
    pub limit_intercept_right: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_c: Option<f64>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub geometry: Geometry,
    pub numerics: Numerics,
    pub outputs: Outputs,
    pub results: Results,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub summary: Summary,
    pub records: Vec<EnergyRecord>,
    pub out_dir: PathBuf,
}

impl RunReport {
    pub fn failures(&self) -> Vec<&Check> {
        self.summary.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn passed(&self) -> bool {
        self.summary.checks.iter().all(|c| c.passed)
    }
}

/// `[t_start, t_end]` and the energy time grid.
pub fn time_grid(cfg: &RunConfig, pair: &TrajectoryPair) -> (f64, f64, Vec<f64>) {
    let e = pair.ends;
    let (a, b) = pair.motion_window().unwrap_or((0.0, 0.0));
    let tau = if pair.tau > 0.0 { pair.tau } else { cfg.geometry.tau };
    let n = &cfg.numerics;
    let t0 = n.t_start.unwrap_or(a - (e.r0 + tau));
    let t1 = n.t_end.unwrap_or(b + 3.0 * e.df());
    let step = n.time_step.unwrap_or(tau / 40.0);
    let count = ((t1 - t0) / step).ceil().max(1.0) as usize;
    let times = (0..=count).map(|i| if i == count { t1 } else { t0 + (t1 - t0) * i as f64 / count as f64 }).collect();
    (t0, t1, times)
}

fn nan_parts() -> EnergyParts {
    EnergyParts { anomaly: f64::NAN, kinetic: f64::NAN }
}

/// Runs one scenario and writes its artifacts.
pub fn run(cfg: &RunConfig, opts: &RunOptions) -> Result<RunReport, CliError> {
    cfg.validate()?;
    let n = &cfg.numerics;
    let pair = cfg.reference_pair()?;
    let ends = pair.ends;
    let (t0, t1, times) = time_grid(cfg, &pair);
    let mut notes = Vec::new();

    let exact = ExactMoore::from_pair(&pair)?.with_tolerance(n.root_tol);
    let am = Arc::new(AdiabaticMoore::build(&pair, AdiabaticGrid::default())?);

    let eff_opts = EffectiveOptions { step: n.effective_step, refine_tol: n.effective_tol, max_halvings: 4 };
    let span = |side: Side| {
        let (lo, hi) = effective_window(&am, side).unwrap_or((t0, t1));
        (lo.min(t0), hi.max(t1))
    };
    let ((la, lb), (ra, rb)) = (span(Side::Left), span(Side::Right));
    let (left_eff, right_eff) = rayon::join(
        || EffectiveTrajectory::solve_on(am.clone(), Side::Left, la, lb, eff_opts),
        || EffectiveTrajectory::solve_on(am.clone(), Side::Right, ra, rb, eff_opts),
    );
    let (left_eff, right_eff) = (left_eff?, right_eff?);
    let realizable = left_eff.realizable && right_eff.realizable;
    if !realizable {
        notes.push(format!(
            "effective mirrors are superluminal (max speeds {:.6}, {:.6})",
            left_eff.max_speed, right_eff.max_speed
        ));
    }
    if !(left_eff.converged && right_eff.converged) {
        notes.push("effective-trajectory refinement stopped before its tolerance".into());
    }

    let (lim_l, lim_r) = limit_trajectory(ends.l0, ends.lf, ends.r0, ends.rf)?;

    let quad = EnergyQuadrature { points: n.spatial_points, rel_tol: n.energy_rel_tol, max_doublings: 3 };
    type Row = (f64, f64, f64, f64, EnergyParts, EnergyParts);
    let rows: Vec<Result<Row, CliError>> = times
        .par_iter()
        .map(|&t| {
            let (l, r) = (pair.left.position(t), pair.right.position(t));
            let reference = energy_parts(&exact, (l, r), t, quad)?;
            let (le, re) = (left_eff.resolve(t), right_eff.resolve(t));
            let (le, re) = match (le, re) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) if realizable => return Err(e.into()),
                _ => (f64::NAN, f64::NAN),
            };
            let effective = if le.is_finite() && re.is_finite() && re > le {
                match energy_parts(am.as_ref(), (le, re), t, quad) {
                    Ok(p) => p,
                    Err(e) if realizable => return Err(e.into()),
                    Err(_) => nan_parts(),
                }
            } else {
                nan_parts()
            };
            Ok((l, r, le, re, reference, effective))
        })
        .collect();
    let rows: Vec<Row> = rows.into_iter().collect::<Result<_, _>>()?;
    if rows.iter().any(|r| r.5.anomaly.is_nan()) {
        notes.push("effective energy undefined at some times (non-realizable branch)".into());
    }

    let ref_parts: Vec<EnergyParts> = rows.iter().map(|r| r.4).collect();
    let eff_parts: Vec<EnergyParts> = rows.iter().map(|r| r.5).collect();
    let lengths: Vec<f64> = rows.iter().map(|r| r.1 - r.0).collect();
    let mut records = Vec::new();
    for &temp in &cfg.geometry.temperatures {
        let state = ThermalState::new(temp, ends.d0())?;
        records.push(EnergyRecord::assemble(&state, &times, &ref_parts, &eff_parts, &lengths)?);
    }

    let (exact_l, exact_r) = exact.residuals(&times)?;
    let (ad_l, ad_r) = am.adiabatic_residual(&times)?;
    let effective_residual = left_eff.max_residual().max(right_eff.max_residual());

    // The exact solver driven by the effective mirrors should reproduce the
    // adiabatic Moore functions.
    let mismatch = if realizable && am.is_monotone() && am.motion_window().is_some() {
        let (lp, rp) = effective_pair(&am)?;
        let solver = ExactMoore::new(lp, rp)?.with_tolerance(n.root_tol);
        let probes: Vec<f64> = (0..=40).map(|i| t0 + (t1 - t0) * i as f64 / 40.0).collect();
        let errs: Vec<Result<f64, CliError>> = probes
            .par_iter()
            .map(|&z| {
                let dg = (solver.g_jet(z)?.value() - am.g_jet(z)?.value()).abs();
                let df = (solver.f_jet(z)?.value() - am.f_jet(z)?.value()).abs();
                Ok(dg.max(df))
            })
            .collect();
        Some(errs.into_iter().collect::<Result<Vec<_>, _>>()?.into_iter().fold(0.0, f64::max))
    } else {
        None
    };

    let family = cfg.family()?;
    let tau_c = match n.critical_tau {
        Some([lo, hi]) if family != Family::Custom => {
            let g = &cfg.geometry;
            let geom = ReferenceGeometry { l0: g.l0, lf: g.lf, r0: g.r0, eps: g.eps };
            match critical_tau(family, geom, (lo, hi), CriticalOptions::default()) {
                Ok(tc) => Some(tc),
                Err(e) => {
                    notes.push(format!("critical duration: {e}"));
                    None
                }
            }
        }
        Some(_) => {
            notes.push("critical duration search needs a reference family".into());
            None
        }
        None => None,
    };

    let mut checks = vec![
        Check {
            name: "exact_moore_residual".into(),
            passed: exact_l.max(exact_r) < n.residual_tol,
            value: exact_l.max(exact_r),
            limit: n.residual_tol,
        },
        Check {
            name: "effective_defining_residual".into(),
            passed: effective_residual < 1e-9,
            value: effective_residual,
            limit: 1e-9,
        },
    ];
    if realizable {
        for rec in &records {
            let q = *rec.q_eff.last().unwrap();
            checks.push(Check {
                name: format!("q_eff_final[T={}]", rec.temperature),
                passed: (q - 1.0).abs() < n.endpoint_tol,
                value: (q - 1.0).abs(),
                limit: n.endpoint_tol,
            });
        }
    }
    if let Some(m) = mismatch {
        checks.push(Check { name: "effective_exact_mismatch".into(), passed: m < 1e-6, value: m, limit: 1e-6 });
    }
    if opts.strict {
        let v = left_eff.max_speed.max(right_eff.max_speed);
        checks.push(Check { name: "subluminal".into(), passed: realizable, value: v, limit: 1.0 });
    }

    let results = Results {
        tau: pair.tau,
        d0: ends.d0(),
        df: ends.df(),
        t_start: t0,
        t_end: t1,
        time_samples: times.len(),
        temperatures: cfg.geometry.temperatures.clone(),
        q_ref_final: records.iter().map(|r| *r.q_ref.last().unwrap()).collect(),
        q_eff_final: records.iter().map(|r| *r.q_eff.last().unwrap()).collect(),
        max_speed_left: left_eff.max_speed,
        max_speed_right: right_eff.max_speed,
        realizable,
        exact_residual_left: exact_l,
        exact_residual_right: exact_r,
        adiabatic_residual_left: ad_l,
        adiabatic_residual_right: ad_r,
        effective_residual,
        effective_exact_mismatch: mismatch,
        continuity: cavity_sta::continuity_check(ends.l0, ends.lf, ends.r0, ends.rf),
        v_lim: lim_r.slope,
        limit_intercept_left: lim_l.intercept,
        limit_intercept_right: lim_r.intercept,
        tau_c,
        notes,
    };

    let out_dir = opts.out_dir.clone().unwrap_or_else(|| cfg.outputs.dir.clone());
    ensure_dir(&out_dir)?;
    if cfg.outputs.trajectories {
        let header = ["t", "L_ref", "R_ref", "L_eff", "R_eff", "L_lim", "R_lim"].map(String::from).to_vec();
        let data: Vec<Vec<f64>> =
            times.iter().zip(&rows).map(|(&t, r)| vec![t, r.0, r.1, r.2, r.3, lim_l.eval(t), lim_r.eval(t)]).collect();
        write_csv(&out_dir.join("trajectories.csv"), &header, &data)?;
    }
    if cfg.outputs.moore {
        let (lo_l, _) = pair.left.position_bounds();
        let (_, hi_r) = pair.right.position_bounds();
        let reach = lo_l.abs().max(hi_r.abs());
        let (z0, z1) = (t0 - reach, t1 + reach);
        let m = n.moore_points;
        let zs: Vec<f64> = (0..m).map(|i| z0 + (z1 - z0) * i as f64 / (m - 1) as f64).collect();
        let data: Vec<Result<Vec<f64>, CliError>> = zs
            .par_iter()
            .map(|&z| {
                Ok(vec![
                    z,
                    am.f_jet(z)?.value(),
                    am.g_jet(z)?.value(),
                    exact.f_jet(z)?.value(),
                    exact.g_jet(z)?.value(),
                ])
            })
            .collect();
        let data = data.into_iter().collect::<Result<Vec<_>, _>>()?;
        let header = ["z", "F_ad", "G_ad", "F_exact", "G_exact"].map(String::from).to_vec();
        write_csv(&out_dir.join("moore.csv"), &header, &data)?;
    }
    if cfg.outputs.energy {
        let mut header = vec!["t".to_string()];
        for rec in &records {
            for col in ["E_ref", "E_eff", "E_ad", "Q_ref", "Q_eff"] {
                header.push(format!("{col}[T={}]", rec.temperature));
            }
        }
        let data: Vec<Vec<f64>> = (0..times.len())
            .map(|i| {
                let mut row = vec![times[i]];
                for rec in &records {
                    row.extend([rec.e_ref[i], rec.e_eff[i], rec.e_ad[i], rec.q_ref[i], rec.q_eff[i]]);
                }
                row
            })
            .collect();
        write_csv(&out_dir.join("energy.csv"), &header, &data)?;
    }
    let summary = Summary {
        geometry: cfg.geometry.clone(),
        numerics: cfg.numerics.clone(),
        outputs: Outputs { dir: out_dir.clone(), ..cfg.outputs.clone() },
        results,
        checks,
    };
    write_toml(&out_dir.join("summary.toml"), &summary)?;
    Ok(RunReport { summary, records, out_dir })
}
