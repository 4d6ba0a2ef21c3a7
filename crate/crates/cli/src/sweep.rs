//! Convergence over a list of motion durations.

use std::path::PathBuf;
use std::sync::Arc;

use cavity_sta::moore_adiabatic::{AdiabaticGrid, AdiabaticMoore};
use cavity_sta::sta::{limit_trajectory, sup_distance_to_limit, EffectiveOptions, EffectiveTrajectory};
use cavity_sta::{make_reference, Family, ReferenceGeometry, Side};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Geometry, RunConfig};
use crate::output::{ensure_dir, loglog_slope, write_csv, write_toml};
use crate::run::RunOptions;
use crate::CliError;

/// Residual samples per duration.
const RESIDUAL_SAMPLES: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub tau: f64,
    pub adiabatic_residual_left: f64,
    pub adiabatic_residual_right: f64,
    pub max_speed_left: f64,
    pub max_speed_right: f64,
    pub limit_distance_left: f64,
    pub limit_distance_right: f64,
}

impl SweepRow {
    pub fn residual(&self) -> f64 {
        self.adiabatic_residual_left.max(self.adiabatic_residual_right)
    }

    pub fn max_speed(&self) -> f64 {
        self.max_speed_left.max(self.max_speed_right)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResults {
    pub taus: Vec<f64>,
    /// Fitted exponent of the adiabatic residual against τ.
    pub residual_slope: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
struct SweepSummary<'a> {
    geometry: &'a Geometry,
    results: &'a SweepResults,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub results: SweepResults,
    pub out_dir: PathBuf,
}

/// One duration of the sweep.
pub fn sweep_point(family: Family, geom: ReferenceGeometry, tau: f64) -> Result<SweepRow, CliError> {
    let pair = make_reference(family, geom, tau)?;
    let e = pair.ends;
    let am = Arc::new(AdiabaticMoore::build(&pair, AdiabaticGrid::default())?);
    let (t0, t1) = (-(e.r0 + tau), tau + 3.0 * e.df());
    let times: Vec<f64> = (0..=RESIDUAL_SAMPLES).map(|i| t0 + (t1 - t0) * i as f64 / RESIDUAL_SAMPLES as f64).collect();
    let (res_l, res_r) = am.adiabatic_residual(&times)?;
    let opts = EffectiveOptions { max_halvings: 0, ..EffectiveOptions::default() };
    let left = EffectiveTrajectory::solve_on(am.clone(), Side::Left, t0, t1, opts)?;
    let right = EffectiveTrajectory::solve_on(am, Side::Right, t0, t1, opts)?;
    let (lim_l, lim_r) = limit_trajectory(e.l0, e.lf, e.r0, e.rf)?;
    Ok(SweepRow {
        tau,
        adiabatic_residual_left: res_l,
        adiabatic_residual_right: res_r,
        max_speed_left: left.max_speed,
        max_speed_right: right.max_speed,
        limit_distance_left: sup_distance_to_limit(&left, &lim_l, tau),
        limit_distance_right: sup_distance_to_limit(&right, &lim_r, tau),
    })
}

/// Sweeps the configured reference family over `taus` (ascending, ≥ 3).
pub fn sweep_tau(cfg: &RunConfig, taus: &[f64], opts: &RunOptions) -> Result<SweepReport, CliError> {
    let family = cfg.family()?;
    if family == Family::Custom {
        return Err(CliError::Config("sweeps need a reference family, not custom paths".into()));
    }
    if taus.len() < 3 {
        return Err(CliError::Config(format!("a sweep needs at least 3 durations, got {}", taus.len())));
    }
    if !taus.windows(2).all(|w| w[0] < w[1]) {
        return Err(CliError::Config("sweep durations must be strictly ascending".into()));
    }
    let g = &cfg.geometry;
    let geom = ReferenceGeometry { l0: g.l0, lf: g.lf, r0: g.r0, eps: g.eps };
    let rows: Vec<Result<SweepRow, CliError>> = taus.par_iter().map(|&tau| sweep_point(family, geom, tau)).collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    let residuals: Vec<f64> = rows.iter().map(SweepRow::residual).collect();
    let results = SweepResults { taus: taus.to_vec(), residual_slope: loglog_slope(taus, &residuals) };

    let out_dir = opts.out_dir.clone().unwrap_or_else(|| cfg.outputs.dir.clone());
    ensure_dir(&out_dir)?;
    let header = [
        "tau",
        "adiabatic_residual_left",
        "adiabatic_residual_right",
        "max_speed_left",
        "max_speed_right",
        "limit_distance_left",
        "limit_distance_right",
    ]
    .map(String::from)
    .to_vec();
    let data: Vec<Vec<f64>> = rows
        .iter()
        .map(|r| {
            vec![
                r.tau,
                r.adiabatic_residual_left,
                r.adiabatic_residual_right,
                r.max_speed_left,
                r.max_speed_right,
                r.limit_distance_left,
                r.limit_distance_right,
            ]
        })
        .collect();
    write_csv(&out_dir.join("sweep.csv"), &header, &data)?;
    write_toml(&out_dir.join("sweep_summary.toml"), &SweepSummary { geometry: g, results: &results })?;
    Ok(SweepReport { rows, results, out_dir })
}
