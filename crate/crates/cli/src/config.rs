//! Scenario files.
//!
//! ```toml
//! [geometry]
//! family = "contraction"
//! l0 = 0.0
//! lf = 0.3
//! r0 = 1.0
//! eps = 0.3
//! tau = 1.2
//! temperatures = [0.0, 1.0, 5.0]
//!
//! [numerics]
//! time_step = 0.03
//!
//! [outputs]
//! dir = "out/contraction"
//! ```

use std::path::{Path, PathBuf};

use cavity_sta::{make_reference, Family, MirrorPath, PolySegment, ReferenceGeometry, TrajectoryPair};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub geometry: Geometry,
    #[serde(default)]
    pub numerics: Numerics,
    #[serde(default)]
    pub outputs: Outputs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Sweep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub custom: Option<Custom>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Geometry {
    pub family: String,
    #[serde(default)]
    pub l0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lf: Option<f64>,
    #[serde(default = "one")]
    pub r0: f64,
    #[serde(default)]
    pub eps: f64,
    #[serde(default = "one")]
    pub tau: f64,
    #[serde(default = "default_temperatures")]
    pub temperatures: Vec<f64>,
}

fn one() -> f64 {
    1.0
}

fn default_temperatures() -> Vec<f64> {
    vec![0.0]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Numerics {
    /// Energy time step; τ/40 when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_step: Option<f64>,
    /// Run window; `[−(R₀+τ), τ + 3(R_f − L_f)]` when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_start: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
    /// Samples per kink-free panel of the cavity integral (1 mod 4).
    pub spatial_points: usize,
    pub energy_rel_tol: f64,
    pub root_tol: f64,
    /// Effective-trajectory sample spacing; τ/512 when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub effective_step: Option<f64>,
    pub effective_tol: f64,
    /// Rows of `moore.csv`.
    pub moore_points: usize,
    /// Hard limit on exact-solver boundary residuals.
    pub residual_tol: f64,
    /// Hard limit on `|Q_eff(final) − 1|` for realizable runs.
    pub endpoint_tol: f64,
    /// `[lo, hi]` to search for the critical duration.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub critical_tau: Option<[f64; 2]>,
}

impl Default for Numerics {
    fn default() -> Self {
        Numerics {
            time_step: None,
            t_start: None,
            t_end: None,
            spatial_points: 2001,
            energy_rel_tol: 1e-8,
            root_tol: 1e-12,
            effective_step: None,
            effective_tol: 1e-8,
            moore_points: 801,
            residual_tol: 1e-6,
            endpoint_tol: 1e-3,
            critical_tau: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Outputs {
    pub dir: PathBuf,
    pub trajectories: bool,
    pub moore: bool,
    pub energy: bool,
}

impl Default for Outputs {
    fn default() -> Self {
        Outputs { dir: PathBuf::from("out"), trajectories: true, moore: true, energy: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub taus: Vec<f64>,
}

/// Piecewise-polynomial paths for `family = "custom"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Custom {
    #[serde(default)]
    pub left: Vec<Segment>,
    #[serde(default)]
    pub right: Vec<Segment>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Segment {
    pub start: f64,
    pub end: f64,
    /// Coefficients of powers of `t − start`.
    pub coeffs: Vec<f64>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
        Self::from_toml(&text)
    }

    pub fn family(&self) -> Result<Family, CliError> {
        self.geometry.family.parse().map_err(|e: cavity_sta::Error| CliError::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |msg: String| Err(CliError::Config(msg));
        let n = &self.numerics;
        for (name, v) in [
            ("energy_rel_tol", n.energy_rel_tol),
            ("root_tol", n.root_tol),
            ("effective_tol", n.effective_tol),
            ("residual_tol", n.residual_tol),
            ("endpoint_tol", n.endpoint_tol),
        ] {
            if !(v > 0.0) {
                return bad(format!("numerics.{name} must be positive, got {v}"));
            }
        }
        for (name, v) in [("time_step", n.time_step), ("effective_step", n.effective_step)] {
            if let Some(v) = v {
                if !(v > 0.0) {
                    return bad(format!("numerics.{name} must be positive, got {v}"));
                }
            }
        }
        if n.spatial_points < 5 || n.spatial_points % 4 != 1 {
            return bad(format!("numerics.spatial_points must be 1 mod 4 and >= 5, got {}", n.spatial_points));
        }
        if n.moore_points < 2 {
            return bad("numerics.moore_points must be at least 2".into());
        }
        if let (Some(a), Some(b)) = (n.t_start, n.t_end) {
            if !(b > a) {
                return bad(format!("empty run window [{a}, {b}]"));
            }
        }
        if let Some([a, b]) = n.critical_tau {
            if !(a > 0.0 && b > a) {
                return bad(format!("numerics.critical_tau must satisfy 0 < lo < hi, got [{a}, {b}]"));
            }
        }
        if self.geometry.temperatures.is_empty() {
            return bad("geometry.temperatures is empty".into());
        }
        if let Some(t) = self.geometry.temperatures.iter().find(|t| !(**t >= 0.0)) {
            return bad(format!("temperatures must be non-negative, got {t}"));
        }
        if let Some(s) = &self.sweep {
            validate_taus(&s.taus)?;
        }
        let family = self.family()?;
        if (family == Family::Custom) != self.custom.is_some() {
            return bad("a [custom] section is required for, and only allowed with, family = \"custom\"".into());
        }
        // Building the pair applies the family's sign rules and C3 checks.
        self.reference_pair()?;
        Ok(())
    }

    /// The reference mirrors described by this file.
    pub fn reference_pair(&self) -> Result<TrajectoryPair, CliError> {
        let g = &self.geometry;
        let family = self.family()?;
        if family == Family::Custom {
            let custom = self.custom.as_ref().ok_or_else(|| CliError::Config("missing [custom] section".into()))?;
            let path = |segs: &[Segment], rest: f64| -> Result<MirrorPath, CliError> {
                if segs.is_empty() {
                    return Ok(MirrorPath::constant(rest));
                }
                let segs =
                    segs.iter().map(|s| PolySegment { start: s.start, end: s.end, coeffs: s.coeffs.clone() }).collect();
                Ok(MirrorPath::piecewise(segs)?)
            };
            let left = path(&custom.left, g.l0)?;
            let right = path(&custom.right, g.r0)?;
            return Ok(TrajectoryPair::new(left, right)?);
        }
        let geom = ReferenceGeometry { l0: g.l0, lf: g.lf, r0: g.r0, eps: g.eps };
        Ok(make_reference(family, geom, g.tau)?)
    }

    /// Sweep durations, required to be ascending and at least three.
    pub fn sweep_taus(&self) -> Result<Vec<f64>, CliError> {
        let s = self.sweep.as_ref().ok_or_else(|| CliError::Config("missing [sweep] section".into()))?;
        validate_taus(&s.taus)?;
        Ok(s.taus.clone())
    }
}

fn validate_taus(taus: &[f64]) -> Result<(), CliError> {
    if taus.len() < 3 {
        return Err(CliError::Config(format!("a sweep needs at least 3 durations, got {}", taus.len())));
    }
    if !taus.iter().all(|t| *t > 0.0) || !taus.windows(2).all(|w| w[0] < w[1]) {
        return Err(CliError::Config("sweep durations must be positive and strictly ascending".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const CONTRACTION: &str = r#"
[geometry]
family = "contraction"
l0 = 0.0
lf = 0.3
r0 = 1.0
eps = 0.3
tau = 1.2
temperatures = [0.0, 1.0, 5.0]
"#;

    #[test]
    fn parses_with_defaults() {
        let c = RunConfig::from_toml(CONTRACTION).unwrap();
        assert_eq!(c.numerics.spatial_points, 2001);
        assert_eq!(c.geometry.temperatures, vec![0.0, 1.0, 5.0]);
        assert!(c.outputs.energy);
        let p = c.reference_pair().unwrap();
        assert!((p.df() - 0.4).abs() < 1e-15);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(RunConfig::from_toml(&format!("{CONTRACTION}\n[numerics]\nbogus = 1\n")).is_err());
        assert!(RunConfig::from_toml(&format!("{CONTRACTION}\n[numerics]\nroot_tol = 0.0\n")).is_err());
        assert!(RunConfig::from_toml(&format!("{CONTRACTION}\n[numerics]\nspatial_points = 2000\n")).is_err());
        let wrong_sign = CONTRACTION.replace("family = \"contraction\"", "family = \"expansion\"");
        assert!(RunConfig::from_toml(&wrong_sign).is_err());
    }

    #[test]
    fn sweep_needs_three_ascending() {
        assert!(RunConfig::from_toml(&format!("{CONTRACTION}\n[sweep]\ntaus = [5.0]\n")).is_err());
        assert!(RunConfig::from_toml(&format!("{CONTRACTION}\n[sweep]\ntaus = [5.0, 2.0, 10.0]\n")).is_err());
        let c = RunConfig::from_toml(&format!("{CONTRACTION}\n[sweep]\ntaus = [5.0, 10.0, 20.0]\n")).unwrap();
        assert_eq!(c.sweep_taus().unwrap().len(), 3);
    }

    #[test]
    fn custom_paths() {
        let text = r#"
[geometry]
family = "custom"
l0 = 0.0
r0 = 1.0

[custom]
right = [{ start = 0.0, end = 2.0, coeffs = [1.0, 0.0, 0.0, 0.0, -1.53125, 1.8375, -0.765625, 0.109375] }]
"#;
        let c = RunConfig::from_toml(text).unwrap();
        let p = c.reference_pair().unwrap();
        assert!((p.ends.rf - 0.3).abs() < 1e-12);
        assert!(RunConfig::from_toml(&text.replace("custom\"", "contraction\"")).is_err());
    }
}
