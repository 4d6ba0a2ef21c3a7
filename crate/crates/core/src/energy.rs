//! Renormalized energy, thermal content and field modes.
//!
//! For Moore functions `(F, G)` the renormalized energy density is
//! `f_G(t+x) + f_F(t−x)`, where
//!
//! ```text
//! f(s) = −1/(24π) [h'''/h' − 3/2 (h''/h')²] + (h')²/2 · (−π/24 + Z(T d₀))
//! ```
//!
//! for `h ∈ {F, G}`. The Schwarzian part does not depend on temperature, so
//! integrals are kept as two parts and combined per temperature.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::moore::MooreSolution;
use crate::quadrature::{simpson, simpson_coarse};

/// `Σ_{n≥1} nπ / (exp(nπ/x) − 1)`.
pub fn thermal_z(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::NegativeTemperature(x));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for n in 1.. {
        let a = n as f64 * PI;
        let term = a / (a / x).exp_m1();
        sum += term;
        if term < 1e-15 * (1.0 + sum) {
            break;
        }
    }
    Ok(sum)
}

/// A temperature together with the thermal sum it implies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalState {
    pub temperature: f64,
    pub d0: f64,
    pub z: f64,
}

impl ThermalState {
    pub fn new(temperature: f64, d0: f64) -> Result<Self> {
        if !(d0 > 0.0) {
            return Err(Error::InvalidGeometry(format!("initial length must be positive, got {d0}")));
        }
        Ok(ThermalState { temperature, d0, z: thermal_z(temperature * d0)? })
    }

    /// `−π/24 + Z`, the weight of `(h')²/2` in the density.
    pub fn prefactor(&self) -> f64 {
        -PI / 24.0 + self.z
    }
}

const SLOPE_GUARD: f64 = 1e-12;

fn anomaly(j: &Jet, arg: f64) -> Result<f64> {
    let [_, d1, d2, d3] = j.0;
    if d1.abs() < SLOPE_GUARD {
        return Err(Error::VanishingSlope { arg, slope: d1 });
    }
    let r = d2 / d1;
    Ok(-(d3 / d1 - 1.5 * r * r) / (24.0 * PI))
}

fn check_inside(x: f64, bounds: (f64, f64)) -> Result<()> {
    let (l, r) = bounds;
    let slack = 1e-12 * (1.0 + l.abs().max(r.abs()));
    if !(x >= l - slack && x <= r + slack) {
        return Err(Error::OutsideCavity { x, left: l, right: r });
    }
    Ok(())
}

/// Density split into its Schwarzian and kinetic parts at one point.
fn density_parts<S: MooreSolution + ?Sized>(moore: &S, x: f64, t: f64) -> Result<(f64, f64)> {
    let g = moore.g_jet(t + x)?;
    let f = moore.f_jet(t - x)?;
    let a = anomaly(&g, t + x)? + anomaly(&f, t - x)?;
    let k = 0.5 * (g.d(1) * g.d(1) + f.d(1) * f.d(1));
    Ok((a, k))
}

/// Renormalized energy density at `x` inside the cavity `bounds = (L(t), R(t))`.
pub fn density<S: MooreSolution + ?Sized>(
    moore: &S,
    bounds: (f64, f64),
    x: f64,
    t: f64,
    state: &ThermalState,
) -> Result<f64> {
    check_inside(x, bounds)?;
    let (a, k) = density_parts(moore, x, t)?;
    Ok(a + state.prefactor() * k)
}

/// Simpson controls for cavity integrals.
#[derive(Debug, Clone, Copy)]
pub struct EnergyQuadrature {
    /// Samples per kink-free panel; must be `≡ 1 (mod 4)`.
    pub points: usize,
    pub rel_tol: f64,
    pub max_doublings: usize,
}

impl Default for EnergyQuadrature {
    fn default() -> Self {
        EnergyQuadrature { points: 2001, rel_tol: 1e-8, max_doublings: 3 }
    }
}

/// `∫ density dx = anomaly + (−π/24 + Z)·kinetic`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EnergyParts {
    pub anomaly: f64,
    pub kinetic: f64,
}

impl EnergyParts {
    pub fn total(&self, state: &ThermalState) -> f64 {
        self.anomaly + state.prefactor() * self.kinetic
    }
}

/// Interior abscissae where the density may have a kink.
pub fn kink_abscissae<S: MooreSolution + ?Sized>(moore: &S, bounds: (f64, f64), t: f64) -> Vec<f64> {
    let (l, r) = bounds;
    let margin = 1e-10 * (1.0 + r - l);
    let mut xs: Vec<f64> = moore.g_kinks(t + l, t + r).into_iter().map(|z| z - t).collect();
    xs.extend(moore.f_kinks(t - r, t - l).into_iter().map(|w| t - w));
    xs.retain(|x| *x > l + margin && *x < r - margin);
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|a, b| (*a - *b).abs() < margin);
    xs
}

/// Integrates both density parts over the cavity at time `t`.
pub fn energy_parts<S: MooreSolution + ?Sized>(
    moore: &S,
    bounds: (f64, f64),
    t: f64,
    quad: EnergyQuadrature,
) -> Result<EnergyParts> {
    let (l, r) = bounds;
    if !(r > l) {
        return Err(Error::MirrorsCross { t, gap: r - l });
    }
    if quad.points < 5 || quad.points % 4 != 1 {
        return Err(Error::InvalidGeometry(format!("panel sample count {} is not 1 mod 4", quad.points)));
    }
    let mut edges = vec![l];
    edges.extend(kink_abscissae(moore, bounds, t));
    edges.push(r);

    let mut points = quad.points;
    for attempt in 0..=quad.max_doublings {
        let mut fine = EnergyParts::default();
        let mut diff = EnergyParts::default();
        for w in edges.windows(2) {
            let (a, b) = (w[0], w[1]);
            let h = (b - a) / (points - 1) as f64;
            let mut av = Vec::with_capacity(points);
            let mut kv = Vec::with_capacity(points);
            for i in 0..points {
                let x = if i + 1 == points { b } else { a + i as f64 * h };
                let (da, dk) = density_parts(moore, x, t)?;
                av.push(da);
                kv.push(dk);
            }
            let (fa, fk) = (simpson(&av, h), simpson(&kv, h));
            fine.anomaly += fa;
            fine.kinetic += fk;
            diff.anomaly += (fa - simpson_coarse(&av, h)).abs();
            diff.kinetic += (fk - simpson_coarse(&kv, h)).abs();
        }
        // The kinetic part is positive and sets the scale of both errors.
        let scale = fine.anomaly.abs() + fine.kinetic.abs();
        let ok = diff.anomaly + diff.kinetic <= quad.rel_tol * scale;
        if ok || attempt == quad.max_doublings {
            return Ok(fine);
        }
        points = 2 * points - 1;
    }
    unreachable!()
}

/// Total renormalized energy in the cavity at time `t`.
pub fn total_energy<S: MooreSolution + ?Sized>(
    moore: &S,
    bounds: (f64, f64),
    t: f64,
    state: &ThermalState,
    quad: EnergyQuadrature,
) -> Result<f64> {
    Ok(energy_parts(moore, bounds, t, quad)?.total(state))
}

/// `(−π/24 + Z(T d₀))/d`.
pub fn adiabatic_energy(d: f64, state: &ThermalState) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::InvalidGeometry(format!("cavity length must be positive, got {d}")));
    }
    Ok(state.prefactor() / d)
}

/// `Q = E / E_ad`.
pub fn adiabaticity(e: f64, e_ad: f64) -> Result<f64> {
    if e_ad == 0.0 || !e_ad.is_finite() {
        return Err(Error::ZeroAdiabaticEnergy);
    }
    Ok(e / e_ad)
}

/// Mode `k`: `(i/√(4πk)) [e^{−ikπG(t+x)} − e^{−ikπF(t−x)}]`, which vanishes
/// on both mirrors.
pub fn eval_mode<S: MooreSolution + ?Sized>(
    moore: &S,
    bounds: (f64, f64),
    k: u32,
    x: f64,
    t: f64,
) -> Result<Complex64> {
    if k == 0 {
        return Err(Error::InvalidGeometry("mode index must be at least 1".into()));
    }
    check_inside(x, bounds)?;
    let kf = k as f64;
    let g = moore.g_jet(t + x)?.value();
    let f = moore.f_jet(t - x)?.value();
    let phase = |s: f64| Complex64::from_polar(1.0, -kf * PI * s);
    Ok(Complex64::new(0.0, 1.0 / (4.0 * PI * kf).sqrt()) * (phase(g) - phase(f)))
}

/// Energies and adiabaticities of a reference run and its effective run at
/// one temperature, on a shared time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyRecord {
    pub temperature: f64,
    pub times: Vec<f64>,
    pub e_ref: Vec<f64>,
    pub e_eff: Vec<f64>,
    pub e_ad: Vec<f64>,
    pub q_ref: Vec<f64>,
    pub q_eff: Vec<f64>,
}

impl EnergyRecord {
    /// Combines precomputed parts. `lengths` are the reference cavity
    /// lengths, which set `E_ad` for both runs.
    pub fn assemble(
        state: &ThermalState,
        times: &[f64],
        reference: &[EnergyParts],
        effective: &[EnergyParts],
        lengths: &[f64],
    ) -> Result<Self> {
        let n = times.len();
        if reference.len() != n || effective.len() != n || lengths.len() != n {
            return Err(Error::InvalidGeometry("energy series lengths differ".into()));
        }
        let mut rec = EnergyRecord {
            temperature: state.temperature,
            times: times.to_vec(),
            e_ref: Vec::with_capacity(n),
            e_eff: Vec::with_capacity(n),
            e_ad: Vec::with_capacity(n),
            q_ref: Vec::with_capacity(n),
            q_eff: Vec::with_capacity(n),
        };
        for i in 0..n {
            let er = reference[i].total(state);
            let ee = effective[i].total(state);
            let ea = adiabatic_energy(lengths[i], state)?;
            rec.q_ref.push(adiabaticity(er, ea)?);
            rec.q_eff.push(adiabaticity(ee, ea)?);
            rec.e_ref.push(er);
            rec.e_eff.push(ee);
            rec.e_ad.push(ea);
        }
        Ok(rec)
    }
}

/// Sum of absolute increments.
pub fn total_variation(values: &[f64]) -> f64 {
    values.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
}
