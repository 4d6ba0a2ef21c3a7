//! Shortcut-to-adiabaticity mirror paths.
//!
//! Given the adiabatic Moore functions of a reference motion, the effective
//! mirrors are the positions `x` at which those functions satisfy the exact
//! boundary conditions,
//!
//! ```text
//! G_ad(t + L_eff) − F_ad(t − L_eff) = 0,   G_ad(t + R_eff) − F_ad(t − R_eff) = 2.
//! ```
//!
//! A field driven by the effective mirrors therefore evolves along the
//! adiabatic solution of the reference. For fast reference motions the
//! effective paths approach piecewise-linear limit curves and may become
//! superluminal; this module reports that rather than hiding it.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::moore::Which;
use crate::moore_adiabatic::{AdiabaticGrid, AdiabaticMoore};
use crate::roots::{brent, brent_with, expand_bracket, golden_max, DEFAULT_TOL};
use crate::trajectory::{make_reference, Endpoints, Family, Mirror, ReferenceGeometry, Side, TrajectoryPair};

fn rest_positions(am: &AdiabaticMoore, side: Side) -> (f64, f64) {
    let e = am.pair().ends;
    match side {
        Side::Left => (e.l0, e.lf),
        Side::Right => (e.r0, e.rf),
    }
}

/// Time interval outside which the effective mirror is at rest. `None` for
/// a static reference.
pub fn effective_window(am: &AdiabaticMoore, side: Side) -> Option<(f64, f64)> {
    let (a, b) = am.motion_window()?;
    let (x0, xf) = rest_positions(am, side);
    Some((a - x0.abs(), b + xf.abs()))
}

/// Default search interval for effective positions.
pub fn default_bracket(am: &AdiabaticMoore) -> (f64, f64) {
    let e = am.pair().ends;
    let d = am.d0();
    (e.l0.min(e.lf) - d, e.r0.max(e.rf) + d)
}

fn rest_shortcut(am: &AdiabaticMoore, side: Side, t: f64) -> Option<f64> {
    let (x0, xf) = rest_positions(am, side);
    match effective_window(am, side) {
        None => Some(x0),
        Some((lo, _)) if t <= lo => Some(x0),
        Some((_, hi)) if t >= hi => Some(xf),
        _ => None,
    }
}

/// `G_ad(t+x) − F_ad(t−x) − c`, with `c` the boundary value for `side`.
pub fn defining_residual(am: &AdiabaticMoore, side: Side, t: f64, x: f64) -> f64 {
    let g = am.eval_moore(Which::G, t + x, 0).unwrap_or(f64::NAN);
    let f = am.eval_moore(Which::F, t - x, 0).unwrap_or(f64::NAN);
    g - f - side.moore_target()
}

fn monotone_on(am: &AdiabaticMoore, t: f64, lo: f64, hi: f64) -> bool {
    am.min_slope_on(Which::G, t + lo, t + hi) > 0.0 && am.min_slope_on(Which::F, t - hi, t - lo) > 0.0
}

/// The effective position of one mirror at time `t`.
///
/// Requires the adiabatic Moore functions to be increasing over every
/// argument the bracket can reach, which makes the root unique.
pub fn effective_position(am: &AdiabaticMoore, side: Side, t: f64, bracket: Option<(f64, f64)>) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::NonFinite(t));
    }
    if let Some(x) = rest_shortcut(am, side, t) {
        return Ok(x);
    }
    let (lo, hi) = bracket.unwrap_or_else(|| default_bracket(am));
    if !monotone_on(am, t, lo, hi) {
        return Err(Error::AdiabaticOrderViolation { t });
    }
    let mut h = |x: f64| defining_residual(am, side, t, x);
    let (a, b, fa, fb) = expand_bracket(&mut h, lo, hi, 6).map_err(|_| Error::NoPhysicalPosition { t })?;
    brent_with(h, a, b, fa, fb, DEFAULT_TOL)
}

/// Derivatives of the effective position from implicit differentiation of
/// its defining equation at the root `x`.
pub fn effective_jet(am: &AdiabaticMoore, t: f64, x: f64) -> Result<Jet> {
    let g = am.eval_moore_jet(Which::G, t + x)?;
    let f = am.eval_moore_jet(Which::F, t - x)?;
    let [_, g1, g2, g3] = g.0;
    let [_, f1, f2, f3] = f.0;
    let den = g1 + f1;
    if den == 0.0 || !den.is_finite() {
        return Err(Error::VanishingSlope { arg: t, slope: den });
    }
    let x1 = (f1 - g1) / den;
    let (p, m) = (1.0 + x1, 1.0 - x1);
    let x2 = -(g2 * p * p - f2 * m * m) / den;
    let x3 = -(g3 * p * p * p + 3.0 * g2 * p * x2 - f3 * m * m * m + 3.0 * f2 * m * x2) / den;
    Ok(Jet::new(x, x1, x2, x3))
}

/// All roots of the defining equation on `[lo, hi]`.
///
/// `h` can only fail to be monotone where `t ± x` enters the reference
/// motion window, so only those stretches are scanned finely.
fn all_roots(am: &AdiabaticMoore, side: Side, t: f64, lo: f64, hi: f64, scan: f64) -> Result<Vec<f64>> {
    let mut h = |x: f64| defining_residual(am, side, t, x);
    if monotone_on(am, t, lo, hi) {
        let (a, b, fa, fb) = expand_bracket(&mut h, lo, hi, 6).map_err(|_| Error::NoPhysicalPosition { t })?;
        return Ok(vec![brent_with(h, a, b, fa, fb, DEFAULT_TOL)?]);
    }
    let mut cuts = vec![lo, hi];
    if let Some((a, b)) = am.motion_window() {
        for c in [a - t, b - t, t - b, t - a] {
            if c > lo && c < hi {
                cuts.push(c);
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    let mut roots = Vec::new();
    let mut x_prev = lo;
    let mut h_prev = h(lo);
    for w in cuts.windows(2) {
        let (p, q) = (w[0], w[1]);
        if q <= p {
            continue;
        }
        let n = if monotone_on(am, t, p, q) { 1 } else { ((q - p) / scan).ceil().max(8.0) as usize };
        for i in 1..=n {
            let x = if i == n { q } else { p + (q - p) * i as f64 / n as f64 };
            let v = h(x);
            if h_prev == 0.0 {
                roots.push(x_prev);
            } else if v != 0.0 && v.signum() != h_prev.signum() {
                roots.push(brent_with(&mut h, x_prev, x, h_prev, v, DEFAULT_TOL)?);
            }
            x_prev = x;
            h_prev = v;
        }
    }
    if h_prev == 0.0 {
        roots.push(x_prev);
    }
    if roots.is_empty() {
        return Err(Error::NoPhysicalPosition { t });
    }
    Ok(roots)
}

/// Controls for sampling effective trajectories.
#[derive(Debug, Clone, Copy)]
pub struct EffectiveOptions {
    /// Sample spacing; defaults to τ/512.
    pub step: Option<f64>,
    /// Target for the max change at inserted midpoints.
    pub refine_tol: f64,
    pub max_halvings: usize,
}

impl Default for EffectiveOptions {
    fn default() -> Self {
        EffectiveOptions { step: None, refine_tol: 1e-8, max_halvings: 4 }
    }
}

/// One sampled effective position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveSample {
    pub t: f64,
    pub x: f64,
    /// Slope of the branch through the sample (may exceed 1 in magnitude).
    pub v: f64,
    /// Both adiabatic Moore functions increase at the sample's arguments
    /// and the root was unique.
    pub regular: bool,
}

/// Dense table of effective positions for one mirror.
///
/// Where the defining equation has several roots, the sampler follows the
/// branch continuously connected to the initial rest position and marks the
/// samples as irregular.
#[derive(Debug, Clone)]
pub struct EffectiveTrajectory {
    pub side: Side,
    pub samples: Vec<EffectiveSample>,
    /// Largest slope magnitude, analytic or between neighbouring samples.
    pub max_speed: f64,
    pub realizable: bool,
    /// Whether the midpoint refinement met its tolerance between regular
    /// samples.
    pub converged: bool,
    source: Arc<AdiabaticMoore>,
}

impl EffectiveTrajectory {
    /// Samples the whole interval on which the effective mirror moves.
    pub fn solve(am: Arc<AdiabaticMoore>, side: Side, opts: EffectiveOptions) -> Result<Self> {
        let (lo, hi) = effective_window(&am, side).unwrap_or((-1.0, 1.0));
        Self::solve_on(am, side, lo, hi, opts)
    }

    /// Samples `[t0, t1]`.
    pub fn solve_on(am: Arc<AdiabaticMoore>, side: Side, t0: f64, t1: f64, opts: EffectiveOptions) -> Result<Self> {
        if !(t1 > t0) {
            return Err(Error::InvalidGeometry(format!("empty sampling window [{t0}, {t1}]")));
        }
        let tau = am.motion_window().map_or(t1 - t0, |(a, b)| b - a);
        let step = opts.step.unwrap_or(tau / 512.0);
        let scan = scan_step(&am).unwrap_or(tau / 64.0);
        let n = ((t1 - t0) / step).ceil().max(2.0) as usize;
        let h = (t1 - t0) / n as f64;
        let rest = rest_positions(&am, side);
        let bracket = default_bracket(&am);

        let sample = |t: f64, prev: f64| -> Result<EffectiveSample> {
            let roots = all_roots(&am, side, t, bracket.0, bracket.1, scan)?;
            let x = nearest(&roots, prev);
            let g1 = am.eval_moore(Which::G, t + x, 1)?;
            let f1 = am.eval_moore(Which::F, t - x, 1)?;
            let v = (f1 - g1) / (g1 + f1);
            Ok(EffectiveSample { t, x, v, regular: g1 > 0.0 && f1 > 0.0 && roots.len() == 1 })
        };

        let mut samples = Vec::with_capacity(n + 1);
        let mut prev = rest.0;
        for i in 0..=n {
            let t = if i == n { t1 } else { t0 + i as f64 * h };
            let s = sample(t, prev)?;
            prev = s.x;
            samples.push(s);
        }

        let mut converged = false;
        for _ in 0..=opts.max_halvings {
            let mut merged = Vec::with_capacity(2 * samples.len());
            let mut err = 0.0_f64;
            for w in samples.windows(2) {
                let mid = 0.5 * (w[0].t + w[1].t);
                let s = sample(mid, w[0].x)?;
                // Across a fold the branch jumps and no step size helps.
                if w[0].regular && w[1].regular && s.regular {
                    err = err.max((hermite(&w[0], &w[1], mid) - s.x).abs());
                }
                merged.push(w[0]);
                merged.push(s);
            }
            merged.push(*samples.last().unwrap());
            samples = merged;
            if err < opts.refine_tol {
                converged = true;
                break;
            }
        }

        let mut max_speed = 0.0_f64;
        for s in &samples {
            if s.v.is_finite() {
                max_speed = max_speed.max(s.v.abs());
            } else {
                max_speed = f64::INFINITY;
            }
        }
        for w in samples.windows(2) {
            max_speed = max_speed.max(((w[1].x - w[0].x) / (w[1].t - w[0].t)).abs());
        }
        Ok(EffectiveTrajectory { side, samples, realizable: max_speed < 1.0, max_speed, converged, source: am })
    }

    pub fn source(&self) -> &Arc<AdiabaticMoore> {
        &self.source
    }

    /// Interpolated position; cubic Hermite between regular samples.
    pub fn position(&self, t: f64) -> f64 {
        let first = self.samples.first().unwrap();
        let last = self.samples.last().unwrap();
        if t <= first.t {
            return first.x;
        }
        if t >= last.t {
            return last.x;
        }
        let k = self.samples.partition_point(|s| s.t <= t) - 1;
        let (a, b) = (&self.samples[k], &self.samples[k + 1]);
        if a.regular && b.regular {
            hermite(a, b, t)
        } else {
            a.x + (b.x - a.x) * (t - a.t) / (b.t - a.t)
        }
    }

    /// Root of the defining equation at `t` on the tracked branch.
    pub fn resolve(&self, t: f64) -> Result<f64> {
        if let Some(x) = rest_shortcut(&self.source, self.side, t) {
            return Ok(x);
        }
        let (lo, hi) = default_bracket(&self.source);
        let scan = scan_step(&self.source).unwrap_or(1.0 / 64.0);
        let roots = all_roots(&self.source, self.side, t, lo, hi, scan)?;
        Ok(nearest(&roots, self.position(t)))
    }

    /// Largest defining-equation residual over the samples.
    pub fn max_residual(&self) -> f64 {
        self.samples.iter().map(|s| defining_residual(&self.source, self.side, s.t, s.x).abs()).fold(0.0, f64::max)
    }

    /// Whether every sample is a unique root on increasing Moore functions.
    pub fn all_regular(&self) -> bool {
        self.samples.iter().all(|s| s.regular)
    }
}

fn scan_step(am: &AdiabaticMoore) -> Option<f64> {
    am.motion_window().map(|(a, b)| (b - a) / 64.0)
}

fn nearest(roots: &[f64], guess: f64) -> f64 {
    roots.iter().copied().min_by(|a, b| (a - guess).abs().total_cmp(&(b - guess).abs())).unwrap_or(f64::NAN)
}

fn hermite(a: &EffectiveSample, b: &EffectiveSample, t: f64) -> f64 {
    let h = b.t - a.t;
    let s = (t - a.t) / h;
    let (va, vb) = if a.v.is_finite() && b.v.is_finite() { (a.v, b.v) } else { ((b.x - a.x) / h, (b.x - a.x) / h) };
    let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
    let h10 = s * (1.0 - s) * (1.0 - s);
    let h01 = s * s * (3.0 - 2.0 * s);
    let h11 = s * s * (s - 1.0);
    h00 * a.x + h10 * h * va + h01 * b.x + h11 * h * vb
}

/// An effective mirror evaluated on demand, usable as a [`Mirror`].
///
/// Only defined when the adiabatic Moore functions are increasing
/// everywhere; positions are root solves and derivatives come from implicit
/// differentiation, so the exact solver sees the adiabatic derivatives
/// without any refitting noise.
#[derive(Debug, Clone)]
pub struct EffectivePath {
    am: Arc<AdiabaticMoore>,
    side: Side,
    window: (f64, f64),
    rest: (f64, f64),
    bracket: (f64, f64),
    breakpoints: Vec<f64>,
    bounds: (f64, f64),
    max_speed: f64,
}

impl EffectivePath {
    pub fn new(am: Arc<AdiabaticMoore>, side: Side) -> Result<Self> {
        let rest = rest_positions(&am, side);
        let bracket = default_bracket(&am);
        let Some(window) = effective_window(&am, side) else {
            let x = rest.0;
            return Ok(EffectivePath {
                am,
                side,
                window: (f64::INFINITY, f64::NEG_INFINITY),
                rest,
                bracket,
                breakpoints: Vec::new(),
                bounds: (x, x),
                max_speed: 0.0,
            });
        };
        if !am.is_monotone() {
            return Err(Error::AdiabaticOrderViolation { t: window.0 });
        }
        let mut path = EffectivePath {
            am,
            side,
            window,
            rest,
            bracket,
            breakpoints: vec![window.0, window.1],
            bounds: (rest.0.min(rest.1), rest.0.max(rest.1)),
            max_speed: 0.0,
        };
        let n = 2048;
        let h = (window.1 - window.0) / n as f64;
        let (mut vmax, mut t_vmax) = (0.0_f64, window.0);
        let (mut lo, mut hi) = path.bounds;
        for i in 0..=n {
            let t = window.0 + i as f64 * h;
            let j = path.solve_jet(t)?;
            lo = lo.min(j.value());
            hi = hi.max(j.value());
            if j.d(1).abs() > vmax {
                vmax = j.d(1).abs();
                t_vmax = t;
            }
        }
        let (_, v) = golden_max(
            |t| path.solve_jet(t).map_or(0.0, |j| j.d(1).abs()),
            (t_vmax - h).max(window.0),
            (t_vmax + h).min(window.1),
            1e-10,
        );
        path.max_speed = vmax.max(v);
        let pad = 1e-9 * (1.0 + hi - lo);
        path.bounds = (lo - pad, hi + pad);

        // Where t ± x(t) crosses a reference breakpoint, fourth derivatives jump.
        let refs = path.am.pair().breakpoints();
        let mut bps = path.breakpoints.clone();
        for s in refs {
            for sign in [1.0, -1.0] {
                let f = |t: f64| t + sign * path.position(t) - s;
                if f(window.0) * f(window.1) < 0.0 {
                    if let Ok(t) = brent(f, window.0, window.1, DEFAULT_TOL) {
                        bps.push(t);
                    }
                }
            }
        }
        bps.sort_by(f64::total_cmp);
        bps.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        path.breakpoints = bps;
        Ok(path)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    fn solve_jet(&self, t: f64) -> Result<Jet> {
        if t <= self.window.0 {
            return Ok(Jet::constant(self.rest.0));
        }
        if t >= self.window.1 {
            return Ok(Jet::constant(self.rest.1));
        }
        let x = effective_position(&self.am, self.side, t, Some(self.bracket))?;
        effective_jet(&self.am, t, x)
    }
}

impl Mirror for EffectivePath {
    fn position(&self, t: f64) -> f64 {
        if t <= self.window.0 {
            return self.rest.0;
        }
        if t >= self.window.1 {
            return self.rest.1;
        }
        effective_position(&self.am, self.side, t, Some(self.bracket)).unwrap_or(f64::NAN)
    }

    fn jet(&self, t: f64) -> [f64; 4] {
        self.solve_jet(t).map_or([f64::NAN; 4], |j| j.0)
    }

    fn initial_position(&self) -> f64 {
        self.rest.0
    }

    fn final_position(&self) -> f64 {
        self.rest.1
    }

    fn motion_window(&self) -> (f64, f64) {
        self.window
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.breakpoints.clone()
    }

    fn position_bounds(&self) -> (f64, f64) {
        self.bounds
    }

    fn max_speed(&self) -> f64 {
        self.max_speed
    }
}

/// Both effective mirrors for one reference.
pub fn effective_pair(am: &Arc<AdiabaticMoore>) -> Result<(EffectivePath, EffectivePath)> {
    Ok((EffectivePath::new(am.clone(), Side::Left)?, EffectivePath::new(am.clone(), Side::Right)?))
}

/// Effective path in the limit of an instantaneous reference motion:
/// rest, uniform motion at `slope`, rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitTrajectory {
    pub side: Side,
    pub initial: f64,
    pub last: f64,
    /// Start and end of the uniform piece. When they are inverted there is
    /// no uniform piece and the path switches at their midpoint.
    pub switch_on: f64,
    pub switch_off: f64,
    pub intercept: f64,
    pub slope: f64,
}

impl LimitTrajectory {
    pub fn eval(&self, t: f64) -> f64 {
        if self.switch_on > self.switch_off {
            let mid = 0.5 * (self.switch_on + self.switch_off);
            return if t < mid { self.initial } else { self.last };
        }
        if t < self.switch_on {
            self.initial
        } else if t > self.switch_off {
            self.last
        } else {
            self.intercept + self.slope * t
        }
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        if self.switch_on > self.switch_off {
            vec![0.5 * (self.switch_on + self.switch_off)]
        } else {
            vec![self.switch_on, self.switch_off]
        }
    }

    /// Whether the uniform piece meets both rest values.
    pub fn is_continuous(&self) -> bool {
        let scale = 1.0 + self.initial.abs().max(self.last.abs());
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * scale;
        if self.switch_on > self.switch_off {
            return close(self.initial, self.last);
        }
        close(self.intercept + self.slope * self.switch_on, self.initial)
            && close(self.intercept + self.slope * self.switch_off, self.last)
    }
}

/// Solves `(t + x − L_f)/d_f − (t − x + L₀)/d₀ = c` for `x`: the boundary
/// condition when the advanced argument sees the final static branch and the
/// retarded one the initial branch. Returns `(intercept, slope)`.
fn mixed_branch(ends: &Endpoints, c: f64) -> (f64, f64) {
    let (d0, df) = (ends.d0(), ends.df());
    let k = 1.0 / d0 + 1.0 / df;
    let intercept = (c + ends.l0 / d0 + ends.lf / df) / k;
    let slope = (1.0 / d0 - 1.0 / df) / k;
    (intercept, slope)
}

/// Limit effective trajectories `(left, right)` for the given endpoints.
pub fn limit_trajectory(l0: f64, lf: f64, r0: f64, rf: f64) -> Result<(LimitTrajectory, LimitTrajectory)> {
    let ends = Endpoints { l0, lf, r0, rf };
    if !(ends.d0() > 0.0 && ends.df() > 0.0) {
        return Err(Error::InvalidGeometry(format!("degenerate cavity: d0 = {}, df = {}", ends.d0(), ends.df())));
    }
    let (li, ls) = mixed_branch(&ends, Side::Left.moore_target());
    let (ri, rs) = mixed_branch(&ends, Side::Right.moore_target());
    let left = LimitTrajectory {
        side: Side::Left,
        initial: l0,
        last: lf,
        switch_on: -l0,
        switch_off: lf,
        intercept: li,
        slope: ls,
    };
    let right = LimitTrajectory {
        side: Side::Right,
        initial: r0,
        last: rf,
        switch_on: -r0,
        switch_off: rf,
        intercept: ri,
        slope: rs,
    };
    Ok((left, right))
}

/// `L_f R₀ = L₀ R_f` to relative tolerance 10⁻¹².
pub fn continuity_check(l0: f64, lf: f64, r0: f64, rf: f64) -> bool {
    let (a, b) = (lf * r0, l0 * rf);
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}

/// Sup-distance between sampled and limit trajectories, ignoring samples
/// within `radius` of a limit breakpoint.
pub fn sup_distance_to_limit(eff: &EffectiveTrajectory, lim: &LimitTrajectory, radius: f64) -> f64 {
    let bps = lim.breakpoints();
    eff.samples
        .iter()
        .filter(|s| bps.iter().all(|b| (s.t - b).abs() > radius))
        .map(|s| (s.x - lim.eval(s.t)).abs())
        .fold(0.0, f64::max)
}

/// Controls for [`critical_tau`].
#[derive(Debug, Clone, Copy)]
pub struct CriticalOptions {
    /// Bisection stops once the bracket is this narrow.
    pub tol: f64,
    pub grid: AdiabaticGrid,
    pub effective: EffectiveOptions,
}

impl Default for CriticalOptions {
    fn default() -> Self {
        CriticalOptions {
            tol: 1e-3,
            grid: AdiabaticGrid::default(),
            effective: EffectiveOptions { step: None, refine_tol: 1e-8, max_halvings: 0 },
        }
    }
}

/// Largest speed of either effective mirror for this reference.
pub fn max_effective_speed(pair: &TrajectoryPair, grid: AdiabaticGrid, opts: EffectiveOptions) -> Result<f64> {
    let am = Arc::new(AdiabaticMoore::build(pair, grid)?);
    if am.motion_window().is_none() {
        return Ok(0.0);
    }
    let left = EffectiveTrajectory::solve(am.clone(), Side::Left, opts)?;
    let right = EffectiveTrajectory::solve(am, Side::Right, opts)?;
    Ok(left.max_speed.max(right.max_speed))
}

/// Duration below which the effective mirrors of a reference family become
/// superluminal, located by bisection on the max effective speed.
pub fn critical_tau(
    family: Family,
    geom: ReferenceGeometry,
    tau_range: (f64, f64),
    opts: CriticalOptions,
) -> Result<f64> {
    let (mut lo, mut hi) = tau_range;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::InvalidGeometry(format!("bad duration range [{lo}, {hi}]")));
    }
    let excess = |tau: f64| -> Result<f64> {
        let pair = make_reference(family, geom, tau)?;
        Ok(max_effective_speed(&pair, opts.grid, opts.effective)? - 1.0)
    };
    let (e_lo, e_hi) = (excess(lo)?, excess(hi)?);
    match (e_lo >= 0.0, e_hi >= 0.0) {
        (false, false) => return Err(Error::NoCriticalCrossing("all candidate tau physical")),
        (true, true) => return Err(Error::NoCriticalCrossing("none physical")),
        (false, true) => return Err(Error::NoCriticalCrossing("speed grows with tau")),
        (true, false) => {}
    }
    while hi - lo > opts.tol {
        let mid = 0.5 * (lo + hi);
        if excess(mid)? >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
