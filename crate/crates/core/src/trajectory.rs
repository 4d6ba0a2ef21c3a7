//! Mirror trajectories as exact piecewise polynomials.
//!
//! Positions and times are in units of the initial right-mirror position,
//! with `c = 1`. Every path is at rest before its first segment and after its
//! last one, and is C³ across segment boundaries: the energy density involves
//! third derivatives of the Moore functions, which inherit third derivatives
//! of the walls.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::roots::golden_max;

/// The septic smoothstep `35x⁴ − 84x⁵ + 70x⁶ − 20x⁷` and its derivatives.
///
/// Clamped to 0 below `x = 0` and to 1 above `x = 1`, where every derivative
/// vanishes. Derivatives up to third order use factored forms so that the
/// endpoint values are exactly zero.
pub fn smoothstep7(x: f64, order: usize) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    let y = 1.0 - x;
    match order {
        0 => x * x * x * x * (35.0 + x * (-84.0 + x * (70.0 - 20.0 * x))),
        1 => 140.0 * (x * y).powi(3),
        2 => 420.0 * (x * y).powi(2) * (1.0 - 2.0 * x),
        3 => 840.0 * x * y * (5.0 * x * x - 5.0 * x + 1.0),
        k => poly_derivative(&[0.0, 0.0, 0.0, 0.0, 35.0, -84.0, 70.0, -20.0], x, k),
    }
}

/// `d^k/du^k Σ c_j u^j` at `u`.
fn poly_derivative(coeffs: &[f64], u: f64, k: usize) -> f64 {
    let mut acc = 0.0;
    for j in (k..coeffs.len()).rev() {
        let falling: f64 = ((j - k + 1)..=j).map(|m| m as f64).product();
        acc = acc * u + coeffs[j] * falling;
    }
    acc
}

/// A mirror worldline `X(t)`.
///
/// Implemented by reference paths ([`MirrorPath`]) and by effective paths
/// solved from adiabatic Moore functions. Implementors must be at rest
/// outside [`Mirror::motion_window`].
pub trait Mirror: Send + Sync {
    fn position(&self, t: f64) -> f64;

    /// `[X, Ẋ, Ẍ, X⃛]` at `t`.
    fn jet(&self, t: f64) -> [f64; 4];

    fn initial_position(&self) -> f64;

    fn final_position(&self) -> f64;

    /// `(start, end)` such that the mirror is at rest for `t ≤ start` and
    /// `t ≥ end`. A static mirror reports an empty window `start > end`.
    fn motion_window(&self) -> (f64, f64);

    /// Times where derivatives of order ≥ 4 (or lower) may jump.
    fn breakpoints(&self) -> Vec<f64>;

    /// Bounds on the position over all time.
    fn position_bounds(&self) -> (f64, f64);

    /// Supremum of `|Ẋ|`.
    fn max_speed(&self) -> f64;
}

/// One of the two mirrors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// Value of `G − F` on this mirror.
    pub fn moore_target(self) -> f64 {
        match self {
            Side::Left => 0.0,
            Side::Right => 2.0,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// One polynomial piece `Σ c_j (t − start)^j` on `[start, end]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySegment {
    pub start: f64,
    pub end: f64,
    pub coeffs: Vec<f64>,
}

impl PolySegment {
    fn eval(&self, t: f64, order: usize) -> f64 {
        poly_derivative(&self.coeffs, t - self.start, order)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Piece {
    Poly(PolySegment),
    /// `from + (to − from)·δ((t − start)/duration)`.
    Blend {
        start: f64,
        duration: f64,
        from: f64,
        to: f64,
    },
}

impl Piece {
    fn start(&self) -> f64 {
        match self {
            Piece::Poly(s) => s.start,
            Piece::Blend { start, .. } => *start,
        }
    }

    fn end(&self) -> f64 {
        match self {
            Piece::Poly(s) => s.end,
            Piece::Blend { start, duration, .. } => start + duration,
        }
    }

    fn eval(&self, t: f64, order: usize) -> f64 {
        match self {
            Piece::Poly(s) => s.eval(t, order),
            Piece::Blend { start, duration, from, to } => {
                let u = ((t - start) / duration).clamp(0.0, 1.0);
                if order == 0 {
                    let d = smoothstep7(u, 0);
                    // Exact at both ends: from at u = 0, to at u = 1.
                    from * (1.0 - d) + to * d
                } else {
                    (to - from) * smoothstep7(u, order) / duration.powi(order as i32)
                }
            }
        }
    }
}

/// Sampling density for kinematic diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct SpeedGrid {
    /// Samples across the motion window before local refinement.
    pub samples: usize,
}

impl Default for SpeedGrid {
    fn default() -> Self {
        SpeedGrid { samples: 2048 }
    }
}

/// A single mirror's piecewise-C³ path, constant outside its segments.
#[derive(Debug, Clone, PartialEq)]
pub struct MirrorPath {
    pieces: Vec<Piece>,
    before: f64,
    after: f64,
}

impl MirrorPath {
    pub fn constant(x: f64) -> Self {
        MirrorPath { pieces: Vec::new(), before: x, after: x }
    }

    /// `from` until `start`, septic smoothstep to `to` over `duration`, then
    /// `to`. Degenerates to a constant path when `from == to`.
    pub fn smooth_step(from: f64, to: f64, start: f64, duration: f64) -> Result<Self> {
        if !(duration > 0.0) {
            return Err(Error::NonPositiveDuration(duration));
        }
        if from == to {
            return Ok(Self::constant(from));
        }
        Ok(MirrorPath { pieces: vec![Piece::Blend { start, duration, from, to }], before: from, after: to })
    }

    /// User-supplied polynomial segments. They must be contiguous and C³,
    /// including at the two outer ends where the path joins its rest
    /// positions.
    pub fn piecewise(segments: Vec<PolySegment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidGeometry("custom path has no segments".into()));
        }
        for s in &segments {
            if !(s.end > s.start) || s.coeffs.is_empty() {
                return Err(Error::InvalidGeometry(format!(
                    "segment [{}, {}] is empty or has no coefficients",
                    s.start, s.end
                )));
            }
        }
        for w in segments.windows(2) {
            if w[0].end != w[1].start {
                return Err(Error::InvalidGeometry(format!(
                    "segments are not contiguous at {} / {}",
                    w[0].end, w[1].start
                )));
            }
        }
        let first = &segments[0];
        let last = segments.last().unwrap();
        let before = first.eval(first.start, 0);
        let after = last.eval(last.end, 0);
        let scale = 1.0 + before.abs().max(after.abs());
        let check = |t: f64, left: [f64; 4], right: [f64; 4]| -> Result<()> {
            for order in 0..4 {
                let jump = (left[order] - right[order]).abs();
                if jump > 1e-9 * scale * (1.0 + left[order].abs().max(right[order].abs())) {
                    return Err(Error::Discontinuity { t, order, jump });
                }
            }
            Ok(())
        };
        let rest = |x: f64| [x, 0.0, 0.0, 0.0];
        let jet = |s: &PolySegment, t: f64| std::array::from_fn(|k| s.eval(t, k));
        check(first.start, rest(before), jet(first, first.start))?;
        for w in segments.windows(2) {
            check(w[0].end, jet(&w[0], w[0].end), jet(&w[1], w[1].start))?;
        }
        check(last.end, jet(last, last.end), rest(after))?;
        Ok(MirrorPath { pieces: segments.into_iter().map(Piece::Poly).collect(), before, after })
    }

    fn piece_at(&self, t: f64) -> Option<&Piece> {
        let first = self.pieces.first()?;
        if t < first.start() || t > self.pieces.last().unwrap().end() {
            return None;
        }
        let idx = self.pieces.partition_point(|p| p.start() <= t);
        Some(&self.pieces[idx.saturating_sub(1)])
    }

    /// Position (`order = 0`) or its `order`-th time derivative. Exact.
    pub fn eval(&self, t: f64, order: usize) -> f64 {
        match self.piece_at(t) {
            Some(p) => p.eval(t, order),
            None if order > 0 => 0.0,
            None if t < self.pieces.first().map_or(f64::INFINITY, Piece::start) => self.before,
            None => self.after,
        }
    }

    pub fn is_static(&self) -> bool {
        self.pieces.is_empty()
    }

    /// `sup |Ẋ|` on a grid over the motion window, refined by golden-section
    /// search inside the segment holding the best sample.
    pub fn max_speed_on(&self, grid: SpeedGrid) -> f64 {
        let (a, b) = self.motion_window();
        if self.is_static() {
            return 0.0;
        }
        let n = grid.samples.max(2);
        let h = (b - a) / n as f64;
        let speed = |t: f64| self.eval(t, 1).abs();
        let (mut best_t, mut best) = (a, speed(a));
        for i in 1..=n {
            let t = a + i as f64 * h;
            let s = speed(t);
            if s > best {
                best = s;
                best_t = t;
            }
        }
        let piece = self.piece_at(best_t).unwrap();
        let lo = (best_t - h).max(piece.start());
        let hi = (best_t + h).min(piece.end());
        let (_, refined) = golden_max(speed, lo, hi, 1e-12 * (1.0 + b - a));
        best.max(refined)
    }

    fn extremes(&self) -> (f64, f64) {
        if self.is_static() {
            return (self.before, self.before);
        }
        let (a, b) = self.motion_window();
        let n = 4096;
        let h = (b - a) / n as f64;
        let (mut lo, mut hi) = (self.before.min(self.after), self.before.max(self.after));
        let (mut lo_t, mut hi_t) = (a, a);
        for i in 0..=n {
            let t = a + i as f64 * h;
            let x = self.eval(t, 0);
            if x < lo {
                lo = x;
                lo_t = t;
            }
            if x > hi {
                hi = x;
                hi_t = t;
            }
        }
        let tol = 1e-12 * (1.0 + b - a);
        let (_, m) = golden_max(|t| self.eval(t, 0), (hi_t - h).max(a), (hi_t + h).min(b), tol);
        let (_, n_) = golden_max(|t| -self.eval(t, 0), (lo_t - h).max(a), (lo_t + h).min(b), tol);
        (lo.min(-n_), hi.max(m))
    }
}

impl Mirror for MirrorPath {
    fn position(&self, t: f64) -> f64 {
        self.eval(t, 0)
    }

    fn jet(&self, t: f64) -> [f64; 4] {
        match self.piece_at(t) {
            Some(p) => std::array::from_fn(|k| p.eval(t, k)),
            None => [self.eval(t, 0), 0.0, 0.0, 0.0],
        }
    }

    fn initial_position(&self) -> f64 {
        self.before
    }

    fn final_position(&self) -> f64 {
        self.after
    }

    fn motion_window(&self) -> (f64, f64) {
        match (self.pieces.first(), self.pieces.last()) {
            (Some(f), Some(l)) => (f.start(), l.end()),
            _ => (f64::INFINITY, f64::NEG_INFINITY),
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.pieces.iter().map(Piece::start).collect();
        if let Some(l) = self.pieces.last() {
            out.push(l.end());
        }
        out
    }

    fn position_bounds(&self) -> (f64, f64) {
        self.extremes()
    }

    fn max_speed(&self) -> f64 {
        self.max_speed_on(SpeedGrid::default())
    }
}

/// Motion families for reference protocols.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Contraction,
    Expansion,
    Rigid,
    Custom,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "contraction" => Ok(Family::Contraction),
            "expansion" => Ok(Family::Expansion),
            "rigid" => Ok(Family::Rigid),
            "custom" => Ok(Family::Custom),
            other => Err(Error::InvalidGeometry(format!("unknown family `{other}`"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Contraction => "contraction",
            Family::Expansion => "expansion",
            Family::Rigid => "rigid",
            Family::Custom => "custom",
        })
    }
}

/// Geometry of a reference protocol. For expansions and rigid motions `lf`
/// is implied by `eps` and may be left out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceGeometry {
    pub l0: f64,
    pub lf: Option<f64>,
    pub r0: f64,
    pub eps: f64,
}

/// Endpoint geometry of a cavity protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Endpoints {
    pub l0: f64,
    pub lf: f64,
    pub r0: f64,
    pub rf: f64,
}

impl Endpoints {
    pub fn d0(&self) -> f64 {
        self.r0 - self.l0
    }

    pub fn df(&self) -> f64 {
        self.rf - self.lf
    }
}

/// Left and right reference paths plus their endpoint geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPair {
    pub left: MirrorPath,
    pub right: MirrorPath,
    pub ends: Endpoints,
    /// Motion duration.
    pub tau: f64,
    min_gap: f64,
}

impl TrajectoryPair {
    /// Pairs two paths, rejecting any geometry where the mirrors meet.
    pub fn new(left: MirrorPath, right: MirrorPath) -> Result<Self> {
        let ends = Endpoints {
            l0: left.initial_position(),
            lf: left.final_position(),
            r0: right.initial_position(),
            rf: right.final_position(),
        };
        let (a, b) = joint_window(&left, &right);
        let tau = if a <= b { b - a } else { 0.0 };
        let gap = |t: f64| right.eval(t, 0) - left.eval(t, 0);
        let (mut min_gap, mut min_t) = (ends.d0().min(ends.df()), a);
        if ends.d0() <= 0.0 || ends.df() <= 0.0 {
            let t = if ends.d0() <= 0.0 { f64::NEG_INFINITY } else { f64::INFINITY };
            return Err(Error::MirrorsCross { t, gap: min_gap });
        }
        if tau > 0.0 {
            let n = 4096;
            let h = tau / n as f64;
            for i in 0..=n {
                let t = a + i as f64 * h;
                let g = gap(t);
                if g < min_gap {
                    min_gap = g;
                    min_t = t;
                }
            }
            let (t, neg) = golden_max(|t| -gap(t), (min_t - h).max(a), (min_t + h).min(b), 1e-13);
            if -neg < min_gap {
                min_gap = -neg;
                min_t = t;
            }
        }
        if min_gap <= 0.0 {
            return Err(Error::MirrorsCross { t: min_t, gap: min_gap });
        }
        Ok(TrajectoryPair { left, right, ends, tau, min_gap })
    }

    /// Initial cavity length `d₀ = R₀ − L₀`.
    pub fn d0(&self) -> f64 {
        self.ends.d0()
    }

    pub fn df(&self) -> f64 {
        self.ends.df()
    }

    pub fn min_gap(&self) -> f64 {
        self.min_gap
    }

    /// Union of the two motion windows, or `None` for a static cavity.
    pub fn motion_window(&self) -> Option<(f64, f64)> {
        let (a, b) = joint_window(&self.left, &self.right);
        (a <= b).then_some((a, b))
    }

    /// Sorted, deduplicated breakpoints of both paths.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut all = self.left.breakpoints();
        all.extend(self.right.breakpoints());
        all.sort_by(f64::total_cmp);
        all.dedup();
        all
    }
}

pub(crate) fn joint_window(a: &dyn Mirror, b: &dyn Mirror) -> (f64, f64) {
    let (a0, a1) = a.motion_window();
    let (b0, b1) = b.motion_window();
    (a0.min(b0), a1.max(b1))
}

/// Builds a reference protocol: `L(t) = L₀ + (L_f − L₀)·δ(t/τ)` and
/// `R(t) = R₀[1 − ε·δ(t/τ)]` on `[0, τ]`, at rest outside.
///
/// Expansions need `ε ≤ 0` with `L_f = ε·R₀`; rigid translations need
/// `ε ≤ 0` with `L_f = −ε·R₀`. Other families take `L_f` as given.
pub fn make_reference(family: Family, geom: ReferenceGeometry, tau: f64) -> Result<TrajectoryPair> {
    if !(tau > 0.0) {
        return Err(Error::NonPositiveDuration(tau));
    }
    let ReferenceGeometry { l0, lf, r0, eps } = geom;
    let implied = match family {
        Family::Expansion => Some(eps * r0),
        Family::Rigid => Some(-eps * r0),
        Family::Contraction | Family::Custom => None,
    };
    if implied.is_some() && eps > 0.0 {
        return Err(Error::InvalidGeometry(format!("{family} needs eps <= 0, got {eps}")));
    }
    let lf = match (implied, lf) {
        (Some(want), Some(got)) if (want - got).abs() > 1e-12 * (1.0 + want.abs()) => {
            return Err(Error::InvalidGeometry(format!("{family} with eps = {eps} implies lf = {want}, got {got}")))
        }
        (Some(want), _) => want,
        (None, Some(got)) => got,
        (None, None) => return Err(Error::InvalidGeometry(format!("{family} needs an explicit lf"))),
    };
    let rf = r0 * (1.0 - eps);
    let left = MirrorPath::smooth_step(l0, lf, 0.0, tau)?;
    let right = MirrorPath::smooth_step(r0, rf, 0.0, tau)?;
    let mut pair = TrajectoryPair::new(left, right)?;
    pair.tau = tau;
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contraction() -> TrajectoryPair {
        let g = ReferenceGeometry { l0: 0.0, lf: Some(0.3), r0: 1.0, eps: 0.3 };
        make_reference(Family::Contraction, g, 1.2).unwrap()
    }

    #[test]
    fn smoothstep_endpoints() {
        assert_eq!(smoothstep7(0.0, 0), 0.0);
        assert_eq!(smoothstep7(1.0, 0), 1.0);
        for k in 1..=3 {
            assert_eq!(smoothstep7(0.0, k), 0.0);
            assert_eq!(smoothstep7(1.0, k), 0.0);
        }
        let expected = 35.0 / 16.0 - 84.0 / 32.0 + 70.0 / 64.0 - 20.0 / 128.0;
        assert!((smoothstep7(0.5, 0) - expected).abs() < 1e-15);
        assert_eq!(smoothstep7(-3.0, 2), 0.0);
        assert_eq!(smoothstep7(4.0, 0), 1.0);
    }

    #[test]
    fn smoothstep_factored_forms_agree_with_expanded() {
        let c = [0.0, 0.0, 0.0, 0.0, 35.0, -84.0, 70.0, -20.0];
        for i in 1..40 {
            let x = i as f64 / 40.0;
            for k in 0..=3 {
                let a = smoothstep7(x, k);
                let b = poly_derivative(&c, x, k);
                assert!((a - b).abs() < 1e-11, "x={x} k={k}: {a} vs {b}");
            }
        }
        // Fourth derivative jumps at the origin: 35 * 4! = 840.
        assert!((smoothstep7(1e-12, 4) - 840.0).abs() < 1e-6);
    }

    #[test]
    fn contraction_geometry() {
        let p = contraction();
        assert_eq!(p.ends.rf, 0.7);
        assert_eq!(p.ends.lf, 0.3);
        assert_eq!(p.tau, 1.2);
        assert_eq!(p.left.eval(-5.0, 0), 0.0);
        assert_eq!(p.right.eval(7.0, 0), 0.7);
        assert_eq!(p.right.eval(7.0, 2), 0.0);
        let v = p.left.eval(0.6, 1);
        assert!((v - 0.3 * smoothstep7(0.5, 1) / 1.2).abs() < 1e-15);
    }

    #[test]
    fn expansion_and_rigid_imply_lf() {
        let g = ReferenceGeometry { l0: 0.0, lf: None, r0: 1.0, eps: -0.3 };
        let e = make_reference(Family::Expansion, g, 1.2).unwrap();
        assert!((e.ends.lf + 0.3).abs() < 1e-15);
        assert!((e.ends.rf - 1.3).abs() < 1e-15);
        let r = make_reference(Family::Rigid, g, 1.2).unwrap();
        assert!((r.ends.lf - 0.3).abs() < 1e-15);
        assert!((r.d0() - r.df()).abs() < 1e-15);

        let bad = ReferenceGeometry { lf: Some(0.2), ..g };
        assert!(matches!(make_reference(Family::Rigid, bad, 1.2), Err(Error::InvalidGeometry(_))));
        let pos = ReferenceGeometry { eps: 0.2, ..g };
        assert!(make_reference(Family::Expansion, pos, 1.2).is_err());
    }

    #[test]
    fn rejects_bad_duration_and_crossing() {
        let g = ReferenceGeometry { l0: 0.0, lf: Some(0.3), r0: 1.0, eps: 0.3 };
        assert!(matches!(make_reference(Family::Contraction, g, 0.0), Err(Error::NonPositiveDuration(_))));
        let crossing = ReferenceGeometry { lf: Some(0.8), ..g };
        assert!(matches!(make_reference(Family::Contraction, crossing, 1.0), Err(Error::MirrorsCross { .. })));
    }

    #[test]
    fn static_family_is_constant() {
        for fam in [Family::Contraction, Family::Custom] {
            let g = ReferenceGeometry { l0: 0.0, lf: Some(0.0), r0: 1.0, eps: 0.0 };
            let p = make_reference(fam, g, 1.0).unwrap();
            assert!(p.left.is_static() && p.right.is_static());
            assert_eq!(p.right.eval(0.5, 0), 1.0);
            assert_eq!(p.motion_window(), None);
        }
    }

    #[test]
    fn max_speed_cases() {
        assert_eq!(MirrorPath::constant(1.0).max_speed(), 0.0);
        let p = contraction();
        let exact = 0.3 * smoothstep7(0.5, 1) / 1.2;
        assert!((p.right.max_speed() - exact).abs() < 1e-12);
        assert!(p.right.max_speed() < 1.0);
    }

    #[test]
    fn linear_cruise_speed() {
        // Accelerate with velocity profile v·δ, cruise at v, decelerate with v·(1 − δ).
        let v = 0.4;
        let up = vec![0.0, 0.0, 0.0, 0.0, 0.0, 7.0 * v, -14.0 * v, 10.0 * v, -2.5 * v];
        let cruise = vec![0.5 * v, v];
        let down = vec![1.5 * v, v, 0.0, 0.0, 0.0, -7.0 * v, 14.0 * v, -10.0 * v, 2.5 * v];
        let path = MirrorPath::piecewise(vec![
            PolySegment { start: 0.0, end: 1.0, coeffs: up },
            PolySegment { start: 1.0, end: 2.0, coeffs: cruise },
            PolySegment { start: 2.0, end: 3.0, coeffs: down },
        ])
        .unwrap();
        assert!((path.max_speed() - v).abs() < 1e-12);
        assert_eq!(path.eval(1.5, 1), v);
        assert!((path.final_position() - 2.0 * v).abs() < 1e-14);
    }

    #[test]
    fn custom_paths_validate_continuity() {
        // Shift by a smoothstep written out as a raw polynomial in (t - 0).
        let c = vec![0.0, 0.0, 0.0, 0.0, 35.0 * 0.2, -84.0 * 0.2, 70.0 * 0.2, -20.0 * 0.2];
        let ok = MirrorPath::piecewise(vec![PolySegment { start: 0.0, end: 1.0, coeffs: c.clone() }]);
        let path = ok.unwrap();
        assert!((path.final_position() - 0.2).abs() < 1e-14);
        assert_eq!(path.breakpoints(), vec![0.0, 1.0]);

        let mut kinked = c;
        kinked[3] = 0.1;
        let err = MirrorPath::piecewise(vec![PolySegment { start: 0.0, end: 1.0, coeffs: kinked }]);
        assert!(matches!(err, Err(Error::Discontinuity { order: 3, .. })));
    }

    #[test]
    fn bounds_and_breakpoints() {
        let p = contraction();
        assert_eq!(p.right.position_bounds(), (0.7, 1.0));
        assert_eq!(p.breakpoints(), vec![0.0, 1.2]);
        assert!((p.min_gap() - 0.4).abs() < 1e-12);
    }
}
