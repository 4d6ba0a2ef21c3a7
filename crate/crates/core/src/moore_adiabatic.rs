//! Adiabatic Moore functions for a two-mirror cavity.
//!
//! To first adiabatic order
//!
//! ```text
//! F_ad(t) = I(t) + ½ (R+L)/(R−L) − ½
//! G_ad(t) = I(t) − ½ (R+L)/(R−L) + ½,     I(t) = ∫ ds / (R(s) − L(s))
//! ```
//!
//! with `I(t) = t/d₀` before the motion starts. The constants `∓½` make both
//! functions reduce to the static solutions `(t ± L₀)/d₀` in the past. After
//! the motion they are again linear with slope `1/d_f`, offset by the same
//! constant `I(end) − end/d_f`, which drops out of both Moore equations.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::moore::{in_range, moore_residuals, MooreSolution, Which};
use crate::quadrature::CumulativeTable;
use crate::trajectory::{Mirror, TrajectoryPair};

/// Quadrature controls for the running integral `I(t)`.
#[derive(Debug, Clone, Copy)]
pub struct AdiabaticGrid {
    /// Initial Simpson panels over the motion window.
    pub panels: usize,
    /// Doubling stops once `I(end)` moves by less than this.
    pub tol: f64,
    pub max_doublings: usize,
}

impl Default for AdiabaticGrid {
    fn default() -> Self {
        AdiabaticGrid { panels: 4096, tol: 1e-10, max_doublings: 6 }
    }
}

#[derive(Debug, Clone)]
struct Motion {
    start: f64,
    end: f64,
    table: CumulativeTable,
    /// `I(end)`.
    i_end: f64,
    /// Node-wise slopes for monotonicity queries.
    node_step: f64,
    f_slopes: Vec<f64>,
    g_slopes: Vec<f64>,
}

/// `F_ad`, `G_ad` for a reference pair.
#[derive(Debug, Clone)]
pub struct AdiabaticMoore {
    pair: TrajectoryPair,
    motion: Option<Motion>,
    d0: f64,
    df: f64,
    min_slope: f64,
}

impl AdiabaticMoore {
    pub fn build(pair: &TrajectoryPair, grid: AdiabaticGrid) -> Result<Self> {
        let d0 = pair.d0();
        let df = pair.df();
        if pair.min_gap() <= 0.0 {
            return Err(Error::MirrorsCross { t: f64::NAN, gap: pair.min_gap() });
        }
        let mut am = AdiabaticMoore { pair: pair.clone(), motion: None, d0, df, min_slope: 1.0 / d0.max(df) };
        let Some((start, end)) = pair.motion_window() else {
            return Ok(am);
        };
        let table = {
            let f = |t: f64| am.integrand(t);
            CumulativeTable::build_converged(&f, start, end, grid.panels, grid.tol, grid.max_doublings)
        };
        let i_end = start / d0 + table.total();
        let nodes = table.panels();
        let node_step = (end - start) / nodes as f64;
        am.motion = Some(Motion { start, end, table, i_end, node_step, f_slopes: Vec::new(), g_slopes: Vec::new() });
        let (mut fs, mut gs) = (Vec::with_capacity(nodes + 1), Vec::with_capacity(nodes + 1));
        for k in 0..=nodes {
            let t = start + k as f64 * node_step;
            fs.push(am.moving_jet(Which::F, t).d(1));
            gs.push(am.moving_jet(Which::G, t).d(1));
        }
        let min_f = fs.iter().copied().fold(f64::INFINITY, f64::min);
        let min_g = gs.iter().copied().fold(f64::INFINITY, f64::min);
        am.min_slope = am.min_slope.min(min_f).min(min_g);
        let m = am.motion.as_mut().unwrap();
        m.f_slopes = fs;
        m.g_slopes = gs;
        Ok(am)
    }

    pub fn pair(&self) -> &TrajectoryPair {
        &self.pair
    }

    pub fn into_shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    /// `(start, end)` of the reference motion, if any.
    pub fn motion_window(&self) -> Option<(f64, f64)> {
        self.motion.as_ref().map(|m| (m.start, m.end))
    }

    pub fn d0(&self) -> f64 {
        self.d0
    }

    pub fn df(&self) -> f64 {
        self.df
    }

    /// Smallest `F_ad'` or `G_ad'` found on the quadrature nodes.
    pub fn min_slope(&self) -> f64 {
        self.min_slope
    }

    /// Whether both functions are strictly increasing everywhere. Fails for
    /// reference motions too fast for first-order adiabatic theory.
    pub fn is_monotone(&self) -> bool {
        self.min_slope > 0.0
    }

    /// Smallest sampled slope of `which` over arguments in `[lo, hi]`.
    pub fn min_slope_on(&self, which: Which, lo: f64, hi: f64) -> f64 {
        let rest = |arg: f64| if arg <= self.start() { 1.0 / self.d0 } else { 1.0 / self.df };
        let Some(m) = &self.motion else {
            return 1.0 / self.d0;
        };
        let mut best = rest(lo).min(rest(hi));
        if hi < m.start || lo > m.end {
            return best;
        }
        let slopes = match which {
            Which::F => &m.f_slopes,
            Which::G => &m.g_slopes,
        };
        let k0 = (((lo - m.start) / m.node_step).floor().max(0.0)) as usize;
        let k1 = (((hi - m.start) / m.node_step).ceil() as usize).min(slopes.len() - 1);
        for s in &slopes[k0..=k1] {
            best = best.min(*s);
        }
        for arg in [lo, hi] {
            if arg > m.start && arg < m.end {
                best = best.min(self.moving_jet(which, arg).d(1));
            }
        }
        best
    }

    fn start(&self) -> f64 {
        self.motion.as_ref().map_or(f64::INFINITY, |m| m.start)
    }

    fn integrand(&self, t: f64) -> f64 {
        1.0 / (self.pair.right.position(t) - self.pair.left.position(t))
    }

    /// `I(t)`.
    pub fn running_integral(&self, t: f64) -> f64 {
        match &self.motion {
            None => t / self.d0,
            Some(m) if t <= m.start => t / self.d0,
            Some(m) if t >= m.end => m.i_end + (t - m.end) / self.df,
            Some(m) => m.start / self.d0 + m.table.eval(&|s| self.integrand(s), t),
        }
    }

    fn moving_jet(&self, which: Which, t: f64) -> Jet {
        let r = Jet(self.pair.right.jet(t));
        let l = Jet(self.pair.left.jet(t));
        let inv = (r - l).recip();
        let rho = (r + l) * inv;
        let i = Jet([self.running_integral(t), inv.0[0], inv.0[1], inv.0[2]]);
        match which {
            Which::F => i + rho.scale(0.5) - Jet::constant(0.5),
            Which::G => i - rho.scale(0.5) + Jet::constant(0.5),
        }
    }

    fn jet_at(&self, which: Which, t: f64) -> Result<Jet> {
        if !t.is_finite() {
            return Err(Error::NonFinite(t));
        }
        let ends = self.pair.ends;
        let sign = match which {
            Which::F => 1.0,
            Which::G => -1.0,
        };
        match &self.motion {
            Some(m) if t > m.start && t < m.end => Ok(self.moving_jet(which, t)),
            Some(m) if t >= m.end => {
                let offset = m.i_end - m.end / self.df;
                Ok(Jet::new((t + sign * ends.lf) / self.df + offset, 1.0 / self.df, 0.0, 0.0))
            }
            _ => Ok(Jet::new((t + sign * ends.l0) / self.d0, 1.0 / self.d0, 0.0, 0.0)),
        }
    }

    /// `F_ad`/`G_ad` (order 0) or a derivative up to third order, analytic
    /// apart from the running integral.
    pub fn eval_moore(&self, which: Which, z: f64, order: usize) -> Result<f64> {
        Ok(self.jet_at(which, z)?.d(order))
    }

    /// Value and first three derivatives at `z`.
    pub fn eval_moore_jet(&self, which: Which, z: f64) -> Result<Jet> {
        self.jet_at(which, z)
    }

    /// Constant by which the late-time branch exceeds `(t ± L_f)/d_f`.
    pub fn late_offset(&self) -> f64 {
        self.motion.as_ref().map_or(0.0, |m| m.i_end - m.end / self.df)
    }

    /// How badly `F_ad`, `G_ad` miss the exact Moore equations on the
    /// reference walls: `(sup |G(t+L) − F(t−L)|, sup |G(t+R) − F(t−R) − 2|)`.
    pub fn adiabatic_residual(&self, times: &[f64]) -> Result<(f64, f64)> {
        moore_residuals(self, &self.pair.left, &self.pair.right, times)
    }
}

impl MooreSolution for AdiabaticMoore {
    fn f_jet(&self, w: f64) -> Result<Jet> {
        self.jet_at(Which::F, w)
    }

    fn g_jet(&self, z: f64) -> Result<Jet> {
        self.jet_at(Which::G, z)
    }

    fn f_kinks(&self, lo: f64, hi: f64) -> Vec<f64> {
        in_range(self.pair.breakpoints(), lo, hi)
    }

    fn g_kinks(&self, lo: f64, hi: f64) -> Vec<f64> {
        in_range(self.pair.breakpoints(), lo, hi)
    }
}

impl MooreSolution for Arc<AdiabaticMoore> {
    fn f_jet(&self, w: f64) -> Result<Jet> {
        self.as_ref().f_jet(w)
    }

    fn g_jet(&self, z: f64) -> Result<Jet> {
        self.as_ref().g_jet(z)
    }

    fn f_kinks(&self, lo: f64, hi: f64) -> Vec<f64> {
        self.as_ref().f_kinks(lo, hi)
    }

    fn g_kinks(&self, lo: f64, hi: f64) -> Vec<f64> {
        self.as_ref().g_kinks(lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trajectory::{make_reference, Family, MirrorPath, ReferenceGeometry};

    fn contraction(tau: f64) -> TrajectoryPair {
        let g = ReferenceGeometry { l0: 0.0, lf: Some(0.3), r0: 1.0, eps: 0.3 };
        make_reference(Family::Contraction, g, tau).unwrap()
    }

    #[test]
    fn static_cavity_is_identity() {
        let pair = TrajectoryPair::new(MirrorPath::constant(0.0), MirrorPath::constant(1.0)).unwrap();
        let am = AdiabaticMoore::build(&pair, AdiabaticGrid::default()).unwrap();
        for &z in &[-3.0, 0.0, 0.4, 7.5] {
            assert_eq!(am.eval_moore(Which::F, z, 0).unwrap(), z);
            assert_eq!(am.eval_moore(Which::G, z, 0).unwrap(), z);
            assert_eq!(am.eval_moore(Which::G, z, 1).unwrap(), 1.0);
        }
        let times: Vec<f64> = (0..50).map(|i| -2.0 + 0.1 * i as f64).collect();
        let (rl, rr) = am.adiabatic_residual(&times).unwrap();
        assert!(rl < 1e-14 && rr < 1e-14);
    }

    #[test]
    fn anchored_to_static_branch_before_motion() {
        let am = AdiabaticMoore::build(&contraction(1.2), AdiabaticGrid::default()).unwrap();
        for &t in &[-2.0, -0.5, 0.0] {
            assert!((am.eval_moore(Which::F, t, 0).unwrap() - t).abs() < 1e-12);
            assert!((am.eval_moore(Which::G, t, 0).unwrap() - t).abs() < 1e-12);
        }
        // Continuity into the moving branch.
        let e = 1e-9;
        let inside = am.eval_moore(Which::F, e, 0).unwrap();
        assert!((inside - e).abs() < 1e-12);
    }

    #[test]
    fn late_branch_is_linear_with_common_offset() {
        let am = AdiabaticMoore::build(&contraction(1.2), AdiabaticGrid::default()).unwrap();
        let off = am.late_offset();
        for &t in &[1.2, 2.0, 5.0] {
            let f = am.eval_moore(Which::F, t, 0).unwrap();
            let g = am.eval_moore(Which::G, t, 0).unwrap();
            assert!((f - ((t + 0.3) / 0.4 + off)).abs() < 1e-12);
            assert!((g - ((t - 0.3) / 0.4 + off)).abs() < 1e-12);
            assert_eq!(am.eval_moore(Which::F, t + 1.0, 2).unwrap(), 0.0);
        }
        // The offset is continuous with the moving branch at the end of the motion.
        let just_before = am.eval_moore(Which::F, 1.2 - 1e-10, 0).unwrap();
        assert!((just_before - ((1.2 + 0.3) / 0.4 + off)).abs() < 1e-8);
    }

    #[test]
    fn difference_cancels_the_integral() {
        let am = AdiabaticMoore::build(&contraction(1.2), AdiabaticGrid::default()).unwrap();
        let p = am.pair().clone();
        for i in 0..=48 {
            let t = -0.6 + 0.05 * i as f64;
            let (l, r) = (p.left.position(t), p.right.position(t));
            let g = am.eval_moore(Which::G, t, 0).unwrap();
            let f = am.eval_moore(Which::F, t, 0).unwrap();
            let want = -(r + l) / (r - l) + 1.0;
            assert!((g - f - want).abs() < 1e-12, "t = {t}");
        }
    }

    #[test]
    fn monotonicity_flag_tracks_speed() {
        let slow = AdiabaticMoore::build(&contraction(1.2), AdiabaticGrid::default()).unwrap();
        assert!(slow.is_monotone());
        let fast = AdiabaticMoore::build(&contraction(0.4), AdiabaticGrid::default()).unwrap();
        assert!(!fast.is_monotone());
        assert!(fast.min_slope_on(Which::G, -3.0, -0.1) > 0.0);
        assert!(fast.min_slope_on(Which::G, 0.0, 0.4) < 0.0);
    }

    #[test]
    fn rejects_non_finite_arguments() {
        let am = AdiabaticMoore::build(&contraction(1.2), AdiabaticGrid::default()).unwrap();
        assert!(matches!(am.eval_moore(Which::F, f64::NAN, 0), Err(Error::NonFinite(_))));
    }
}
