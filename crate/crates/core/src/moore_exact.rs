//! Exact Moore functions by backward tracing along characteristics.
//!
//! Light reaching the right mirror at advanced time `z = t₁ + R(t₁)` left the
//! left mirror at `t* + L(t*)`, where `t* − L(t*) = t₁ − R(t₁)`. Each such
//! round trip lowers `G` by 2, so
//!
//! ```text
//! G(z) = G(t* + L(t*)) + 2
//! ```
//!
//! and the recursion ends once it lands in the static past, where
//! `G(z) = (z − L₀)/d₀`. `F` follows from the left-mirror condition
//! `F(t − L) = G(t + L)`. Derivatives are carried through every reflection
//! as jets, so the solver returns third derivatives without differencing.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::moore::{in_range, moore_residuals, MooreSolution};
use crate::roots::{brent, DEFAULT_TOL};
use crate::trajectory::{joint_window, Mirror, MirrorPath, TrajectoryPair};

/// A traced value of `G` and the number of reflections it took.
#[derive(Debug, Clone, Copy)]
pub struct Trace {
    pub jet: Jet,
    pub bounces: usize,
}

/// Exact `(F, G)` for an arbitrary subluminal pair of mirrors.
#[derive(Debug, Clone)]
pub struct ExactMoore<M: Mirror = MirrorPath> {
    left: M,
    right: M,
    l0: f64,
    d0: f64,
    /// Both mirrors are at rest before this time.
    start: f64,
    min_gap: f64,
    right_low: f64,
    tol: f64,
    f_memo: HashMap<u64, Jet>,
    g_memo: HashMap<u64, Jet>,
}

impl ExactMoore<MirrorPath> {
    pub fn from_pair(pair: &TrajectoryPair) -> Result<Self> {
        Self::with_gap(pair.left.clone(), pair.right.clone(), pair.min_gap())
    }
}

impl<M: Mirror> ExactMoore<M> {
    /// Checks that neither mirror reaches light speed and that they never
    /// meet, then prepares the solver.
    pub fn new(left: M, right: M) -> Result<Self> {
        let (a, b) = joint_window(&left, &right);
        let mut gap =
            (right.initial_position() - left.initial_position()).min(right.final_position() - left.final_position());
        if a <= b {
            let n = 4096;
            for i in 0..=n {
                let t = a + (b - a) * i as f64 / n as f64;
                gap = gap.min(right.position(t) - left.position(t));
            }
        }
        Self::with_gap(left, right, gap)
    }

    fn with_gap(left: M, right: M, min_gap: f64) -> Result<Self> {
        for m in [&left, &right] {
            let v = m.max_speed();
            if v >= 1.0 {
                return Err(Error::Superluminal { speed: v });
            }
        }
        if min_gap <= 0.0 {
            return Err(Error::MirrorsCross { t: f64::NAN, gap: min_gap });
        }
        let (start, _) = joint_window(&left, &right);
        let l0 = left.initial_position();
        let d0 = right.initial_position() - l0;
        let right_low = right.position_bounds().0;
        Ok(ExactMoore {
            left,
            right,
            l0,
            d0,
            start,
            min_gap,
            right_low,
            tol: DEFAULT_TOL,
            f_memo: HashMap::new(),
            g_memo: HashMap::new(),
        })
    }

    /// Overrides the root-finding tolerance (time units).
    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn left(&self) -> &M {
        &self.left
    }

    pub fn right(&self) -> &M {
        &self.right
    }

    /// Solves `t + X(t) = z` on the given mirror.
    pub fn invert_advanced(&self, mirror: &M, z: f64) -> Result<f64> {
        invert(mirror, 1.0, z, self.tol)
    }

    /// Solves `t − X(t) = w` on the given mirror.
    pub fn invert_retarded(&self, mirror: &M, w: f64) -> Result<f64> {
        invert(mirror, -1.0, w, self.tol)
    }

    fn max_bounces(&self, z: f64) -> usize {
        // Each round trip lowers the advanced time by at least the minimum gap.
        let span = (z - self.start - self.right_low).max(0.0);
        (span / self.min_gap).ceil() as usize + 4
    }

    /// `G` at the advanced time carried by `z` (value and derivatives with
    /// respect to whatever `z` is a jet of).
    fn trace_from(&self, mut z: Jet) -> Result<Trace> {
        let limit = self.max_bounces(z.value());
        let mut n = 0;
        loop {
            let t1 = invert(&self.right, 1.0, z.value(), self.tol)?;
            if t1 <= self.start {
                let mut g = (z - Jet::constant(self.l0)).scale(1.0 / self.d0);
                g.0[0] += 2.0 * n as f64;
                return Ok(Trace { jet: g, bounces: n });
            }
            let r = self.right.jet(t1);
            let t1j = Jet::compose(Jet::inverse(t1, [t1 + r[0], 1.0 + r[1], r[2], r[3]]), z);
            let w = t1j - Jet::compose(r, t1j);
            let ts = invert(&self.left, -1.0, w.value(), self.tol)?;
            let l = self.left.jet(ts);
            let tsj = Jet::compose(Jet::inverse(ts, [ts - l[0], 1.0 - l[1], -l[2], -l[3]]), w);
            let z2 = tsj + Jet::compose(l, tsj);
            if !(z2.value() < z.value()) {
                return Err(Error::NonDecreasingTrace { from: z.value(), to: z2.value() });
            }
            n += 1;
            if n > limit {
                return Err(Error::TraceTooDeep(limit));
            }
            z = z2;
        }
    }

    /// `G(z)` with its reflection count.
    pub fn trace_g(&self, z: f64) -> Result<Trace> {
        if !z.is_finite() {
            return Err(Error::NonFinite(z));
        }
        self.trace_from(Jet::variable(z))
    }

    /// `F(w)` with the reflection count of the underlying `G` trace.
    pub fn trace_f(&self, w: f64) -> Result<Trace> {
        if !w.is_finite() {
            return Err(Error::NonFinite(w));
        }
        let t1 = invert(&self.left, -1.0, w, self.tol)?;
        if t1 <= self.start {
            let f = (Jet::variable(w) + Jet::constant(self.l0)).scale(1.0 / self.d0);
            return Ok(Trace { jet: f, bounces: 0 });
        }
        let l = self.left.jet(t1);
        let t1j = Jet::compose(Jet::inverse(t1, [t1 - l[0], 1.0 - l[1], -l[2], -l[3]]), Jet::variable(w));
        self.trace_from(t1j + Jet::compose(l, t1j))
    }

    pub fn solve_g(&self, z: f64) -> Result<Jet> {
        if let Some(j) = self.g_memo.get(&z.to_bits()) {
            return Ok(*j);
        }
        Ok(self.trace_g(z)?.jet)
    }

    pub fn solve_f(&self, w: f64) -> Result<Jet> {
        if let Some(j) = self.f_memo.get(&w.to_bits()) {
            return Ok(*j);
        }
        Ok(self.trace_f(w)?.jet)
    }

    /// Caches `F` and `G` at exactly these arguments.
    pub fn memoize(&mut self, f_args: &[f64], g_args: &[f64]) -> Result<()> {
        for &w in f_args {
            let j = self.trace_f(w)?.jet;
            self.f_memo.insert(w.to_bits(), j);
        }
        for &z in g_args {
            let j = self.trace_g(z)?.jet;
            self.g_memo.insert(z.to_bits(), j);
        }
        Ok(())
    }

    /// `(sup |G(t+L) − F(t−L)|, sup |G(t+R) − F(t−R) − 2|)` over `times`.
    pub fn residuals(&self, times: &[f64]) -> Result<(f64, f64)> {
        moore_residuals(self, &self.left, &self.right, times)
    }

    /// Advanced time one round trip later: the image of `z` under a bounce
    /// off the left mirror followed by one off the right.
    fn forward(&self, z: f64) -> Result<f64> {
        let ts = invert(&self.left, 1.0, z, self.tol)?;
        let w = ts - self.left.position(ts);
        self.forward_from_retarded(w)
    }

    fn forward_from_retarded(&self, w: f64) -> Result<f64> {
        let t1 = invert(&self.right, -1.0, w, self.tol)?;
        Ok(t1 + self.right.position(t1))
    }

    /// Advanced times up to `hi` where `G` inherits a path breakpoint.
    fn g_kink_set(&self, hi: f64) -> Vec<f64> {
        let mut queue: Vec<f64> = Vec::new();
        for s in self.right.breakpoints() {
            queue.push(s + self.right.position(s));
        }
        for s in self.left.breakpoints() {
            if let Ok(z) = self.forward_from_retarded(s - self.left.position(s)) {
                queue.push(z);
            }
        }
        let mut out = Vec::new();
        while let Some(z) = queue.pop() {
            if z > hi || !z.is_finite() {
                continue;
            }
            out.push(z);
            if let Ok(next) = self.forward(z) {
                if next > z {
                    queue.push(next);
                }
            }
        }
        out
    }
}

impl<M: Mirror> MooreSolution for ExactMoore<M> {
    fn f_jet(&self, w: f64) -> Result<Jet> {
        self.solve_f(w)
    }

    fn g_jet(&self, z: f64) -> Result<Jet> {
        self.solve_g(z)
    }

    fn f_kinks(&self, lo: f64, hi: f64) -> Vec<f64> {
        let (l_lo, l_hi) = self.left.position_bounds();
        let reach = 2.0 * l_lo.abs().max(l_hi.abs()) + 1.0;
        let mut pts: Vec<f64> = self.left.breakpoints().iter().map(|&s| s - self.left.position(s)).collect();
        for z in self.g_kink_set(hi + reach) {
            if let Ok(t) = invert(&self.left, 1.0, z, self.tol) {
                pts.push(t - self.left.position(t));
            }
        }
        in_range(pts, lo, hi)
    }

    fn g_kinks(&self, lo: f64, hi: f64) -> Vec<f64> {
        in_range(self.g_kink_set(hi), lo, hi)
    }
}

/// Solves `t + sign·X(t) = y` for a subluminal mirror.
fn invert<M: Mirror + ?Sized>(mirror: &M, sign: f64, y: f64, tol: f64) -> Result<f64> {
    if !y.is_finite() {
        return Err(Error::NonFinite(y));
    }
    let (a, b) = mirror.motion_window();
    let early = y - sign * mirror.initial_position();
    if early <= a {
        return Ok(early);
    }
    let late = y - sign * mirror.final_position();
    if late >= b {
        return Ok(late);
    }
    brent(|t| t + sign * mirror.position(t) - y, a, b, tol)
}
