//! Common surface of the adiabatic and exact Moore solutions.

use crate::error::Result;
use crate::jet::Jet;
use crate::trajectory::Mirror;

/// Which of the two Moore functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    /// `F`, evaluated at retarded arguments `t − x`.
    F,
    /// `G`, evaluated at advanced arguments `t + x`.
    G,
}

/// A pair of Moore functions `(F, G)` with derivatives to third order.
pub trait MooreSolution: Send + Sync {
    fn f_jet(&self, w: f64) -> Result<Jet>;

    fn g_jet(&self, z: f64) -> Result<Jet>;

    fn jet(&self, which: Which, arg: f64) -> Result<Jet> {
        match which {
            Which::F => self.f_jet(arg),
            Which::G => self.g_jet(arg),
        }
    }

    /// Arguments in `[lo, hi]` where `F'''` may have a kink.
    fn f_kinks(&self, lo: f64, hi: f64) -> Vec<f64>;

    /// Arguments in `[lo, hi]` where `G'''` may have a kink.
    fn g_kinks(&self, lo: f64, hi: f64) -> Vec<f64>;
}

/// `sup |G(t+L) − F(t−L)|` and `sup |G(t+R) − F(t−R) − 2|` over `times`.
pub fn moore_residuals<S: MooreSolution + ?Sized>(
    moore: &S,
    left: &dyn Mirror,
    right: &dyn Mirror,
    times: &[f64],
) -> Result<(f64, f64)> {
    let mut res_l = 0.0_f64;
    let mut res_r = 0.0_f64;
    for &t in times {
        let l = left.position(t);
        let r = right.position(t);
        let gl = moore.g_jet(t + l)?.value();
        let fl = moore.f_jet(t - l)?.value();
        let gr = moore.g_jet(t + r)?.value();
        let fr = moore.f_jet(t - r)?.value();
        res_l = res_l.max((gl - fl).abs());
        res_r = res_r.max((gr - fr - 2.0).abs());
    }
    Ok((res_l, res_r))
}

pub(crate) fn in_range(points: impl IntoIterator<Item = f64>, lo: f64, hi: f64) -> Vec<f64> {
    let mut v: Vec<f64> = points.into_iter().filter(|p| *p >= lo && *p <= hi).collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}
