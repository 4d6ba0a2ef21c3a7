//! Bracketing root finder: bisection for safety, secant and inverse quadratic
//! steps for speed (Brent's scheme).

use crate::error::{Error, Result};

/// Default absolute tolerance, in time units.
pub const DEFAULT_TOL: f64 = 1e-12;

const MAX_ITER: usize = 200;

/// Finds a root of `f` in `[a, b]`, which must straddle a sign change.
///
/// The returned point lies within `tol` of a root. Iteration continues past
/// `tol` down to a couple of ulps whenever the secant steps allow it, so in
/// practice results are accurate to rounding.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    let fa = f(a);
    let fb = f(b);
    brent_with(f, a, b, fa, fb, tol)
}

/// [`brent`] with the endpoint values already known.
pub fn brent_with<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, fa: f64, fb: f64, tol: f64) -> Result<f64> {
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::NoBracket { lo: a.min(b), hi: a.max(b) });
    }
    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        // Tighter than `tol`: the last few secant steps are nearly free.
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol.min(1e-15);
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
    }
    // Bisection alone halves the bracket 200 times; reaching here means the
    // function is not continuous across the bracket.
    if (c - b).abs() <= tol {
        Ok(b)
    } else {
        Err(Error::NoBracket { lo: b.min(c), hi: b.max(c) })
    }
}

/// Widens `[lo, hi]` geometrically about its centre until `f` changes sign,
/// at most `max_doublings` times. Returns the bracket and endpoint values.
pub fn expand_bracket<F: FnMut(f64) -> f64>(
    f: &mut F,
    lo: f64,
    hi: f64,
    max_doublings: usize,
) -> Result<(f64, f64, f64, f64)> {
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = f(lo);
    let mut fhi = f(hi);
    for _ in 0..=max_doublings {
        if flo.signum() != fhi.signum() || flo == 0.0 || fhi == 0.0 {
            return Ok((lo, hi, flo, fhi));
        }
        let half = 0.5 * (hi - lo);
        lo -= half;
        hi += half;
        flo = f(lo);
        fhi = f(hi);
    }
    Err(Error::NoBracket { lo, hi })
}

/// Maximizes a unimodal `f` on `[a, b]` by golden-section search.
pub fn golden_max<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (a, b);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_sqrt_two() {
        let r = brent(|x| x * x - 2.0, 0.0, 2.0, DEFAULT_TOL).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn rejects_missing_sign_change() {
        assert!(matches!(brent(|x| x * x + 1.0, -1.0, 1.0, DEFAULT_TOL), Err(Error::NoBracket { .. })));
    }

    #[test]
    fn handles_flat_then_steep() {
        // Kinked, strictly increasing: like t + X(t) for a mirror at rest then moving.
        let f = |t: f64| if t < 0.0 { t + 1.0 - 3.0 } else { t + 1.0 + 0.5 * t - 3.0 };
        let r = brent(f, -10.0, 10.0, DEFAULT_TOL).unwrap();
        assert!((r - 2.0 / 1.5).abs() < 1e-13);
    }

    #[test]
    fn expands_until_straddled() {
        let mut f = |x: f64| x - 50.0;
        let (lo, hi, flo, fhi) = expand_bracket(&mut f, 0.0, 1.0, 16).unwrap();
        assert!(lo <= 50.0 && hi >= 50.0);
        assert!(flo <= 0.0 && fhi >= 0.0);
    }

    #[test]
    fn golden_section_peak() {
        let (x, fx) = golden_max(|x| -(x - 0.3) * (x - 0.3) + 1.0, 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-8);
        assert!((fx - 1.0).abs() < 1e-14);
    }
}
