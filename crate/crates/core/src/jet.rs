//! Truncated Taylor jets: a value together with its first three derivatives.
//!
//! The energy density needs third derivatives of the Moore functions, and the
//! exact solver obtains them by pushing jets through every reflection of the
//! backward trace. All arithmetic here is exact chain-rule bookkeeping; there
//! is no numerical differentiation anywhere in the library.

use std::ops::{Add, Mul, Neg, Sub};

/// `[f, f', f'', f''']` of some function at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet(pub [f64; 4]);

impl Jet {
    pub const fn new(v: f64, d1: f64, d2: f64, d3: f64) -> Self {
        Jet([v, d1, d2, d3])
    }

    pub const fn constant(c: f64) -> Self {
        Jet([c, 0.0, 0.0, 0.0])
    }

    /// The identity map evaluated at `x`.
    pub const fn variable(x: f64) -> Self {
        Jet([x, 1.0, 0.0, 0.0])
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.0[0]
    }

    #[inline]
    pub fn d(&self, order: usize) -> f64 {
        self.0[order]
    }

    /// `outer ∘ self`, where `outer` holds the derivatives of the outer
    /// function at `self.value()` (Faà di Bruno to third order).
    #[inline]
    pub fn compose(outer: [f64; 4], inner: Jet) -> Jet {
        let [g0, g1, g2, g3] = outer;
        let [_, f1, f2, f3] = inner.0;
        Jet([g0, g1 * f1, g2 * f1 * f1 + g1 * f2, g3 * f1 * f1 * f1 + 3.0 * g2 * f1 * f2 + g1 * f3])
    }

    /// Derivatives of `h⁻¹` at `y = h(t)`, given the jet `[h, h', h'', h''']`
    /// at `t`. The value slot is set to `t`.
    #[inline]
    pub fn inverse(t: f64, h: [f64; 4]) -> [f64; 4] {
        let [_, h1, h2, h3] = h;
        let i1 = 1.0 / h1;
        let i2 = -h2 * i1 * i1 * i1;
        let i3 = (3.0 * h2 * h2 - h1 * h3) * i1.powi(5);
        [t, i1, i2, i3]
    }

    pub fn recip(self) -> Jet {
        let y = self.0[0];
        let r = 1.0 / y;
        Jet::compose([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r], self)
    }

    pub fn scale(self, k: f64) -> Jet {
        Jet(self.0.map(|v| v * k))
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet(self.0.map(|v| -v))
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let [a0, a1, a2, a3] = self.0;
        let [b0, b1, b2, b3] = o.0;
        Jet([
            a0 * b0,
            a1 * b0 + a0 * b1,
            a2 * b0 + 2.0 * a1 * b1 + a0 * b2,
            a3 * b0 + 3.0 * a2 * b1 + 3.0 * a1 * b2 + a0 * b3,
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * (1.0 + a.abs().max(b.abs()))
    }

    #[test]
    fn compose_matches_closed_form() {
        // sin(x^2) at x = 0.7
        let x = 0.7_f64;
        let inner = Jet::new(x * x, 2.0 * x, 2.0, 0.0);
        let u = x * x;
        let outer = [u.sin(), u.cos(), -u.sin(), -u.cos()];
        let h = Jet::compose(outer, inner);
        let d1 = 2.0 * x * u.cos();
        let d2 = 2.0 * u.cos() - 4.0 * x * x * u.sin();
        let d3 = -12.0 * x * u.sin() - 8.0 * x.powi(3) * u.cos();
        assert!(close(h.d(1), d1));
        assert!(close(h.d(2), d2));
        assert!(close(h.d(3), d3));
    }

    #[test]
    fn inverse_of_exp_is_log() {
        let t = 0.3_f64;
        let e = t.exp();
        let inv = Jet::inverse(t, [e, e, e, e]);
        assert!(close(inv[1], 1.0 / e));
        assert!(close(inv[2], -1.0 / (e * e)));
        assert!(close(inv[3], 2.0 / (e * e * e)));
    }

    #[test]
    fn product_and_reciprocal() {
        let x = Jet::variable(2.0);
        let p = x * x * x;
        assert_eq!(p.0, [8.0, 12.0, 12.0, 6.0]);
        let r = x.recip();
        assert!(close(r.d(3), -6.0 / 16.0));
    }
}
