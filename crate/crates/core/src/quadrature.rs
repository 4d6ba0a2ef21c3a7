//! Composite Simpson rules and a cumulative integral table.

/// Composite Simpson on an odd number of equally spaced samples.
pub fn simpson(values: &[f64], h: f64) -> f64 {
    let n = values.len();
    assert!(n >= 3 && n % 2 == 1, "Simpson needs an odd number (>= 3) of samples");
    let mut odd = 0.0;
    let mut even = 0.0;
    for (i, v) in values[1..n - 1].iter().enumerate() {
        if i % 2 == 0 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (values[0] + values[n - 1] + 4.0 * odd + 2.0 * even)
}

/// Simpson on every other sample of `values` (step `2h`); requires
/// `values.len() ≡ 1 (mod 4)`. Used as the coarse estimate for error control.
pub fn simpson_coarse(values: &[f64], h: f64) -> f64 {
    let sub: Vec<f64> = values.iter().step_by(2).copied().collect();
    simpson(&sub, 2.0 * h)
}

const GL_NODES: [f64; 4] =
    [0.183_434_642_495_649_8, 0.525_532_409_916_329, 0.796_666_477_413_626_7, 0.960_289_856_497_536_3];
const GL_WEIGHTS: [f64; 4] =
    [0.362_683_783_378_362, 0.313_706_645_877_887_3, 0.222_381_034_453_374_5, 0.101_228_536_290_376_3];

/// Eight-point Gauss–Legendre rule on `[a, b]`.
pub fn gauss_legendre<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let mut s = 0.0;
    for (x, w) in GL_NODES.iter().zip(GL_WEIGHTS) {
        s += w * (f(c - r * x) + f(c + r * x));
    }
    s * r
}

/// Running integral `∫_{start}^{t} f` on a uniform panel grid.
///
/// Node values come from composite Simpson per panel. Between nodes the
/// table adds a Gauss–Legendre integral from the nearest node to the left,
/// which keeps evaluation smooth and strictly monotone for positive `f`.
#[derive(Debug, Clone)]
pub struct CumulativeTable {
    start: f64,
    h: f64,
    nodes: Vec<f64>,
}

impl CumulativeTable {
    pub fn build<F: Fn(f64) -> f64>(f: &F, start: f64, end: f64, panels: usize) -> Self {
        assert!(end > start && panels > 0);
        let h = (end - start) / panels as f64;
        let mut nodes = Vec::with_capacity(panels + 1);
        nodes.push(0.0);
        let mut acc = 0.0;
        let mut fa = f(start);
        for k in 0..panels {
            let a = start + k as f64 * h;
            let b = if k + 1 == panels { end } else { a + h };
            let fm = f(0.5 * (a + b));
            let fb = f(b);
            acc += (b - a) / 6.0 * (fa + 4.0 * fm + fb);
            nodes.push(acc);
            fa = fb;
        }
        CumulativeTable { start, h, nodes }
    }

    /// Doubles the panel count from `panels` until the total integral changes
    /// by less than `tol` (absolute), up to `max_doublings` times.
    pub fn build_converged<F: Fn(f64) -> f64>(
        f: &F,
        start: f64,
        end: f64,
        panels: usize,
        tol: f64,
        max_doublings: usize,
    ) -> Self {
        let mut table = Self::build(f, start, end, panels);
        let mut n = panels;
        for _ in 0..max_doublings {
            n *= 2;
            let finer = Self::build(f, start, end, n);
            let change = (finer.total() - table.total()).abs();
            table = finer;
            if change < tol {
                break;
            }
        }
        table
    }

    pub fn panels(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn total(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    pub fn end(&self) -> f64 {
        self.start + self.h * self.panels() as f64
    }

    /// `∫_{start}^{t} f` for `t` inside the table (clamped to its range).
    pub fn eval<F: Fn(f64) -> f64>(&self, f: &F, t: f64) -> f64 {
        if t <= self.start {
            return 0.0;
        }
        let n = self.panels();
        let pos = (t - self.start) / self.h;
        if pos >= n as f64 {
            return self.total();
        }
        let k = pos.floor() as usize;
        let tk = self.start + k as f64 * self.h;
        if t == tk {
            return self.nodes[k];
        }
        self.nodes[k] + gauss_legendre(f, tk, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_is_exact_for_cubics() {
        let h = 0.25;
        let v: Vec<f64> = (0..9).map(|i| (i as f64 * h).powi(3)).collect();
        assert!((simpson(&v, h) - 2f64.powi(4) / 4.0).abs() < 1e-14);
        assert!((simpson_coarse(&v, h) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn gauss_legendre_exp() {
        let i = gauss_legendre(f64::exp, 0.0, 1.0);
        assert!((i - (1f64.exp() - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn cumulative_table_matches_antiderivative() {
        let f = |t: f64| 1.0 / (1.0 + t * t);
        let table = CumulativeTable::build_converged(&f, 0.0, 3.0, 64, 1e-13, 6);
        for &t in &[0.0, 0.013, 0.5, 1.7, 2.999, 3.0] {
            assert!((table.eval(&f, t) - t.atan()).abs() < 1e-13, "t = {t}");
        }
        assert_eq!(table.eval(&f, -1.0), 0.0);
    }
}
