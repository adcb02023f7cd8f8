use serde::{Deserialize, Serialize};

use crate::error::{FracError, Result};

/// Parameters of the singular-kernel quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Inner truncation radius for ε-truncated integrals.
    pub eps: f64,
    /// Number of geometric halvings toward a singular point.
    pub graded_levels: usize,
    pub nodes_per_panel: usize,
    /// Absolute size above which an unresolved tail remainder is reported.
    pub tail_cut: f64,
}

impl QuadratureSpec {
    /// Defaults tied to a grid spacing: eps = h/4.
    pub fn for_spacing(h: f64) -> Self {
        Self { eps: h / 4.0, graded_levels: 40, nodes_per_panel: 8, tail_cut: 1e-10 }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0) || !self.eps.is_finite() {
            return Err(FracError::domain(format!("eps must be positive, got {}", self.eps)));
        }
        if self.graded_levels < 4 || self.nodes_per_panel < 4 {
            return Err(FracError::domain("graded_levels and nodes_per_panel must be at least 4"));
        }
        if !(self.tail_cut > 0.0 && self.tail_cut <= 1e-6) {
            return Err(FracError::domain(format!("tail_cut must lie in (0, 1e-6], got {}", self.tail_cut)));
        }
        Ok(())
    }
}

/// Gauss–Legendre rule on [−1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    /// ∫_a^b g
    pub fn integrate(&self, g: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let c = 0.5 * (a + b);
        let r = 0.5 * (b - a);
        let mut s = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += w * g(c + r * x);
        }
        s * r
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Composite Gauss–Legendre on panels graded geometrically toward the
/// singular points of the integrand.
pub(crate) struct Graded<'a> {
    pub gl: &'a GaussLegendre,
    pub levels: usize,
}

impl Graded<'_> {
    /// ∫_a^b g, where `singular` lists the abscissae at which g (or one of its
    /// low derivatives) is singular. Points inside (a,b) split the interval;
    /// points at or beyond the ends grade the adjacent panels.
    pub fn integrate(&self, g: &impl Fn(f64) -> f64, a: f64, b: f64, singular: &[f64]) -> Result<f64> {
        if !(b > a) {
            return Ok(0.0);
        }
        let mut cuts: Vec<f64> = singular.iter().copied().filter(|&s| s > a && s < b).collect();
        cuts.sort_by(f64::total_cmp);
        let mut total = 0.0;
        let mut lo = a;
        for &c in cuts.iter().chain(std::iter::once(&b)) {
            total += self.piece(g, lo, c, singular)?;
            lo = c;
        }
        Ok(total)
    }

    fn piece(&self, g: &impl Fn(f64) -> f64, a: f64, b: f64, singular: &[f64]) -> Result<f64> {
        let left = singular.iter().copied().filter(|&s| s <= a).fold(f64::NEG_INFINITY, f64::max);
        let right = singular.iter().copied().filter(|&s| s >= b).fold(f64::INFINITY, f64::min);
        let width = b - a;
        let near_left = left.is_finite() && a - left <= width;
        let near_right = right.is_finite() && right - b <= width;
        match (near_left, near_right) {
            (false, false) => Ok(self.gl.integrate(g, a, b)),
            (true, false) => self.toward_left(g, a, b, left),
            (false, true) => self.toward_right(g, a, b, right),
            (true, true) => {
                let m = 0.5 * (a + b);
                Ok(self.toward_left(g, a, m, left)? + self.toward_right(g, m, b, right)?)
            }
        }
    }

    fn toward_left(&self, g: &impl Fn(f64) -> f64, a: f64, b: f64, s: f64) -> Result<f64> {
        // a singularity within rounding of the end is treated as at the end;
        // otherwise the geometric panels below would not advance
        if a - s <= 1e-12 * (b - a) {
            let len = b - a;
            let mut total = 0.0;
            let mut hi = b;
            for _ in 0..self.levels {
                let lo = a + 0.5 * (hi - a);
                total += self.gl.integrate(g, lo, hi);
                hi = lo;
            }
            let delta = len * 0.5f64.powi(self.levels as i32);
            total += power_law_remainder(g, a, delta)?;
            return Ok(total);
        }
        let mut total = 0.0;
        let mut lo = a;
        while lo < b {
            // panels grow by a factor 1.5 in distance from the singularity
            let hi = (lo + 0.5 * (lo - s)).min(b);
            total += self.gl.integrate(g, lo, hi);
            lo = hi;
        }
        Ok(total)
    }

    fn toward_right(&self, g: &impl Fn(f64) -> f64, a: f64, b: f64, s: f64) -> Result<f64> {
        let mirrored = |y: f64| g(-y);
        self.toward_left(&mirrored, -b, -a, -s)
    }
}

/// ∫ over [s, s+δ] of an integrand assumed to behave like a power of (x − s)
/// there, the exponent read off from the values at s+δ and s+2δ.
fn power_law_remainder(g: &impl Fn(f64) -> f64, s: f64, delta: f64) -> Result<f64> {
    let v1 = g(s + delta);
    if v1 == 0.0 {
        return Ok(0.0);
    }
    let v2 = g(s + 2.0 * delta);
    if v1 * v2 <= 0.0 {
        return Ok(v1 * delta);
    }
    let beta = (v2 / v1).ln() / std::f64::consts::LN_2;
    if beta <= -1.0 {
        return Err(FracError::Divergence(format!(
            "integrand behaves like |x - {s}|^{beta:.3} near a singular point"
        )));
    }
    Ok(v1 * delta / (1.0 + beta))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_exactness() {
        let gl = GaussLegendre::new(8);
        let wsum: f64 = gl.weights.iter().sum();
        assert!((wsum - 2.0).abs() < 1e-14);
        let v = gl.integrate(&|x: f64| x.powi(15) + x.powi(14), 0.0, 1.0);
        assert!((v - (1.0 / 16.0 + 1.0 / 15.0)).abs() < 1e-14);
    }

    #[test]
    fn graded_handles_endpoint_singularities() {
        let gl = GaussLegendre::new(8);
        let q = Graded { gl: &gl, levels: 40 };
        for a in [0.25, 0.5, 0.75] {
            let v = q.integrate(&|t: f64| t.powf(a - 1.0), 0.0, 1.0, &[0.0]).unwrap();
            assert!((v - 1.0 / a).abs() < 1e-12 * (1.0 / a), "alpha {a}");
            let w = q.integrate(&|t: f64| (-t).powf(a - 1.0), -1.0, 0.0, &[0.0]).unwrap();
            assert!((w - 1.0 / a).abs() < 1e-12 / a);
        }
        // near (but outside) singularity
        let v = q.integrate(&|t: f64| t.powf(-1.75), 1e-6, 1.0, &[0.0]).unwrap();
        let exact = (1e-6f64.powf(-0.75) - 1.0) / 0.75;
        assert!(((v - exact) / exact).abs() < 1e-12);
    }

    #[test]
    fn graded_detects_nonintegrable() {
        let gl = GaussLegendre::new(8);
        let q = Graded { gl: &gl, levels: 40 };
        assert!(q.integrate(&|t: f64| 1.0 / (t * t), 0.0, 1.0, &[0.0]).is_err());
    }
}
