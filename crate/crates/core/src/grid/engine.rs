use std::sync::Arc;

use rayon::prelude::*;

use super::quad::{GaussLegendre, Graded, QuadratureSpec};
use super::{GridFunction, TailModel};
use crate::error::{FracError, Result};

/// A kernel k(t) on t > 0 together with the points where it is singular or
/// non-smooth (these drive the panel grading).
#[derive(Clone)]
pub struct Kernel {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    singular: Vec<f64>,
}

impl std::fmt::Debug for Kernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Kernel").field("singular", &self.singular).finish_non_exhaustive()
    }
}

impl Kernel {
    pub fn new(f: impl Fn(f64) -> f64 + Send + Sync + 'static, singular: Vec<f64>) -> Self {
        Self { f: Arc::new(f), singular }
    }

    /// c·t^{p}, singular at 0.
    pub fn power(c: f64, p: f64) -> Self {
        Self::new(move |t| c * t.powf(p), vec![0.0])
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.f)(t)
    }

    pub fn singular(&self) -> &[f64] {
        &self.singular
    }
}

/// Outcome of a single quadrature with its error budget.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub warnings: Vec<String>,
}

/// ∫₀^∞ f(x+t) k(t) dt for a single abscissa `x`.
///
/// The integrand follows the piecewise-cubic interpolant of the samples, the
/// left tail model for x+t < x0 and the right tail model beyond the grid.
/// The error estimate is the change against the same integral on the grid
/// with every other sample dropped, plus the estimated tail remainder.
pub fn integrate_right_tail(
    f: &GridFunction,
    x: f64,
    kernel: impl Fn(f64) -> f64 + Send + Sync + 'static,
    spec: &QuadratureSpec,
) -> Result<QuadResult> {
    spec.validate()?;
    let kernel = Kernel::new(kernel, vec![0.0]);
    let gl = GaussLegendre::new(spec.nodes_per_panel);
    let fine = point_integral(f, x, &kernel, &gl, spec)?;
    let mut warnings = Vec::new();
    let mut error = fine.1.abs();
    if f.len() >= 2 * GridFunction::MIN_LEN {
        let coarse = point_integral(&f.subsample(2)?, x, &kernel, &gl, spec)?;
        error += (fine.0 - coarse.0).abs();
    }
    error += 1e-14 * fine.0.abs();
    if fine.1.abs() > spec.tail_cut {
        warnings.push(format!("tail remainder {:.3e} exceeds tail_cut {:.1e}", fine.1, spec.tail_cut));
    }
    Ok(QuadResult { value: fine.0, error, warnings })
}

fn point_integral(
    f: &GridFunction,
    x: f64,
    kernel: &Kernel,
    gl: &GaussLegendre,
    spec: &QuadratureSpec,
) -> Result<(f64, f64)> {
    let q = Graded { gl, levels: spec.graded_levels };
    let sing = kernel.singular();
    let mut total = 0.0;
    // left tail region
    if x < f.x0() {
        let lt = f.left_tail();
        let g = |t: f64| lt.eval(-(x + t)) * kernel.eval(t);
        total += q.integrate(&g, 0.0, f.x0() - x, sing)?;
    }
    let first = if x <= f.x0() { 0 } else { (((x - f.x0()) / f.h()).floor() as usize).min(f.len() - 1) };
    for j in first..f.len() - 1 {
        let lo = (f.x(j) - x).max(0.0);
        let hi = f.x(j + 1) - x;
        if hi <= lo {
            continue;
        }
        let c = f.cell_poly(j);
        let xj = f.x(j);
        let h = f.h();
        let g = |t: f64| {
            let u = (x + t - xj) / h;
            (c[0] + u * (c[1] + u * (c[2] + u * c[3]))) * kernel.eval(t)
        };
        total += q.integrate(&g, lo, hi, sing)?;
    }
    let start = (f.xmax() - x).max(0.0);
    let (tail, rem) = tail_integral(f.tail(), x, start, kernel, &q, f.h())?;
    Ok((total + tail, rem))
}

/// ∫_{lo}^∞ tail(x+t) k(t) dt on panels that double in width (capped at twice
/// the decay length for exponential tails), with a power-law estimate of the
/// remainder. Returns (value, remainder estimate).
pub(crate) fn tail_integral(
    tail: &TailModel,
    x: f64,
    lo: f64,
    kernel: &Kernel,
    q: &Graded<'_>,
    h: f64,
) -> Result<(f64, f64)> {
    if tail.is_zero() {
        return Ok((0.0, 0.0));
    }
    let g = |t: f64| tail.eval(x + t) * kernel.eval(t);
    let cap = tail.decay_length().map(|l| 2.0 * l).unwrap_or(f64::INFINITY);
    let mut w = (4.0 * h).max(0.25).min(cap);
    let mut a = lo;
    let mut sum = 0.0;
    let mut converged = false;
    for _ in 0..400 {
        let c = q.integrate(&g, a, a + w, kernel.singular())?;
        sum += c;
        a += w;
        w = (2.0 * w).min(cap);
        if c.abs() <= 1e-16 * sum.abs() || (c == 0.0 && sum == 0.0) {
            converged = true;
            break;
        }
    }
    let v1 = g(a);
    let v2 = g(2.0 * a);
    let rem = if v1 == 0.0 || v2 == 0.0 || v1 * v2 < 0.0 {
        0.0
    } else {
        let slope = (v2 / v1).ln() / std::f64::consts::LN_2;
        if slope >= -1.0 {
            if converged {
                0.0
            } else {
                return Err(FracError::Divergence(format!(
                    "tail integrand decays like t^{slope:.3}, not integrable at infinity"
                )));
            }
        } else {
            v1 * a / (-slope - 1.0)
        }
    };
    if !converged && !rem.is_finite() {
        return Err(FracError::Divergence("tail integral did not settle".into()));
    }
    Ok((sum + rem, rem))
}

/// Cell moments μ_m[k] = ∫ k(t) u^k dt over t ∈ [mh, (m+1)h] ∩ [t_start, ∞),
/// u = (t − mh)/h. With these, the integral of a piecewise-cubic function
/// against k becomes a discrete convolution with the cell coefficients.
#[derive(Debug, Clone)]
pub struct KernelTable {
    h: f64,
    t_start: f64,
    moments: Vec<[f64; 4]>,
    kernel: Kernel,
    spec: QuadratureSpec,
}

/// Values of a one-sided kernel operator at every node.
#[derive(Debug, Clone)]
pub(crate) struct Applied {
    pub values: Vec<f64>,
    /// Largest tail-quadrature remainder estimate; diagnostics only.
    #[allow(dead_code)]
    pub max_remainder: f64,
}

impl KernelTable {
    pub fn build(kernel: Kernel, h: f64, cells: usize, t_start: f64, spec: &QuadratureSpec) -> Result<Self> {
        let gl = GaussLegendre::new(spec.nodes_per_panel);
        let q = Graded { gl: &gl, levels: spec.graded_levels };
        let moments = (0..cells)
            .into_par_iter()
            .map(|m| {
                let a = m as f64 * h;
                let lo = a.max(t_start);
                let hi = a + h;
                let mut mu = [0.0; 4];
                if hi > lo {
                    for (k, slot) in mu.iter_mut().enumerate() {
                        let g = |t: f64| kernel.eval(t) * ((t - a) / h).powi(k as i32);
                        *slot = q.integrate(&g, lo, hi, kernel.singular())?;
                    }
                }
                Ok(mu)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { h, t_start, moments, kernel, spec: *spec })
    }

    pub fn moments(&self) -> &[[f64; 4]] {
        &self.moments
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    /// ∫_{t_start}^∞ f(x_i + t) k(t) dt at the single node i.
    pub(crate) fn apply_right_at(&self, f: &GridFunction, i: usize) -> Result<f64> {
        if (f.h() - self.h).abs() > 1e-12 * self.h || self.moments.len() + 1 < f.len() {
            return Err(FracError::Precondition("kernel table built for a different grid".into()));
        }
        let mut s = 0.0;
        for (j, mu) in (i..f.len() - 1).zip(&self.moments) {
            let c = f.cell_poly(j);
            s += c[0] * mu[0] + c[1] * mu[1] + c[2] * mu[2] + c[3] * mu[3];
        }
        let gl = GaussLegendre::new(self.spec.nodes_per_panel);
        let q = Graded { gl: &gl, levels: self.spec.graded_levels };
        let xi = f.x(i);
        let lo = (f.xmax() - xi).max(self.t_start);
        Ok(s + tail_integral(f.tail(), xi, lo, &self.kernel, &q, self.h)?.0)
    }

    /// out_i = ∫_{t_start}^∞ f(x_i + t) k(t) dt at every node.
    pub(crate) fn apply_right(&self, f: &GridFunction) -> Result<Applied> {
        if (f.h() - self.h).abs() > 1e-12 * self.h || self.moments.len() + 1 < f.len() {
            return Err(FracError::Precondition("kernel table built for a different grid".into()));
        }
        let n = f.len();
        let cells: Vec<[f64; 4]> = (0..n - 1).map(|j| f.cell_poly(j)).collect();
        let gl = GaussLegendre::new(self.spec.nodes_per_panel);
        let q = Graded { gl: &gl, levels: self.spec.graded_levels };
        let xmax = f.xmax();
        let results = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut s = 0.0;
                for (c, mu) in cells[i..].iter().zip(&self.moments) {
                    s += c[0] * mu[0] + c[1] * mu[1] + c[2] * mu[2] + c[3] * mu[3];
                }
                let xi = f.x(i);
                let lo = (xmax - xi).max(self.t_start);
                let (t, rem) = tail_integral(f.tail(), xi, lo, &self.kernel, &q, self.h)?;
                Ok((s + t, rem))
            })
            .collect::<Result<Vec<_>>>()?;
        let max_remainder = results.iter().fold(0.0f64, |m, r| m.max(r.1.abs()));
        Ok(Applied { values: results.into_iter().map(|r| r.0).collect(), max_remainder })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{gaussian, one_sided_exp};
    use crate::special::gamma;

    #[test]
    fn weyl_kernel_on_exponential() {
        let spec = QuadratureSpec::for_spacing(0.01);
        let g = gamma(0.5).unwrap();
        for (lambda, expect) in [(1.0, 1.0), (2.0, 2f64.powf(-0.5))] {
            let f = one_sided_exp(lambda, 20.0, 0.01).unwrap();
            let r = integrate_right_tail(&f, 0.0, move |t| t.powf(-0.5) / g, &spec).unwrap();
            assert!((r.value - expect).abs() < 1e-8, "{} vs {expect}", r.value);
            assert!((r.value - expect).abs() <= r.error, "estimate {} too small", r.error);
        }
    }

    #[test]
    fn table_matches_pointwise_integral() {
        let f = gaussian(0.0, 1.0, 15.0, 0.05).unwrap();
        let spec = QuadratureSpec::for_spacing(f.h());
        let k = Kernel::power(1.0, -0.7);
        let table = KernelTable::build(k, f.h(), f.len(), 0.0, &spec).unwrap();
        let out = table.apply_right(&f).unwrap();
        // the Gaussian tail is negligible, and so is its quadrature remainder
        assert!(out.max_remainder < 1e-12, "{}", out.max_remainder);
        for i in [10, 200, 300, 550] {
            let p = integrate_right_tail(&f, f.x(i), |t| t.powf(-0.7), &spec).unwrap();
            assert!((out.values[i] - p.value).abs() < 1e-11);
        }
    }
}
