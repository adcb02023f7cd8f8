//! One-sided harmonic analysis: maximal functions, one-sided weights, the
//! inversion kernel k̃ and the inversion / range pipelines.

mod maximal;
mod weights;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use maximal::{maximal_minus, maximal_plus, maximal_plus_frac};
pub use weights::{
    check_a1_plus, check_ap, check_ap_plus, check_apq, check_apq_plus, integrability_diagnostic,
    integrability_with_exponent, A1Report, IntegrabilityReport, Lattice, WeightGrowth, WeightReport, WeightSample,
    WeightVerdict,
};

use crate::error::{FracError, Result};
use crate::fracops::{marchaud_right_eps, weyl, with_fitted_tails};
use crate::grid::{GaussLegendre, Graded, GridFunction, Kernel, KernelTable, QuadratureSpec};
use crate::special::Alpha;

/// Fraction of the grid dropped at each end when measuring errors and norms.
pub const MARGIN: f64 = 0.1;

/// The inversion kernel
/// k̃(x) = (sin πα/π)·((|x|^α − |x+1|^α)/|x|) for x < −1,
/// (sin πα/π)·|x|^{α−1} on (−1, 0), and 0 for x > 0.
///
/// It is nonnegative, nondecreasing on (−∞, 0) and has unit mass; the
/// ε-truncated right derivative of W_α f is f ∗ k̃_ε.
#[derive(Debug, Clone, Copy)]
pub struct KernelKTilde {
    alpha: Alpha,
    norm: f64,
}

impl KernelKTilde {
    pub fn new(alpha: Alpha) -> Self {
        // 1/(Γ(α)Γ(1−α)) = −1/(αΓ(−α)Γ(α))
        Self { alpha, norm: (std::f64::consts::PI * alpha.value()).sin() / std::f64::consts::PI }
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    pub fn normalization(&self) -> f64 {
        self.norm
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x >= 0.0 {
            return 0.0;
        }
        let r = -x;
        if r <= 1.0 {
            self.inner_branch(r)
        } else {
            self.outer_branch(r)
        }
    }

    /// Branch on (−1, 0) at r = −x.
    fn inner_branch(&self, r: f64) -> f64 {
        self.norm * r.powf(self.alpha.value() - 1.0)
    }

    /// Branch on (−∞, −1) at r = −x, written as r^{α−1}(1 − (1 − 1/r)^α) to
    /// avoid cancellation for large r.
    fn outer_branch(&self, r: f64) -> f64 {
        let al = self.alpha.value();
        -self.norm * r.powf(al - 1.0) * (al * (-1.0 / r).ln_1p()).exp_m1()
    }

    /// Both branch formulas evaluated at x = −1.
    pub fn branches_at_minus_one(&self) -> (f64, f64) {
        (self.outer_branch(1.0), self.inner_branch(1.0))
    }

    /// ∫ k̃ by graded quadrature on (−R, 0) plus the series of the outer
    /// branch beyond R.
    pub fn mass(&self) -> Result<f64> {
        let gl = GaussLegendre::new(12);
        let q = Graded { gl: &gl, levels: 50 };
        let g = |r: f64| self.eval(-r);
        let mut total = q.integrate(&g, 0.0, 1.0, &[0.0, 1.0])?;
        let mut lo = 1.0;
        while lo < 1024.0 {
            total += q.integrate(&g, lo, 2.0 * lo, &[1.0])?;
            lo *= 2.0;
        }
        Ok(total + self.outer_mass_beyond(lo))
    }

    /// ∫_R^∞ of the outer branch: r^{α−1}(1 − (1−1/r)^α) = Σ_k a_k r^{α−1−k}.
    fn outer_mass_beyond(&self, r: f64) -> f64 {
        let al = self.alpha.value();
        let mut a = 1.0; // (−1)^k C(α, k), running
        let mut sum = 0.0;
        for k in 1..60 {
            a *= (k as f64 - 1.0 - al) / k as f64;
            let term = -a * r.powf(al - k as f64) / (k as f64 - al);
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
        }
        self.norm * sum
    }
}

/// (f ∗ k̃_ε)(x) = ∫_0^∞ f(x + s) ε^{−1} k̃(−s/ε) ds at every node, with k̃_ε's
/// kink at s = ε resolved by the graded cell moments.
pub fn ktilde_convolve(f: &GridFunction, a: Alpha, eps: f64) -> Result<GridFunction> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(FracError::domain(format!("eps must be positive, got {eps}")));
    }
    let k = KernelKTilde::new(a);
    // geometric breakpoints eps·2^j up to the grid step, so that panels near
    // the origin resolve the kernel's own scale when eps ≪ h
    let mut breaks = vec![0.0, eps];
    while *breaks.last().expect("nonempty") < f.h() {
        let next = 2.0 * breaks.last().expect("nonempty");
        breaks.push(next);
    }
    let kernel = Kernel::new(move |s| k.eval(-s / eps) / eps, breaks);
    let spec = QuadratureSpec::for_spacing(f.h());
    let table = KernelTable::build(kernel, f.h(), f.len() - 1, 0.0, &spec)?;
    with_fitted_tails(f, table.apply_right(f)?.values)
}

/// 10^{−k}, k = 1..⌈3.5/(1−α)⌉: the truncation error decays like ε^{1−α}, so
/// the sequence must reach further for α near 1.
pub fn default_fftc_eps(a: Alpha) -> Vec<f64> {
    let k = (3.5 / (1.0 - a.value())).ceil() as i32;
    (1..=k).map(|k| 10f64.powi(-k)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FftcReport {
    pub eps: Vec<f64>,
    /// max over the interior of |(D_right)_ε^α W_α f − f|.
    pub sup_errors: Vec<f64>,
    /// Same in the weighted p-norm, when a weight is given.
    pub weighted_errors: Option<Vec<f64>>,
    /// max |(D_right)_ε^α W_α f − f ∗ k̃_ε| over the interior.
    pub route_differences: Vec<f64>,
    /// Slope of log(error) against log(ε) over the first two radii.
    pub order: Option<f64>,
    pub monotone: bool,
    pub pass: bool,
}

pub const FFTC_ROUTE_TOL: f64 = 1e-6;
pub const FFTC_FINAL_TOL: f64 = 1e-3;

fn weighted_norm(values: &[f64], f: &GridFunction, ws: &WeightSample) -> Result<f64> {
    let p = ws.p;
    let mut s = 0.0;
    for i in f.interior(MARGIN) {
        s += (values[i].abs() * ws.eval(f.x(i))?).powf(p);
    }
    Ok((f.h() * s).powf(1.0 / p))
}

/// Checks the inversion formula lim_{ε→0} (D_right)_ε^α W_α f = f along
/// `eps` (decreasing), comparing the direct truncated derivative with the
/// kernel form f ∗ k̃_ε.
pub fn fftc_verify(f: &GridFunction, a: Alpha, eps: &[f64], ws: Option<&WeightSample>) -> Result<FftcReport> {
    if eps.is_empty() || eps.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(FracError::domain("eps sequence must be nonempty and strictly decreasing"));
    }
    let g = weyl(f, a)?;
    let scale = f.max_abs();
    let range = f.interior(MARGIN);
    let rows = eps
        .par_iter()
        .map(|&e| {
            let d = marchaud_right_eps(&g, a, e)?;
            let diff: Vec<f64> = d.values().iter().zip(f.values()).map(|(x, y)| x - y).collect();
            let sup = range.clone().map(|i| diff[i].abs()).fold(0.0, f64::max);
            let weighted = ws.map(|w| weighted_norm(&diff, f, w)).transpose()?;
            let k = ktilde_convolve(f, a, e)?;
            let route = range.clone().map(|i| (d.values()[i] - k.values()[i]).abs()).fold(0.0, f64::max);
            Ok((sup, weighted, route))
        })
        .collect::<Result<Vec<_>>>()?;
    let sup_errors: Vec<f64> = rows.iter().map(|r| r.0).collect();
    let weighted_errors = ws.map(|_| rows.iter().map(|r| r.1.unwrap_or(f64::NAN)).collect());
    let route_differences: Vec<f64> = rows.iter().map(|r| r.2).collect();
    let order = (sup_errors.len() >= 2 && sup_errors[0] > 0.0 && sup_errors[1] > 0.0)
        .then(|| (sup_errors[0] / sup_errors[1]).ln() / (eps[0] / eps[1]).ln());
    // nonincreasing up to a floor at the level of the quadrature error
    let floor = 1e-6 * scale.max(f64::MIN_POSITIVE);
    let monotone = sup_errors.windows(2).all(|w| w[1] <= w[0] + floor);
    let route_ok = route_differences.iter().all(|d| *d < FFTC_ROUTE_TOL * scale.max(1.0));
    let last = *sup_errors.last().expect("nonempty");
    let pass = monotone && route_ok && last < FFTC_FINAL_TOL * scale.max(1.0);
    Ok(FftcReport { eps: eps.to_vec(), sup_errors, weighted_errors, route_differences, order, monotone, pass })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RangeVerdict {
    InRange,
    NotInRange,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RangeReport {
    pub eps: Vec<f64>,
    /// ‖(D_right)_ε^α u‖ in L^p(w^p) per radius.
    pub sup_norms: Vec<f64>,
    /// ‖D_{ε_k} u − D_{ε_{k+1}} u‖ in the same norm.
    pub differences: Vec<f64>,
    pub cauchy: bool,
    /// d log‖D_ε u‖ / d log(1/ε) over the last two radii.
    pub growth: f64,
    pub verdict: RangeVerdict,
}

/// Successive differences must contract at least this fast to count as Cauchy.
const CAUCHY_RATIO: f64 = 0.95;
/// Growth rate of the norms above which they are taken to be unbounded.
const GROWTH_TOL: f64 = 0.05;

/// Radii 0.5·2^{−k} down to four grid cells (at least three radii).
pub fn default_range_eps(h: f64) -> Vec<f64> {
    let mut out = vec![0.5];
    while out.len() < 3 || out[out.len() - 1] / 2.0 >= 4.0 * h {
        let e = out[out.len() - 1] / 2.0;
        out.push(e);
    }
    out
}

/// Decides whether u lies in W_α(L^p(w^p)) by watching the weighted norms of
/// the truncated derivatives along `eps` (decreasing): bounded norms with
/// geometrically contracting differences mean InRange; norms growing like a
/// power of 1/ε mean NotInRange.
pub fn range_diagnostic(u: &GridFunction, a: Alpha, ws: &WeightSample, eps: &[f64]) -> Result<RangeReport> {
    if eps.len() < 3 || eps.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(FracError::domain("need at least three strictly decreasing radii"));
    }
    if u.values().iter().any(|v| !v.is_finite()) {
        return Err(FracError::domain("function has non-finite samples"));
    }
    let ds = eps.par_iter().map(|&e| marchaud_right_eps(u, a, e)).collect::<Result<Vec<_>>>()?;
    let sup_norms = ds.iter().map(|d| weighted_norm(d.values(), u, ws)).collect::<Result<Vec<_>>>()?;
    let differences = ds
        .windows(2)
        .map(|w| {
            let diff: Vec<f64> = w[0].values().iter().zip(w[1].values()).map(|(x, y)| x - y).collect();
            weighted_norm(&diff, u, ws)
        })
        .collect::<Result<Vec<_>>>()?;
    let l = sup_norms.len();
    if sup_norms.iter().all(|n| *n == 0.0) {
        return Ok(RangeReport { eps: eps.to_vec(), sup_norms, differences, cauchy: true, growth: 0.0, verdict: RangeVerdict::InRange });
    }
    let growth = (sup_norms[l - 1] / sup_norms[l - 2]).ln() / (eps[l - 2] / eps[l - 1]).ln();
    let m = differences.len();
    let contracting = |k: usize| differences[k] <= CAUCHY_RATIO * differences[k - 1];
    let cauchy = differences[m - 1] == 0.0 || (m >= 2 && contracting(m - 1) && (m < 3 || contracting(m - 2)));
    let verdict = if cauchy && growth <= GROWTH_TOL {
        RangeVerdict::InRange
    } else if !cauchy && growth > GROWTH_TOL {
        RangeVerdict::NotInRange
    } else {
        RangeVerdict::Inconclusive
    };
    Ok(RangeReport { eps: eps.to_vec(), sup_norms, differences, cauchy, growth, verdict })
}
