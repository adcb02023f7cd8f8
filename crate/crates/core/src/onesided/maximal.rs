//! One-sided Hardy–Littlewood maximal functions on a grid.

use rayon::prelude::*;

use crate::error::{FracError, Result};
use crate::fracops::with_fitted_tails;
use crate::grid::{GaussLegendre, GridFunction, TailKind, TailModel};
use crate::special::Alpha;

/// Doublings of the window beyond the last node (h·2^k past the grid end).
const TAIL_WINDOWS: usize = 90;

/// Cumulative trapezoid sums C_j = ∫_{x_0}^{x_j} g of node values.
pub(crate) fn cumulative(values: &[f64], h: f64) -> Vec<f64> {
    let mut c = Vec::with_capacity(values.len());
    let mut s = 0.0;
    c.push(0.0);
    for w in values.windows(2) {
        s += 0.5 * h * (w[0] + w[1]);
        c.push(s);
    }
    c
}

/// (X_k, ∫_{xmax}^{X_k} |tail|) for X_k = xmax + h·2^k.
fn tail_masses(tail: &TailModel, xmax: f64, h: f64) -> Vec<(f64, f64)> {
    if tail.is_zero() {
        return Vec::new();
    }
    let gl = GaussLegendre::new(20);
    let g = |x: f64| tail.eval(x).abs();
    let mut out = Vec::with_capacity(TAIL_WINDOWS);
    let (mut lo, mut mass) = (xmax, 0.0);
    for k in 0..TAIL_WINDOWS {
        let hi = xmax + h * 2f64.powi(k as i32);
        mass += gl.integrate(&g, lo, hi);
        out.push((hi, mass));
        lo = hi;
    }
    out
}

/// sup over windows [x_i, X] of weight(X − x_i)·∫_{x_i}^X |f|, X running over
/// the later nodes and the tail checkpoints.
fn sup_windows(f: &GridFunction, weight: impl Fn(f64) -> f64 + Sync, include_point: bool) -> Vec<f64> {
    let h = f.h();
    let abs: Vec<f64> = f.values().iter().map(|v| v.abs()).collect();
    let c = cumulative(&abs, h);
    let n = f.len();
    let tail = tail_masses(f.tail(), f.xmax(), h);
    (0..n)
        .into_par_iter()
        .map(|i| {
            // h → 0 recovers |f(x_i)| for the continuous interpolant
            let mut best = if include_point { abs[i] } else { 0.0f64 };
            for j in i + 1..n {
                best = best.max(weight((j - i) as f64 * h) * (c[j] - c[i]));
            }
            let grid_mass = c[n - 1] - c[i];
            for &(x, m) in &tail {
                best = best.max(weight(x - f.x(i)) * (grid_mass + m));
            }
            best
        })
        .collect()
}

/// M⁺f(x) = sup_{h>0} h^{−1} ∫_x^{x+h} |f| at every node. Windows end at the
/// later grid nodes or at geometrically spaced points in the right tail;
/// integrals over the grid use the trapezoid rule on |f|.
pub fn maximal_plus(f: &GridFunction) -> Result<GridFunction> {
    let values = sup_windows(f, |len| 1.0 / len, true);
    with_fitted_tails(f, values)
}

/// M⁻f(x) = sup_{h>0} h^{−1} ∫_{x−h}^x |f|.
pub fn maximal_minus(f: &GridFunction) -> Result<GridFunction> {
    Ok(maximal_plus(&f.reflect())?.reflect())
}

/// Fractional version M_α⁺f(x) = sup_{h>0} h^{α−1} ∫_x^{x+h} |f|.
///
/// The supremum is infinite when the right tail decays no faster than
/// |x|^{−α}; that case is reported as a divergence.
pub fn maximal_plus_frac(f: &GridFunction, a: Alpha) -> Result<GridFunction> {
    let al = a.value();
    if let TailKind::PowerDecay { exponent, coefficient, .. } = f.tail().kind {
        if exponent < al && coefficient != 0.0 {
            return Err(FracError::Divergence(format!(
                "tail decays like |x|^-{exponent}, slower than |x|^-{al}: M_alpha^+ is infinite"
            )));
        }
    }
    let values = sup_windows(f, |len| len.powf(al - 1.0), false);
    with_fitted_tails(f, values)
}
