//! Sampled test functions with exact tail models.

use super::{GridFunction, TailModel};
use crate::error::{FracError, Result};

fn nodes(a: f64, b: f64, h: f64) -> Result<usize> {
    if !(h > 0.0) || !(b > a) {
        return Err(FracError::domain(format!("invalid interval [{a}, {b}] with h = {h}")));
    }
    Ok(((b - a) / h).round() as usize + 1)
}

/// exp(−(x−c)²/(2w²)) on [c − half_span, c + half_span]; zero tails, which
/// requires the grid to reach 12 widths on each side.
pub fn gaussian(center: f64, width: f64, half_span: f64, h: f64) -> Result<GridFunction> {
    if !(width > 0.0) {
        return Err(FracError::domain(format!("gaussian width must be positive, got {width}")));
    }
    if half_span < 12.0 * width {
        return Err(FracError::domain(format!(
            "gaussian grid must extend 12 widths from the center (half span {half_span} < {})",
            12.0 * width
        )));
    }
    let x0 = center - half_span;
    let n = nodes(x0, center + half_span, h)?;
    GridFunction::from_fn(x0, h, n, |x| (-(x - center).powi(2) / (2.0 * width * width)).exp(), TailModel::zero())
}

/// e^{−λx} for x ≥ 0 and 0 for x < 0, sampled on [0, xmax].
pub fn one_sided_exp(lambda: f64, xmax: f64, h: f64) -> Result<GridFunction> {
    if !(lambda > 0.0) {
        return Err(FracError::domain(format!("decay rate must be positive, got {lambda}")));
    }
    let n = nodes(0.0, xmax, h)?;
    GridFunction::from_fn(0.0, h, n, |x| (-lambda * x).exp(), TailModel::exp(lambda))
}

/// exp(1 − 1/(1 − r²)) with r = |x − c|/w, a C^∞ bump of peak 1 supported in
/// (c − w, c + w), sampled on [c − half_span, c + half_span].
pub fn bump(center: f64, width: f64, half_span: f64, h: f64) -> Result<GridFunction> {
    if !(width > 0.0) {
        return Err(FracError::domain(format!("bump width must be positive, got {width}")));
    }
    let x0 = center - half_span;
    let n = nodes(x0, center + half_span, h)?;
    GridFunction::from_fn(
        x0,
        h,
        n,
        |x| {
            let r = (x - center) / width;
            if r.abs() < 1.0 { (1.0 - 1.0 / (1.0 - r * r)).exp() } else { 0.0 }
        },
        TailModel::zero(),
    )
}

/// 1/(1 + (x − x0)²) on [x0 − half_span, x0 + half_span] with |x − x0|^{−2} tails.
pub fn shifted_square_decay(x0: f64, half_span: f64, h: f64) -> Result<GridFunction> {
    if !(half_span > 0.0) {
        return Err(FracError::domain("half span must be positive"));
    }
    let a = x0 - half_span;
    let n = nodes(a, x0 + half_span, h)?;
    GridFunction::from_fn(a, h, n, |x| 1.0 / (1.0 + (x - x0).powi(2)), TailModel::power(2.0, x0))?
        .with_left_tail(TailModel::power(2.0, -x0))
}

/// The constant `c` on all of ℝ (sampled on [a, b]).
pub fn constant(c: f64, a: f64, b: f64, h: f64) -> Result<GridFunction> {
    let n = nodes(a, b, h)?;
    GridFunction::new(a, h, vec![c; n], TailModel::constant())?.with_left_tail(TailModel::constant())
}

/// Identically zero on [a, b] and beyond.
pub fn zero(a: f64, b: f64, h: f64) -> Result<GridFunction> {
    let n = nodes(a, b, h)?;
    GridFunction::new(a, h, vec![0.0; n], TailModel::zero())
}

/// Indicator of [lo, hi] sampled on [a, b]; nodes falling on a jump take the
/// midpoint value 1/2.
pub fn indicator(lo: f64, hi: f64, a: f64, b: f64, h: f64) -> Result<GridFunction> {
    let n = nodes(a, b, h)?;
    let tol = 1e-9 * h;
    GridFunction::from_fn(
        a,
        h,
        n,
        |x| {
            if (x - lo).abs() <= tol || (x - hi).abs() <= tol {
                0.5
            } else if x > lo && x < hi {
                1.0
            } else {
                0.0
            }
        },
        TailModel::zero(),
    )
}
