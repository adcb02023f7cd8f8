use crate::error::{FracError, Result};
use crate::grid::{GridFunction, TailModel};
use crate::special::Alpha;

/// Grünwald–Letnikov weights (−1)^k C(α, k), k = 0..len.
pub fn grunwald_weights(alpha: f64, len: usize) -> Vec<f64> {
    let mut w = Vec::with_capacity(len);
    let mut c = 1.0;
    for k in 0..len {
        if k > 0 {
            c *= (k as f64 - 1.0 - alpha) / k as f64;
        }
        w.push(c);
    }
    w
}

#[derive(Debug, Clone)]
pub struct DirichletSolution {
    /// Solution at the nodes a, a+h, …, b−h (zero tails: the exterior data
    /// live in `g`).
    pub u: GridFunction,
    /// Estimated size of the neglected part of the Grünwald sums.
    pub truncation_estimate: f64,
    pub warning: Option<String>,
}

const TRUNCATION_TOL: f64 = 1e-8;
const MAX_EXTRA_TERMS: usize = 2_000_000;

/// Solves h^{−α} Σ_{k≥0} (−1)^k C(α,k) u(x_i + kh) = f(x_i) on the nodes of
/// [a, b) with u = g on [b, ∞), where a = `f.x0()` and b = `g.x0()`.
///
/// The right-looking stencil makes the system upper triangular with unit
/// diagonal, so it is solved by back substitution from b. Exterior values come
/// from `g` and its tail model; the sum is cut where the terms vanish (zero or
/// exponential tails) or after a fixed budget, and the neglected part is
/// estimated.
pub fn dirichlet_solve(f: &GridFunction, g: &GridFunction, a_: Alpha, h: f64) -> Result<DirichletSolution> {
    let (a, b) = (f.x0(), g.x0());
    if !(h > 0.0) || !(b > a) {
        return Err(FracError::domain(format!("need h > 0 and a < b, got h = {h}, [{a}, {b})")));
    }
    let nf = (b - a) / h;
    let n = nf.round() as usize;
    if (nf - n as f64).abs() > 1e-6 {
        return Err(FracError::domain(format!("(b - a)/h = {nf} is not an integer")));
    }
    if n < GridFunction::MIN_LEN {
        return Err(FracError::domain("interval too short for the step"));
    }
    let alpha = a_.value();
    let on_grid = ((g.xmax() - b) / h + 1e-9).floor() as usize;
    let mut gvals: Vec<f64> = (0..=on_grid).map(|j| g.eval(b + j as f64 * h)).collect();
    let mut truncation = 0.0;
    if !g.tail().is_zero() {
        let scale = gvals.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
        let mut j = on_grid + 1;
        loop {
            let v = g.eval(b + j as f64 * h);
            gvals.push(v);
            if v.abs() < 1e-18 * scale {
                break;
            }
            if j - on_grid >= MAX_EXTRA_TERMS {
                // Σ_{k>K} |w_k| ≈ K^{−α} / (α |Γ(−α)|)
                let k = (n + j) as f64;
                truncation = v.abs() * k.powf(-alpha) / (alpha * a_.gamma_neg().abs());
                break;
            }
            j += 1;
        }
    }
    let w = grunwald_weights(alpha, n + gvals.len());
    let ha = h.powf(alpha);
    let mut u = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = 0.0;
        for (k, uk) in u[i + 1..].iter().enumerate() {
            s += w[k + 1] * uk;
        }
        for (j, gj) in gvals.iter().enumerate() {
            s += w[n - i + j] * gj;
        }
        u[i] = ha * f.eval(a + i as f64 * h) - s;
    }
    let warning = (truncation > TRUNCATION_TOL)
        .then(|| format!("exterior data truncated; neglected contribution about {truncation:.2e}"));
    Ok(DirichletSolution { u: GridFunction::new(a, h, u, TailModel::zero())?, truncation_estimate: truncation, warning })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::zero;

    #[test]
    fn weights_recurrence() {
        let w = grunwald_weights(0.5, 4);
        assert_eq!(w[0], 1.0);
        assert!((w[1] + 0.5).abs() < 1e-15);
        assert!((w[2] + 0.125).abs() < 1e-15);
        assert!((w[3] + 0.0625).abs() < 1e-15);
    }

    #[test]
    fn homogeneous_problem_has_zero_solution() {
        let f = zero(0.0, 1.0, 0.01).unwrap();
        let g = zero(1.0, 11.0, 0.01).unwrap();
        let s = dirichlet_solve(&f, &g, Alpha::new(0.5).unwrap(), 0.01).unwrap();
        assert!(s.u.values().iter().all(|v| *v == 0.0));
        assert!(s.warning.is_none());
    }

    #[test]
    fn eigenfunction_is_recovered_to_first_order() {
        let lambda: f64 = 1.0;
        let a = Alpha::new(0.5).unwrap();
        let err = |h: f64| {
            let f = GridFunction::from_fn(0.0, h, (1.0 / h).round() as usize + 1, |x| lambda.powf(0.5) * (-lambda * x).exp(), TailModel::exp(lambda)).unwrap();
            let g = GridFunction::from_fn(1.0, h, (10.0 / h).round() as usize + 1, |x| (-lambda * x).exp(), TailModel::exp(lambda)).unwrap();
            let s = dirichlet_solve(&f, &g, a, h).unwrap();
            (0..s.u.len()).map(|i| (s.u.values()[i] - (-lambda * s.u.x(i)).exp()).abs()).fold(0.0, f64::max)
        };
        let (e1, e2) = (err(0.02), err(0.01));
        assert!(e1 < 0.05);
        let ratio = e1 / e2;
        assert!((1.7..=2.3).contains(&ratio), "ratio {ratio}");
    }
}
