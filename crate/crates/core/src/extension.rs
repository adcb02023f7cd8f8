//! The extension problem: U(x,t) = P_t^α f(x) solves
//! U_x + ((1−2α)/t) U_t + U_tt = 0 on ℝ × (0,∞) with U(x,0) = f(x), and its
//! weighted Neumann trace −c_α lim t^{1−2α} U_t recovers (D_right)^α f.

use std::f64::consts::PI;
use std::fs;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{FracError, Result};
use crate::fracops::derivative_tail;
use crate::grid::{format_g17, sidecar_path, GridFunction, Kernel, KernelTable, QuadratureSpec};
use crate::special::{gamma, macdonald_k, Alpha};

/// Samples U(xs[i], ts[j]) stored row-wise: `u[j][i]`.
#[derive(Debug, Clone)]
pub struct ExtensionField {
    pub xs: Vec<f64>,
    pub ts: Vec<f64>,
    pub u: Vec<Vec<f64>>,
    pub alpha: Alpha,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldMeta {
    pub alpha: f64,
    pub nx: usize,
    pub nt: usize,
}

fn check_times(ts: &[f64]) -> Result<()> {
    if ts.is_empty() || !(ts[0] > 0.0) || ts.windows(2).any(|w| !(w[1] > w[0])) || ts.iter().any(|t| !t.is_finite()) {
        return Err(FracError::domain("times must be positive, finite and strictly increasing"));
    }
    Ok(())
}

impl ExtensionField {
    pub fn new(xs: Vec<f64>, ts: Vec<f64>, u: Vec<Vec<f64>>, alpha: Alpha) -> Result<Self> {
        check_times(&ts)?;
        if u.len() != ts.len() || u.iter().any(|row| row.len() != xs.len()) {
            return Err(FracError::domain("field shape does not match the abscissae and times"));
        }
        Ok(Self { xs, ts, u, alpha })
    }

    /// Tabulates a closed-form field.
    pub fn from_fn(xs: Vec<f64>, ts: Vec<f64>, alpha: Alpha, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        let u = ts.iter().map(|&t| xs.iter().map(|&x| f(x, t)).collect()).collect();
        Self::new(xs, ts, u, alpha)
    }

    pub fn max_abs(&self) -> f64 {
        self.u.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    /// Writes the long-format CSV `x,t,U` and a JSON sidecar {alpha, nx, nt}.
    pub fn write(&self, path: &Path) -> Result<()> {
        let mut out = String::from("x,t,U\n");
        for (j, t) in self.ts.iter().enumerate() {
            for (i, x) in self.xs.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", format_g17(*x), format_g17(*t), format_g17(self.u[j][i])));
            }
        }
        fs::write(path, out)?;
        let meta = FieldMeta { alpha: self.alpha.value(), nx: self.xs.len(), nt: self.ts.len() };
        fs::write(sidecar_path(path), serde_json::to_string_pretty(&meta)? + "\n")?;
        Ok(())
    }
}

/// The Poisson kernel in the translation variable,
/// k_t(s) = t^{2α} e^{−t²/(4s)} s^{−1−α} / (4^α Γ(α)), s > 0; it has unit mass.
pub fn poisson_kernel(t: f64, a: Alpha) -> Kernel {
    let al = a.value();
    let log_c = 2.0 * al * t.ln() - al * 4f64.ln() - a.gamma_pos().ln();
    Kernel::new(
        move |s: f64| if s > 0.0 { (log_c - t * t / (4.0 * s) - (1.0 + al) * s.ln()).exp() } else { 0.0 },
        vec![0.0],
    )
}

fn apply_kernel(f: &GridFunction, kernel: Kernel) -> Result<Vec<f64>> {
    let spec = QuadratureSpec::for_spacing(f.h());
    let table = KernelTable::build(kernel, f.h(), f.len() - 1, 0.0, &spec)?;
    Ok(table.apply_right(f)?.values)
}

/// P_t^α f at every node for a single t.
pub fn poisson_row(f: &GridFunction, a: Alpha, t: f64) -> Result<Vec<f64>> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(FracError::domain(format!("t must be positive, got {t}")));
    }
    apply_kernel(f, poisson_kernel(t, a))
}

/// The generalized Poisson integral
/// U(x,t) = Γ(α)^{−1} ∫₀^∞ e^{−r} f(x + t²/(4r)) r^{α−1} dr,
/// evaluated as ∫₀^∞ f(x+s) k_t(s) ds with s = t²/(4r), which turns it into
/// a one-sided convolution on the grid of `f`.
pub fn poisson(f: &GridFunction, a: Alpha, ts: &[f64]) -> Result<ExtensionField> {
    check_times(ts)?;
    let u = ts.par_iter().map(|&t| poisson_row(f, a, t)).collect::<Result<Vec<_>>>()?;
    ExtensionField::new(f.xs(), ts.to_vec(), u, a)
}

/// The field for f(x) = e^{−λx}:
/// e^{−λx} (2^{1−α}/Γ(α)) (t√λ)^α K_α(t√λ).
pub fn poisson_exponential_exact(lambda: f64, a: Alpha, x: f64, t: f64) -> Result<f64> {
    let al = a.value();
    let z = t * lambda.sqrt();
    Ok((-lambda * x).exp() * 2f64.powf(1.0 - al) / a.gamma_pos() * z.powf(al) * macdonald_k(al, z)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualReport {
    pub max_residual: f64,
    pub x: f64,
    pub t: f64,
}

/// max |U_x + ((1−2α)/t) U_t + U_tt| over interior stencil points, with a
/// forward difference in x (the one-sided derivative) and three-point
/// differences in t (exact for quadratics on uneven spacing).
pub fn pde_residual(field: &ExtensionField) -> Result<ResidualReport> {
    let (nx, nt) = (field.xs.len(), field.ts.len());
    if nx < 2 || nt < 3 {
        return Err(FracError::Precondition("need at least two abscissae and three times".into()));
    }
    let al = field.alpha.value();
    let mut worst = ResidualReport { max_residual: 0.0, x: field.xs[0], t: field.ts[1] };
    for j in 1..nt - 1 {
        let (t0, t1, t2) = (field.ts[j - 1], field.ts[j], field.ts[j + 1]);
        let (d0, d1) = (t1 - t0, t2 - t1);
        let (um, u0, up) = (&field.u[j - 1], &field.u[j], &field.u[j + 1]);
        for i in 0..nx - 1 {
            let ux = (u0[i + 1] - u0[i]) / (field.xs[i + 1] - field.xs[i]);
            let ut = (-d1 / (d0 * (d0 + d1))) * um[i] + ((d1 - d0) / (d0 * d1)) * u0[i] + (d0 / (d1 * (d0 + d1))) * up[i];
            let utt = 2.0 * (um[i] / (d0 * (d0 + d1)) - u0[i] / (d0 * d1) + up[i] / (d1 * (d0 + d1)));
            let r = (ux + (1.0 - 2.0 * al) / t1 * ut + utt).abs();
            if r > worst.max_residual {
                worst = ResidualReport { max_residual: r, x: field.xs[i], t: t1 };
            }
        }
    }
    Ok(worst)
}

/// c_α = 4^{α−1/2} Γ(α)/Γ(1−α).
pub fn c_alpha(a: Alpha) -> Result<f64> {
    let al = a.value();
    Ok(4f64.powf(al - 0.5) * a.gamma_pos() / gamma(1.0 - al)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceOptions {
    /// Largest t of the sequence t_k = t0·2^{−k}.
    pub t0: f64,
    pub halvings: usize,
    /// Allowed change between the last two extrapolated values, relative to
    /// max(1, max|f|).
    pub settle_tol: f64,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self { t0: 0.5, halvings: 8, settle_tol: 1e-4 }
    }
}

pub fn neumann_trace(f: &GridFunction, a: Alpha) -> Result<GridFunction> {
    neumann_trace_with(f, a, &TraceOptions::default())
}

/// −c_α lim_{t→0} t^{1−2α} U_t(x,t) at every node.
///
/// U_t is a central difference with step t/16, improved by one Richardson
/// step in the difference step. The values along t_k = t0·2^{−k} behave like
/// A + B t^{2−2α} + C t² + …, so those two powers are eliminated by
/// Richardson extrapolation in t.
pub fn neumann_trace_with(f: &GridFunction, a: Alpha, opts: &TraceOptions) -> Result<GridFunction> {
    if !(opts.t0 > 0.0) || opts.halvings < 2 {
        return Err(FracError::domain("trace needs t0 > 0 and at least two halvings"));
    }
    let al = a.value();
    let ca = c_alpha(a)?;
    let ts: Vec<f64> = (0..=opts.halvings).map(|k| opts.t0 * 0.5f64.powi(k as i32)).collect();
    let seq = ts
        .par_iter()
        .map(|&t| {
            let d = t / 16.0;
            let diff = |d: f64| -> Result<Vec<f64>> {
                let (p, m) = (poisson_row(f, a, t + d)?, poisson_row(f, a, t - d)?);
                Ok(p.iter().zip(&m).map(|(p, m)| (p - m) / (2.0 * d)).collect())
            };
            let (d1, d2) = (diff(d)?, diff(d / 2.0)?);
            let w = -ca * t.powf(1.0 - 2.0 * al);
            Ok(d1.iter().zip(&d2).map(|(a1, a2)| w * (4.0 * a2 - a1) / 3.0).collect::<Vec<f64>>())
        })
        .collect::<Result<Vec<_>>>()?;
    let mut levels = seq;
    for p in [2.0 - 2.0 * al, 2.0] {
        let r = 2f64.powf(p);
        levels = levels.windows(2).map(|w| w[1].iter().zip(&w[0]).map(|(fine, coarse)| (r * fine - coarse) / (r - 1.0)).collect()).collect();
    }
    let n = levels.len();
    let (last, prev) = (&levels[n - 1], &levels[n - 2]);
    let change = last.iter().zip(prev).fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    if change > opts.settle_tol * f.max_abs().max(1.0) {
        return Err(FracError::NonConvergence(format!(
            "Neumann trace extrapolation not settled: last change {change:.3e}"
        )));
    }
    f.with_values_and_tails(last.clone(), derivative_tail(f.tail(), a), crate::grid::TailModel::zero())
}

/// H(t,ξ) together with an accuracy note for strongly oscillatory arguments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplierValue {
    pub value: Complex64,
    pub warning: Option<&'static str>,
}

/// Beyond this |ξ|t² the multiplier is below ~e^{−700} and only its absolute
/// accuracy is meaningful.
const OSCILLATION_BUDGET: f64 = 1e6;

/// H(t,ξ) = Γ(α)^{−1} ∫₀^∞ e^{−r} e^{−iξt²/(4r)} r^{α−1} dr, so that the
/// transform of U(·,t) at −ξ is H(t,ξ) f̂(−ξ).
///
/// The contour is turned to arg r = sign(ξ)π/4, where both exponentials decay,
/// and r = e^y is substituted; the resulting integrand is analytic and decays
/// doubly exponentially, so the trapezoidal rule converges geometrically. The
/// step starts below the local oscillation period and is halved to
/// convergence.
pub fn multiplier_h(t: f64, xi: f64, a: Alpha) -> Result<MultiplierValue> {
    if !(t > 0.0) || !t.is_finite() || !xi.is_finite() {
        return Err(FracError::domain(format!("multiplier needs t > 0 and finite xi, got t = {t}, xi = {xi}")));
    }
    if xi == 0.0 {
        return Ok(MultiplierValue { value: Complex64::new(1.0, 0.0), warning: None });
    }
    let al = a.value();
    let q = xi.abs() * t * t / 4.0;
    let theta = xi.signum() * PI / 4.0;
    let rot = Complex64::from_polar(1.0, theta);
    let c = Complex64::new(0.0, -xi * t * t / 4.0) / rot;
    let log_g = |y: f64| -rot * y.exp() + c * (-y).exp() + al * y;
    // |integrand| = exp(−e^y cos θ − q sin|θ| e^{−y} + αy), peaked near e^y = √q
    let y_peak = 0.5 * q.ln();
    let peak = log_g(y_peak).re;
    let mut lo = y_peak;
    while log_g(lo).re > peak - 46.0 {
        lo -= 0.5;
    }
    let mut hi = y_peak;
    while log_g(hi).re > peak - 46.0 {
        hi += 0.5;
    }
    let trap = |dy: f64| -> Complex64 {
        let m = ((hi - lo) / dy).ceil() as usize;
        let step = (hi - lo) / m as f64;
        (0..=m).map(|k| log_g(lo + k as f64 * step).exp()).sum::<Complex64>() * step
    };
    let mut dy = (0.25f64).min(0.5 / (1.0 + q.sqrt()));
    let mut prev = trap(dy);
    let mut value = prev;
    for _ in 0..14 {
        dy /= 2.0;
        value = trap(dy);
        if (value - prev).norm() <= 1e-15 * peak.exp().max(value.norm()) {
            break;
        }
        prev = value;
    }
    let value = value * Complex64::from_polar(1.0, theta * al) / a.gamma_pos();
    let warning = (4.0 * q > OSCILLATION_BUDGET).then_some("|xi| t^2 beyond the oscillation budget: only absolute accuracy");
    Ok(MultiplierValue { value, warning })
}

/// The multiplier of f̂(ξ) itself: transform of U(·,t) at ξ equals
/// `poisson_symbol(t, ξ)`·f̂(ξ); it is H(t, −ξ).
pub fn poisson_symbol(t: f64, xi: f64, a: Alpha) -> Result<MultiplierValue> {
    multiplier_h(t, -xi, a)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SemigroupReport {
    /// max over dominant modes of |Û_k − P(t,ξ_k) f̂_k|, relative to max |f̂|.
    pub max_error: f64,
    /// Modes with |f̂_k| ≥ 10^{−3} max |f̂|.
    pub modes: usize,
}

/// Compares the discrete transform of U(·,t) with `poisson_symbol`·f̂ on the
/// modes that carry the signal. The field's slowly decaying tails are cut at
/// the grid ends, so f should have vanishing low moments for a sharp test.
pub fn semigroup_check(f: &GridFunction, a: Alpha, t: f64) -> Result<SemigroupReport> {
    let row = poisson_row(f, a, t)?;
    let n = f.len();
    let mut planner = rustfft::FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(n);
    let mut uf: Vec<Complex64> = f.values().iter().map(|v| Complex64::new(*v, 0.0)).collect();
    let mut ur: Vec<Complex64> = row.iter().map(|v| Complex64::new(*v, 0.0)).collect();
    fft.process(&mut uf);
    fft.process(&mut ur);
    let big = uf.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if big == 0.0 {
        let rest = ur.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        return Ok(SemigroupReport { max_error: rest, modes: 0 });
    }
    let span = n as f64 * f.h();
    let mut worst = 0.0f64;
    let mut modes = 0;
    for k in 0..n {
        if uf[k].norm() < 1e-3 * big {
            continue;
        }
        let kk = if k <= n / 2 { k as f64 } else { k as f64 - n as f64 };
        let xi = 2.0 * PI * kk / span;
        let p = poisson_symbol(t, xi, a)?.value;
        worst = worst.max((ur[k] - p * uf[k]).norm() / big);
        modes += 1;
    }
    Ok(SemigroupReport { max_error: worst, modes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fracops::marchaud_right;
    use crate::grid::{gaussian, one_sided_exp, zero, TailModel};

    fn alpha(v: f64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    #[test]
    fn kernel_has_unit_mass() {
        for al in [0.25, 0.5, 0.75] {
            for t in [0.01, 0.3, 2.0] {
                let f = crate::grid::constant(1.0, 0.0, 4.0, 0.05).unwrap();
                let row = poisson_row(&f, alpha(al), t).unwrap();
                assert!(row.iter().all(|v| (v - 1.0).abs() < 1e-12), "alpha {al} t {t}: {}", row[0]);
            }
        }
    }

    #[test]
    fn exponential_field_matches_bessel_form() {
        let ts = [0.05, 0.5, 1.0, 2.0];
        for (lambda, al) in [(1.0, 0.5), (2.0, 0.75), (0.5, 0.25)] {
            let a = alpha(al);
            let f = one_sided_exp(lambda, 30.0, 0.01).unwrap();
            let field = poisson(&f, a, &ts).unwrap();
            for (j, &t) in ts.iter().enumerate() {
                for i in [0, 100, 1000] {
                    let exact = poisson_exponential_exact(lambda, a, f.x(i), t).unwrap();
                    assert!((field.u[j][i] - exact).abs() < 1e-8, "lambda {lambda} alpha {al} t {t}: {} vs {exact}", field.u[j][i]);
                }
            }
        }
        // at α = 1/2 the field is e^{−x−t}
        let a = alpha(0.5);
        assert!((poisson_exponential_exact(1.0, a, 0.0, 1.0).unwrap() - (-1f64).exp()).abs() < 1e-12);
        assert!((poisson_exponential_exact(1.0, a, 1.0, 1.0).unwrap() - 0.135_335_283_2).abs() < 1e-10);
    }

    #[test]
    fn zero_data_give_zero_field() {
        let f = zero(-2.0, 2.0, 0.05).unwrap();
        let field = poisson(&f, alpha(0.5), &[0.1, 1.0]).unwrap();
        assert_eq!(field.max_abs(), 0.0);
        let r = pde_residual(&ExtensionField::from_fn(vec![0.0, 0.1, 0.2], vec![0.1, 0.2, 0.3], alpha(0.3), |_, _| 0.0).unwrap()).unwrap();
        assert_eq!(r.max_residual, 0.0);
    }

    #[test]
    fn times_must_increase() {
        let f = zero(-2.0, 2.0, 0.05).unwrap();
        assert!(poisson(&f, alpha(0.5), &[0.5, 0.5]).is_err());
        assert!(poisson(&f, alpha(0.5), &[0.0, 0.5]).is_err());
    }

    fn exact_residual(lambda: f64, al: f64, h: f64, dt: f64) -> f64 {
        let a = alpha(al);
        let xs: Vec<f64> = (0..=(1.0 / h).round() as usize).map(|i| i as f64 * h).collect();
        let ts: Vec<f64> = (0..=(1.0 / dt).round() as usize).map(|j| 0.5 + j as f64 * dt).collect();
        let field = ExtensionField::from_fn(xs, ts, a, |x, t| poisson_exponential_exact(lambda, a, x, t).unwrap()).unwrap();
        pde_residual(&field).unwrap().max_residual
    }

    #[test]
    fn residual_of_exact_fields() {
        let r = exact_residual(1.0, 0.5, 1e-3, 1e-3);
        assert!(r < 1e-3, "{r}");
        let (r1, r2) = (exact_residual(2.0, 0.75, 0.02, 0.02), exact_residual(2.0, 0.75, 0.01, 0.01));
        assert!(r1 / r2 >= 1.8, "{r1} / {r2}");
    }

    #[test]
    fn residual_of_computed_field_is_first_order() {
        let a = alpha(0.75);
        let res = |h: f64| {
            let f = one_sided_exp(2.0, 12.0, h).unwrap();
            let ts: Vec<f64> = (0..=10).map(|j| 0.5 + j as f64 * h).collect();
            pde_residual(&poisson(&f, a, &ts).unwrap()).unwrap().max_residual
        };
        let (r1, r2) = (res(0.02), res(0.01));
        assert!(r1 / r2 >= 1.8, "{r1} / {r2}");
    }

    #[test]
    fn contraction() {
        let f = gaussian(0.0, 1.0, 12.0, 0.05).unwrap();
        let field = poisson(&f, alpha(0.3), &[0.01, 0.1, 1.0, 5.0]).unwrap();
        assert!(field.max_abs() <= f.max_abs() + 1e-12);
    }

    #[test]
    fn boundary_values_recovered() {
        let f = gaussian(0.0, 1.0, 12.0, 0.05).unwrap();
        let row = poisson_row(&f, alpha(0.5), 1e-4).unwrap();
        let err = f.values().iter().zip(&row).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        assert!(err < 1e-3, "{err}");
    }

    #[test]
    fn trace_recovers_eigenvalue() {
        for al in [0.25, 0.5, 0.75] {
            let f = one_sided_exp(1.0, 30.0, 0.01).unwrap();
            let tr = neumann_trace(&f, alpha(al)).unwrap();
            assert!((tr.values()[0] - 1.0).abs() < 1e-3, "alpha {al}: {}", tr.values()[0]);
        }
    }

    #[test]
    fn trace_matches_marchaud_on_gaussian() {
        let f = gaussian(0.0, 1.0, 12.0, 0.02).unwrap();
        let a = alpha(0.5);
        let tr = neumann_trace(&f, a).unwrap();
        let m = marchaud_right(&f, a).unwrap();
        let err = f.interior(0.1).map(|i| (tr.values()[i] - m.values()[i]).abs()).fold(0.0, f64::max);
        assert!(err < 1e-3, "{err}");
    }

    #[test]
    fn trace_of_zero() {
        let f = GridFunction::new(0.0, 0.1, vec![0.0; 20], TailModel::zero()).unwrap();
        assert!(neumann_trace(&f, alpha(0.4)).unwrap().values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn multiplier_closed_form_at_half() {
        let a = alpha(0.5);
        let h = multiplier_h(1.0, 1.0, a).unwrap().value;
        // e^{−(i)^{1/2}} = e^{−(1+i)/√2}
        let expect = (-Complex64::from_polar(1.0, PI / 4.0)).exp();
        assert!((h - expect).norm() < 1e-13, "{h}");
        assert!((h.re - 0.374_852_808_6).abs() < 1e-10 && (h.im + 0.320_315_635_4).abs() < 1e-10);
        let s = poisson_symbol(1.0, 1.0, a).unwrap().value;
        assert!((s - h.conj()).norm() < 1e-13);
        for (t, xi) in [(0.3, 5.0), (2.0, -0.7), (1.5, 40.0)] {
            let z = t * Complex64::new(0.0, xi).sqrt();
            let v = multiplier_h(t, xi, a).unwrap().value;
            assert!((v - (-z).exp()).norm() < 1e-13, "t {t} xi {xi}");
        }
    }

    /// K_ν(z) = π (I_{−ν}(z) − I_ν(z)) / (2 sin νπ) from the power series of I.
    fn bessel_k_series(nu: f64, z: Complex64) -> Complex64 {
        let i_series = |mu: f64| {
            let mut term = (z / 2.0).powf(mu) / crate::special::gamma(mu + 1.0).unwrap();
            let mut sum = term;
            for k in 1..200 {
                term *= (z / 2.0).powi(2) / (k as f64 * (k as f64 + mu));
                sum += term;
            }
            sum
        };
        PI * (i_series(-nu) - i_series(nu)) / (2.0 * (nu * PI).sin())
    }

    #[test]
    fn multiplier_matches_bessel_series() {
        for (t, xi, al) in [(0.8, 1.3, 0.3), (1.5, -2.0, 0.7), (0.2, 30.0, 0.45), (2.0, 0.05, 0.9)] {
            let a = alpha(al);
            let z = t * Complex64::new(0.0, xi).sqrt();
            let expect = 2f64.powf(1.0 - al) / a.gamma_pos() * z.powf(al) * bessel_k_series(al, z);
            let v = multiplier_h(t, xi, a).unwrap().value;
            assert!((v - expect).norm() < 1e-12, "t {t} xi {xi} alpha {al}: {v} vs {expect}");
        }
        assert_eq!(multiplier_h(1.0, 0.0, alpha(0.3)).unwrap().value, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn multiplier_is_contractive() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let t = rng.gen_range(0.01..5.0);
            let xi = rng.gen_range(-50.0..50.0);
            let al = rng.gen_range(0.05..0.95);
            let v = multiplier_h(t, xi, alpha(al)).unwrap();
            assert!(v.value.norm() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn transform_of_field_is_symbol_times_transform() {
        // fourth derivative of a Gaussian: four vanishing moments keep the
        // field's cut-off tails below the tolerance
        let f = GridFunction::from_fn(-24.0, 0.05, 961, |x| (x.powi(4) - 6.0 * x * x + 3.0) * (-0.5 * x * x).exp(), TailModel::zero()).unwrap();
        for al in [0.25, 0.5, 0.75] {
            for t in [0.25, 1.0] {
                let r = semigroup_check(&f, alpha(al), t).unwrap();
                assert!(r.max_error < 1e-5 && r.modes > 10, "alpha {al} t {t}: {r:?}");
            }
        }
    }
}
