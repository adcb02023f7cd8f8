//! Gamma function, Riemann zeta, Macdonald function and the fractional-order
//! constants used throughout the crate.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{FracError, Result};

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Largest argument for which Γ(x) is representable as an `f64`.
const GAMMA_MAX_ARG: f64 = 171.624_376_956_302_7;

fn lanczos(x: f64) -> f64 {
    // valid for x >= 1
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Γ(x) for real `x` away from the poles.
///
/// Arguments below one are brought into `[1, 2)` with the recurrence
/// Γ(x) = Γ(x+1)/x, so Γ(−α) for α ∈ (0,1) costs one division.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(FracError::domain(format!("gamma of non-finite argument {x}")));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(FracError::Pole(x));
    }
    if x > GAMMA_MAX_ARG {
        return Err(FracError::Overflow(format!("gamma({x})")));
    }
    if x >= 1.0 {
        return Ok(lanczos(x));
    }
    if x < -GAMMA_MAX_ARG {
        return Err(FracError::Overflow(format!("gamma({x}) underflows")));
    }
    let shift = (1.0 - x).ceil();
    let mut denom = 1.0;
    let mut y = x;
    for _ in 0..shift as usize {
        denom *= y;
        y += 1.0;
    }
    Ok(lanczos(y) / denom)
}

/// Beta function B(a, b) = Γ(a)Γ(b)/Γ(a+b).
pub fn beta(a: f64, b: f64) -> Result<f64> {
    Ok(gamma(a)? * gamma(b)? / gamma(a + b)?)
}

/// Dirichlet eta function for s > 0 by Borwein's accelerated alternating series.
fn dirichlet_eta(s: f64) -> f64 {
    const N: usize = 30;
    let n = N as f64;
    let mut d = [0.0f64; N + 1];
    let mut term = 1.0;
    let mut acc = 1.0;
    d[0] = acc;
    for i in 1..=N {
        let fi = i as f64;
        term *= 4.0 * (n + fi - 1.0) * (n - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += term;
        d[i] = acc;
    }
    let dn = d[N];
    let mut sum = 0.0;
    for k in 0..N {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (d[k] - dn) / ((k + 1) as f64).powf(s);
    }
    -sum / dn
}

/// Riemann zeta function for real `s != 1`.
///
/// Positive arguments go through the eta function; negative ones through the
/// functional equation ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s).
pub fn zeta(s: f64) -> Result<f64> {
    if !s.is_finite() || s == 1.0 {
        return Err(FracError::domain(format!("zeta at s = {s}")));
    }
    if s >= 0.0 {
        return Ok(dirichlet_eta(s) / (1.0 - 2f64.powf(1.0 - s)));
    }
    let reflected = dirichlet_eta(1.0 - s) / (1.0 - 2f64.powf(s));
    Ok(2f64.powf(s) * PI.powf(s - 1.0) * (PI * s / 2.0).sin() * gamma(1.0 - s)? * reflected)
}

/// Macdonald function K_ν(z) for real z > 0 from the cosh representation
/// K_ν(z) = ∫₀^∞ e^{−z cosh θ} cosh(νθ) dθ.
///
/// The integrand is even and entire in θ and decays doubly exponentially, so
/// the trapezoidal rule converges geometrically; the range is cut where
/// e^{−z(cosh θ − 1)} cosh(νθ) drops below 1e−18.
pub fn macdonald_k(nu: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(FracError::domain(format!("macdonald_k requires z > 0, got {z}")));
    }
    if nu.abs() > 1.0 {
        return Err(FracError::domain(format!("macdonald_k requires |nu| <= 1, got {nu}")));
    }
    let step = 0.02 / z.sqrt().max(1.0);
    // e^{-z} factored out to keep large-z values representable relative to the sum
    let integrand = |theta: f64| (-z * (theta.cosh() - 1.0)).exp() * (nu * theta).cosh();
    let mut sum = 0.5 * integrand(0.0);
    let mut k = 1usize;
    loop {
        let v = integrand(k as f64 * step);
        sum += v;
        if v < 1e-18 * sum {
            break;
        }
        k += 1;
        if k > 1_000_000 {
            return Err(FracError::NonConvergence("macdonald_k truncation".into()));
        }
    }
    Ok(sum * step * (-z).exp())
}

/// Macdonald function through the subordination integral
/// K_ν(z) = ½ (z/2)^ν ∫₀^∞ e^{−r − z²/(4r)} r^{−1−ν} dr,
/// evaluated with the substitution r = e^y and the trapezoidal rule.
///
/// This is an independent route to [`macdonald_k`] and is used to cross-check it.
pub fn macdonald_k_subordination(nu: f64, z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(FracError::domain(format!("macdonald_k requires z > 0, got {z}")));
    }
    let log_integrand = |y: f64| -y.exp() - z * z / 4.0 * (-y).exp() - nu * y;
    // the integrand in y peaks near r = z/2 (where e^y ≈ balance of the two exponentials)
    let y_peak = (0.5 * (-nu + (nu * nu + z * z).sqrt())).max(1e-300).ln();
    let log_peak = log_integrand(y_peak);
    let step = 0.01;
    let mut sum = log_integrand(y_peak).exp();
    for dir in [1.0, -1.0] {
        let mut k = 1usize;
        loop {
            let y = y_peak + dir * k as f64 * step;
            let lv = log_integrand(y);
            sum += lv.exp();
            if lv < log_peak - 60.0 {
                break;
            }
            k += 1;
            if k > 10_000_000 {
                return Err(FracError::NonConvergence("macdonald_k_subordination".into()));
            }
        }
    }
    Ok(0.5 * (z / 2.0).powf(nu) * sum * step)
}

/// A fractional order α ∈ (0,1) together with the constants derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Alpha {
    alpha: f64,
    gamma_pos: f64,
    gamma_neg: f64,
    c_alpha: f64,
}

impl Alpha {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(FracError::domain(format!("alpha must lie in (0,1), got {alpha}")));
        }
        let gamma_pos = gamma(alpha)?;
        let gamma_neg = gamma(-alpha)?;
        let c_alpha = 4f64.powf(alpha - 0.5) * gamma_pos / gamma(1.0 - alpha)?;
        Ok(Self { alpha, gamma_pos, gamma_neg, c_alpha })
    }

    pub fn value(&self) -> f64 {
        self.alpha
    }

    /// Γ(α)
    pub fn gamma_pos(&self) -> f64 {
        self.gamma_pos
    }

    /// Γ(−α), negative for α ∈ (0,1).
    pub fn gamma_neg(&self) -> f64 {
        self.gamma_neg
    }

    /// Normalisation of the weighted Neumann trace, 4^{α−1/2} Γ(α)/Γ(1−α).
    pub fn c_alpha(&self) -> f64 {
        self.c_alpha
    }

    /// sin(πα/2), the recurring factor of the two-sided operators.
    pub fn half_sin(&self) -> f64 {
        (PI * self.alpha / 2.0).sin()
    }

    pub fn half_cos(&self) -> f64 {
        (PI * self.alpha / 2.0).cos()
    }
}

impl TryFrom<f64> for Alpha {
    type Error = FracError;
    fn try_from(v: f64) -> Result<Self> {
        Alpha::new(v)
    }
}

impl From<Alpha> for f64 {
    fn from(a: Alpha) -> f64 {
        a.alpha
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_known_values() {
        assert!(rel(gamma(1.0).unwrap(), 1.0) < 1e-14);
        assert!(rel(gamma(0.5).unwrap(), PI.sqrt()) < 1e-13);
        assert!(rel(gamma(-0.5).unwrap(), -2.0 * PI.sqrt()) < 1e-13);
        assert!(rel(gamma(5.0).unwrap(), 24.0) < 1e-13);
        assert!(rel(gamma(-1.5).unwrap(), 4.0 * PI.sqrt() / 3.0) < 1e-13);
    }

    #[test]
    fn gamma_poles_and_overflow() {
        assert!(matches!(gamma(0.0), Err(FracError::Pole(_))));
        assert!(matches!(gamma(-3.0), Err(FracError::Pole(_))));
        assert!(matches!(gamma(200.0), Err(FracError::Overflow(_))));
        assert!(gamma(f64::NAN).is_err());
    }

    #[test]
    fn reflection_and_duplication() {
        for i in 1..100 {
            let a = i as f64 / 100.0;
            let lhs = gamma(1.0 - a).unwrap() * gamma(a).unwrap();
            assert!(rel(lhs, PI / (PI * a).sin()) < 1e-12, "reflection at {a}");
            let dup = gamma(a / 2.0).unwrap() * gamma(a / 2.0 + 0.5).unwrap()
                / (2f64.powf(1.0 - a) * PI.sqrt());
            assert!(rel(dup, gamma(a).unwrap()) < 1e-12, "duplication at {a}");
        }
    }

    #[test]
    fn gamma_negative_alpha_identity() {
        for i in 1..19 {
            let a = 0.05 * i as f64;
            let v = gamma(-a).unwrap() * gamma(1.0 + a).unwrap() * (PI * a).sin() / PI;
            assert!((v + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zeta_values() {
        assert!((zeta(0.0).unwrap() + 0.5).abs() < 1e-14);
        assert!((zeta(-1.0).unwrap() + 1.0 / 12.0).abs() < 1e-14);
        assert!((zeta(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-13);
        assert!((zeta(0.5).unwrap() + 1.460_354_508_809_586_8).abs() < 1e-12);
        assert!(zeta(-2.0).unwrap().abs() < 1e-14);
        assert!((zeta(-3.0).unwrap() - 1.0 / 120.0).abs() < 1e-14);
        assert!(zeta(1.0).is_err());
    }

    #[test]
    fn macdonald_half_order_closed_form() {
        let closed = (PI / 2.0).sqrt() * (-1.0f64).exp();
        assert!(rel(macdonald_k(0.5, 1.0).unwrap(), closed) < 1e-12);
        assert!(rel(macdonald_k(-0.5, 1.0).unwrap(), closed) < 1e-12);
        assert!((macdonald_k(0.5, 1.0).unwrap() - 0.461_068_504_447_894_6).abs() < 1e-12);
        for z in [0.1, 0.7, 3.0, 10.0] {
            let closed = (PI / (2.0 * z)).sqrt() * (-z).exp();
            assert!(rel(macdonald_k(0.5, z).unwrap(), closed) < 1e-11);
            assert!(rel(macdonald_k_subordination(0.5, z).unwrap(), closed) < 1e-11);
        }
    }

    #[test]
    fn macdonald_routes_agree_at_sample_point() {
        let a = macdonald_k(0.3, 2.0).unwrap();
        let b = macdonald_k_subordination(0.3, 2.0).unwrap();
        assert!(rel(a, b) < 1e-10);
        assert!(macdonald_k(0.3, 0.0).is_err());
        assert!(macdonald_k(0.3, -1.0).is_err());
    }

    #[test]
    fn alpha_constants() {
        let a = Alpha::new(0.5).unwrap();
        assert!(rel(a.gamma_pos(), PI.sqrt()) < 1e-13);
        assert!(a.gamma_neg() < 0.0);
        // c_{1/2} = Γ(1/2)/Γ(1/2) = 1
        assert!(rel(a.c_alpha(), 1.0) < 1e-13);
        assert!(Alpha::new(0.0).is_err());
        assert!(Alpha::new(1.0).is_err());
        assert!(Alpha::new(f64::NAN).is_err());
    }
}
