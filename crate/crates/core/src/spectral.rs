//! Fourier-multiplier evaluation of the operators, used as an independent
//! cross-check of the quadrature implementations.
//!
//! Convention: û(ξ) = ∫ u(x) e^{−ixξ} dx. Every symbol has the form
//! |ξ|^s · φ_± on ξ ≷ 0, which is what [`Symbol`] stores.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{FracError, Result};
use crate::fracops::{h_alpha_direct, h_minus_alpha_direct, two_sided, with_fitted_tails, OperatorKind};
use crate::grid::GridFunction;
use crate::special::{zeta, Alpha};

/// ξ ↦ |ξ|^exponent · (plus if ξ > 0, minus if ξ < 0); the value at 0 is
/// taken to be 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Symbol {
    pub exponent: f64,
    pub plus: Complex64,
    pub minus: Complex64,
}

impl Symbol {
    pub fn new(exponent: f64, plus: Complex64, minus: Complex64) -> Self {
        Self { exponent, plus, minus }
    }

    /// The classical Hilbert transform, i·sign(ξ).
    pub fn hilbert() -> Self {
        Self::new(0.0, Complex64::i(), -Complex64::i())
    }

    /// |ξ|^s.
    pub fn modulus(s: f64) -> Self {
        Self::new(s, Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0))
    }

    pub fn eval(&self, xi: f64) -> Complex64 {
        if xi > 0.0 {
            self.plus * xi.powf(self.exponent)
        } else if xi < 0.0 {
            self.minus * (-xi).powf(self.exponent)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    /// Symbol of the composition (product of multipliers).
    pub fn compose(&self, other: &Symbol) -> Symbol {
        Symbol::new(self.exponent + other.exponent, self.plus * other.plus, self.minus * other.minus)
    }

    /// a·self + b·other; both must share the exponent.
    pub fn lin_comb(&self, a: f64, other: &Symbol, b: f64) -> Result<Symbol> {
        if (self.exponent - other.exponent).abs() > 1e-15 {
            return Err(FracError::domain("cannot add symbols of different homogeneity"));
        }
        Ok(Symbol::new(self.exponent, a * self.plus + b * other.plus, a * self.minus + b * other.minus))
    }
}

/// Symbols of the nine operators at a fixed α. Powers of ±iξ use the
/// principal branch, (∓i)^α = e^{∓iπα/2}.
#[derive(Debug, Clone, Copy)]
pub struct SymbolTable {
    alpha: Alpha,
}

impl SymbolTable {
    pub fn new(alpha: Alpha) -> Self {
        Self { alpha }
    }

    pub fn symbol(&self, kind: OperatorKind) -> Symbol {
        let al = self.alpha.value();
        let rot = |sign: f64| Complex64::from_polar(1.0, sign * PI * al / 2.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::i();
        use OperatorKind::*;
        match kind {
            // (−iξ)^α: −iξ = |ξ|e^{∓iπ/2} for ξ ≷ 0
            RightDerivative => Symbol::new(al, rot(-1.0), rot(1.0)),
            LeftDerivative => Symbol::new(al, rot(1.0), rot(-1.0)),
            WeylIntegral => Symbol::new(-al, rot(1.0), rot(-1.0)),
            RiemannLiouvilleIntegral => Symbol::new(-al, rot(-1.0), rot(1.0)),
            KAlphaH => Symbol::modulus(-al),
            KAlpha => {
                let c = 1.0 / (PI * al / 2.0).tan();
                Symbol::new(-al, c * one, c * one)
            }
            HAlpha => Symbol::new(-al, i, -i),
            KMinusAlpha => Symbol::modulus(al),
            HMinusAlpha => Symbol::new(al, i, -i),
        }
    }

    pub fn eval(&self, kind: OperatorKind, xi: f64) -> Complex64 {
        self.symbol(kind).eval(xi)
    }
}

/// Multiplier output on the input grid plus any accuracy warnings.
#[derive(Debug, Clone)]
pub struct SpectralOutput {
    pub f: GridFunction,
    pub warnings: Vec<String>,
}

/// Zero-padding factor of the transform.
const PADDING: usize = 8;
/// Terms kept in the small-frequency expansion.
const ZETA_TERMS: usize = 24;

pub fn apply_symbol(kind: OperatorKind, f: &GridFunction, a: Alpha) -> Result<SpectralOutput> {
    apply_multiplier(&SymbolTable::new(a).symbol(kind), f)
}

/// (2π)^{−1} ∫ m(ξ) f̂(ξ) e^{ixξ} dξ at the nodes of `f`.
///
/// f̂ is sampled by an FFT of the zero-padded data, so the inverse transform is
/// a trapezoidal sum in ξ with the ξ = 0 term left out. Because m is only
/// |ξ|^s-regular at the origin, that sum alone converges slowly; the
/// generalized Euler–Maclaurin expansion
///   Δ Σ_{k≥1} (kΔ)^s G(kΔ) = ∫_0^∞ t^s G(t) dt + Σ_j ζ(−s−j) G^{(j)}(0) Δ^{s+j+1}/j!
/// with G(ξ) = f̂(±ξ) e^{±ixξ} supplies the missing terms, the derivatives
/// G^{(j)}(0) coming from the moments of f.
pub fn apply_multiplier(m: &Symbol, f: &GridFunction) -> Result<SpectralOutput> {
    let n = f.len();
    let v = f.values();
    let scale = f.max_abs();
    if v[0].abs() > 1e-12 * scale || v[n - 1].abs() > 1e-12 * scale {
        return Err(FracError::Precondition(
            "spectral evaluation needs data that vanish at both ends of the grid".into(),
        ));
    }
    if scale == 0.0 {
        return Ok(SpectralOutput { f: f.with_values_and_tails(vec![0.0; n], f.tail().clone(), f.left_tail().clone())?, warnings: vec![] });
    }
    let len = (PADDING * n).next_power_of_two().max(64);
    let h = f.h();
    let dxi = 2.0 * PI / (len as f64 * h);
    let mut planner = FftPlanner::<f64>::new();
    let mut buf: Vec<Complex64> = (0..len).map(|j| Complex64::new(if j < n { v[j] } else { 0.0 }, 0.0)).collect();
    planner.plan_fft_forward(len).process(&mut buf);

    let mut warnings = Vec::new();
    let total: f64 = buf.iter().map(|c| c.norm_sqr()).sum();
    let cut = (0.9 * (len / 2) as f64) as usize;
    let high: f64 = buf.iter().enumerate().filter(|(k, _)| (*k).min(len - *k) > cut).map(|(_, c)| c.norm_sqr()).sum();
    if high > 1e-8 * total {
        warnings.push(format!("aliasing: {:.2e} of the spectral energy lies above 0.9 Nyquist", high / total));
    }

    buf[0] = Complex64::new(0.0, 0.0);
    buf[len / 2] = Complex64::new(0.0, 0.0);
    for (k, c) in buf.iter_mut().enumerate().skip(1) {
        let xi = if k < len / 2 { k as f64 * dxi } else { -((len - k) as f64) * dxi };
        *c *= m.eval(xi);
    }
    planner.plan_fft_inverse(len).process(&mut buf);

    // moments about the grid center
    let c0 = 0.5 * (f.x0() + f.xmax());
    let mut moments = vec![0.0; ZETA_TERMS];
    for i in 0..n {
        let y = f.x(i) - c0;
        let mut p = h * v[i];
        for mo in moments.iter_mut() {
            *mo += p;
            p *= y;
        }
    }
    let coef: Vec<Complex64> = (0..ZETA_TERMS)
        .map(|j| {
            let z = zeta(-m.exponent - j as f64)?;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            let fact: f64 = (1..=j).map(|q| q as f64).product();
            Ok((m.plus + sign * m.minus) * (z * dxi.powf(m.exponent + j as f64 + 1.0) / fact))
        })
        .collect::<Result<_>>()?;
    let binom = binomials(ZETA_TERMS);

    let values = (0..n)
        .map(|i| {
            let xc = f.x(i) - c0;
            let mut corr = Complex64::new(0.0, 0.0);
            let mut ij = Complex64::new(1.0, 0.0);
            for j in 0..ZETA_TERMS {
                // G^{(j)}(0) = i^j ∫ f(y)(x − y)^j dy
                let mut d = 0.0;
                let mut xp = 1.0;
                for l in (0..=j).rev() {
                    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                    d += binom[j][l] * xp * sign * moments[l];
                    xp *= xc;
                }
                corr += coef[j] * ij * d;
                ij *= Complex64::i();
            }
            buf[i].re / len as f64 - corr.re / (2.0 * PI)
        })
        .collect();
    Ok(SpectralOutput { f: with_fitted_tails(f, values)?, warnings })
}

fn binomials(n: usize) -> Vec<Vec<f64>> {
    let mut b = vec![vec![1.0]];
    for j in 1..n {
        let prev = &b[j - 1];
        let mut row = vec![1.0; j + 1];
        for l in 1..j {
            row[l] = prev[l - 1] + prev[l];
        }
        b.push(row);
    }
    b
}

/// The identities relating integral forms and multipliers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Identity {
    /// k_α^H = (−Δ)^{−α/2}
    #[serde(rename = "Prop1_i")]
    Prop1I,
    /// k_α = cot(πα/2)(−Δ)^{−α/2}
    #[serde(rename = "Prop1_ii")]
    Prop1Ii,
    /// H_α = (W_α − R_α)/(2 sin(πα/2))
    #[serde(rename = "Prop1_iii")]
    Prop1Iii,
    /// H_α = (−Δ)^{−α/2} H
    #[serde(rename = "Prop1_iv")]
    Prop1Iv,
    /// k_{−α} = (−Δ)^{α/2}
    #[serde(rename = "Prop2_i")]
    Prop2I,
    /// H_{−α} = −((D_right)^α − (D_left)^α)/(2 sin(πα/2))
    #[serde(rename = "Prop2_ii")]
    Prop2Ii,
    /// H_{−α} = H (−Δ)^{α/2}
    #[serde(rename = "Prop2_iii")]
    Prop2Iii,
    /// k_{−α} k_α^H = Id
    CompositionKK,
    /// H_α H_{−α} = −Id
    CompositionHH,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::Prop1I,
        Identity::Prop1Ii,
        Identity::Prop1Iii,
        Identity::Prop1Iv,
        Identity::Prop2I,
        Identity::Prop2Ii,
        Identity::Prop2Iii,
        Identity::CompositionKK,
        Identity::CompositionHH,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Prop1I => "Prop1_i",
            Identity::Prop1Ii => "Prop1_ii",
            Identity::Prop1Iii => "Prop1_iii",
            Identity::Prop1Iv => "Prop1_iv",
            Identity::Prop2I => "Prop2_i",
            Identity::Prop2Ii => "Prop2_ii",
            Identity::Prop2Iii => "Prop2_iii",
            Identity::CompositionKK => "CompositionKK",
            Identity::CompositionHH => "CompositionHH",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = FracError;
    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| FracError::Parse(format!("unknown identity '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub alpha: f64,
    pub max_abs_error: f64,
    pub tol: f64,
    pub pass: bool,
}

pub const DEFAULT_IDENTITY_TOL: f64 = 1e-4;

/// Fraction of the grid excluded at each end from the comparison.
const MARGIN: f64 = 0.1;

pub fn verify_identity(id: Identity, f: &GridFunction, a: Alpha) -> Result<IdentityReport> {
    verify_identity_with(id, f, a, DEFAULT_IDENTITY_TOL)
}

/// Evaluates both sides of `id` — one by quadrature, the other by the
/// multiplier (or, for the compositions, the identity itself) — and reports
/// the largest discrepancy over interior nodes. Where an identity equates an
/// assembled and a direct integral form, both are checked against the
/// multiplier.
pub fn verify_identity_with(id: Identity, f: &GridFunction, a: Alpha, tol: f64) -> Result<IdentityReport> {
    let table = SymbolTable::new(a);
    let spectral = |m: Symbol| apply_multiplier(&m, f).map(|o| o.f);
    let s2 = 2.0 * a.half_sin();
    use OperatorKind::*;
    let pairs: Vec<(GridFunction, GridFunction)> = match id {
        Identity::Prop1I => vec![(two_sided(KAlphaH, f, a)?, spectral(Symbol::modulus(-a.value()))?)],
        Identity::Prop1Ii => {
            let cot = 1.0 / (PI * a.value() / 2.0).tan();
            vec![(two_sided(KAlpha, f, a)?, spectral(Symbol::modulus(-a.value()))?.scale(cot))]
        }
        Identity::Prop1Iii => {
            let m = table.symbol(WeylIntegral).lin_comb(1.0 / s2, &table.symbol(RiemannLiouvilleIntegral), -1.0 / s2)?;
            let rhs = spectral(m)?;
            vec![(h_alpha_direct(f, a)?, rhs.clone()), (two_sided(HAlpha, f, a)?, rhs)]
        }
        Identity::Prop1Iv => {
            let m = Symbol::modulus(-a.value()).compose(&Symbol::hilbert());
            vec![(two_sided(HAlpha, f, a)?, spectral(m)?)]
        }
        Identity::Prop2I => vec![(two_sided(KMinusAlpha, f, a)?, spectral(Symbol::modulus(a.value()))?)],
        Identity::Prop2Ii => {
            let m = table.symbol(RightDerivative).lin_comb(-1.0 / s2, &table.symbol(LeftDerivative), 1.0 / s2)?;
            let rhs = spectral(m)?;
            vec![(h_minus_alpha_direct(f, a)?, rhs.clone()), (two_sided(HMinusAlpha, f, a)?, rhs)]
        }
        Identity::Prop2Iii => {
            let m = Symbol::hilbert().compose(&Symbol::modulus(a.value()));
            vec![(two_sided(HMinusAlpha, f, a)?, spectral(m)?)]
        }
        Identity::CompositionKK => {
            let k = two_sided(KMinusAlpha, &two_sided(KAlphaH, f, a)?, a)?;
            let m = table.symbol(KMinusAlpha).compose(&table.symbol(KAlphaH));
            vec![(k, f.clone()), (spectral(m)?, f.clone())]
        }
        Identity::CompositionHH => {
            let k = two_sided(HAlpha, &two_sided(HMinusAlpha, f, a)?, a)?;
            let m = table.symbol(HAlpha).compose(&table.symbol(HMinusAlpha));
            vec![(k, f.scale(-1.0)), (spectral(m)?, f.scale(-1.0))]
        }
    };
    let range = f.interior(MARGIN);
    let max_abs_error = pairs
        .iter()
        .flat_map(|(p, q)| range.clone().map(move |i| (p.values()[i] - q.values()[i]).abs()))
        .fold(0.0, f64::max);
    Ok(IdentityReport { identity: id, alpha: a.value(), max_abs_error, tol, pass: max_abs_error < tol })
}
