//! Sampled weights and one-sided Muckenhoupt-type checks.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::maximal::cumulative;
use crate::error::{FracError, Result};
use crate::grid::{format_g17, sidecar_path, GaussLegendre, Graded, GridFunction, TailModel};
use crate::special::Alpha;

/// Growth of a weight beyond the last sample x_n (w_n is the last value).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightGrowth {
    /// w(y) = w_n (1 + y − x_n)^γ
    Power { exponent: f64 },
    /// w(y) = w_n e^{μ(y − x_n)}
    Exp { rate: f64 },
}

/// A positive weight sampled on a grid, with its Lebesgue exponents.
#[derive(Debug, Clone)]
pub struct WeightSample {
    pub w: GridFunction,
    pub p: f64,
    /// 1/q = 1/p − α, when an α is attached.
    pub q: Option<f64>,
    pub p_prime: f64,
    pub alpha: Option<f64>,
    pub growth: Option<WeightGrowth>,
}

#[derive(Debug, Serialize, Deserialize)]
struct WeightSidecar {
    p: f64,
    q: Option<f64>,
    alpha: Option<f64>,
    #[serde(default)]
    growth: Option<WeightGrowth>,
}

impl WeightSample {
    pub fn new(w: GridFunction, p: f64) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(FracError::domain(format!("weight exponent p must exceed 1, got {p}")));
        }
        if let Some(i) = w.values().iter().position(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(FracError::domain(format!("weight is not positive and finite at x = {}", w.x(i))));
        }
        let w = w.with_values_and_tails(w.values().to_vec(), TailModel::zero(), TailModel::zero())?;
        Ok(Self { w, p, q: None, p_prime: p / (p - 1.0), alpha: None, growth: None })
    }

    pub fn from_fn(x0: f64, h: f64, n: usize, f: impl Fn(f64) -> f64, p: f64) -> Result<Self> {
        Self::new(GridFunction::from_fn(x0, h, n, f, TailModel::zero())?, p)
    }

    /// Attaches α and q with 1/q = 1/p − α (requires p < 1/α).
    pub fn with_alpha(mut self, a: Alpha) -> Result<Self> {
        let inv = 1.0 / self.p - a.value();
        if !(inv > 0.0) {
            return Err(FracError::domain(format!("need p < 1/alpha, got p = {}, alpha = {}", self.p, a.value())));
        }
        self.q = Some(1.0 / inv);
        self.alpha = Some(a.value());
        Ok(self)
    }

    pub fn with_growth(mut self, g: WeightGrowth) -> Self {
        self.growth = Some(g);
        self
    }

    /// The cubic interpolant of the samples, falling back to linear
    /// interpolation where the cubic is not positive.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let w = &self.w;
        let t = (x - w.x0()) / w.h();
        let last = (w.len() - 1) as f64;
        if t < -1e-9 || t > last + 1e-9 {
            if t > last {
                if let Some(g) = self.growth {
                    let v = w.values()[w.len() - 1];
                    let d = x - w.xmax();
                    return Ok(match g {
                        WeightGrowth::Power { exponent } => v * (1.0 + d).powf(exponent),
                        WeightGrowth::Exp { rate } => v * (rate * d).exp(),
                    });
                }
            }
            return Err(FracError::Precondition(format!("weight not sampled at x = {x}")));
        }
        let cubic = w.eval(x);
        if cubic > 0.0 {
            return Ok(cubic);
        }
        let t = t.clamp(0.0, last);
        let j = (t.floor() as usize).min(w.len() - 2);
        let u = t - j as f64;
        Ok((1.0 - u) * w.values()[j] + u * w.values()[j + 1])
    }

    /// CSV `x,w` plus a JSON sidecar {p, q, alpha, growth}.
    pub fn write(&self, path: &Path) -> Result<()> {
        let mut out = String::from("x,w\n");
        for (i, v) in self.w.values().iter().enumerate() {
            out.push_str(&format!("{},{}\n", format_g17(self.w.x(i)), format_g17(*v)));
        }
        fs::write(path, out)?;
        let meta = WeightSidecar { p: self.p, q: self.q, alpha: self.alpha, growth: self.growth };
        fs::write(sidecar_path(path), serde_json::to_string_pretty(&meta)? + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let meta: WeightSidecar = serde_json::from_str(&fs::read_to_string(sidecar_path(path))?)?;
        let mut xs = Vec::new();
        let mut ws = Vec::new();
        for (k, line) in fs::read_to_string(path)?.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || (k == 0 && line.starts_with('x')) {
                continue;
            }
            let parsed: Vec<f64> = line.split(',').map(|c| c.trim().parse::<f64>()).collect::<std::result::Result<_, _>>()
                .map_err(|_| FracError::Parse(format!("{}:{}: malformed number", path.display(), k + 1)))?;
            let [x, w] = parsed[..] else {
                return Err(FracError::Parse(format!("{}:{}: expected two columns", path.display(), k + 1)));
            };
            xs.push(x);
            ws.push(w);
        }
        if xs.len() < GridFunction::MIN_LEN {
            return Err(FracError::Parse(format!("{}: need at least {} rows", path.display(), GridFunction::MIN_LEN)));
        }
        let h = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
        if xs.iter().enumerate().any(|(i, x)| (x - xs[0] - i as f64 * h).abs() > 1e-6 * h) {
            return Err(FracError::Parse(format!("{}: abscissae are not uniformly spaced", path.display())));
        }
        let mut s = Self::new(GridFunction::new(xs[0], h, ws, TailModel::zero())?, meta.p)?;
        if let Some(a) = meta.alpha {
            s = s.with_alpha(Alpha::new(a)?)?;
            if let (Some(q), Some(q2)) = (meta.q, s.q) {
                if (q - q2).abs() > 1e-9 * q.abs() {
                    return Err(FracError::Parse(format!("sidecar q = {q} is inconsistent with p and alpha")));
                }
            }
        } else {
            s.q = meta.q;
        }
        s.growth = meta.growth;
        Ok(s)
    }
}

/// Finite (a, h) lattice for weight suprema: a runs over every `a_stride`-th
/// node, h = h_grid·2^k for k < `levels`, keeping the windows on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lattice {
    pub levels: usize,
    pub a_stride: usize,
}

impl Default for Lattice {
    fn default() -> Self {
        Self { levels: 21, a_stride: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightVerdict {
    Bounded,
    Unbounded,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightReport {
    pub sup_estimate: f64,
    /// (a, h) where the supremum was found.
    pub argmax: (f64, f64),
    /// (h, sup over a) per lattice level.
    pub levels: Vec<(f64, f64)>,
    /// d log(sup) / d log(h) between the two largest levels.
    pub trend: f64,
    pub verdict: WeightVerdict,
}

const TREND_BOUNDED: f64 = 0.1;
const TREND_UNBOUNDED: f64 = 0.5;

/// Where the two averages of a product are taken.
#[derive(Clone, Copy, PartialEq)]
enum Windows {
    /// [a−h, a] and [a, a+h]
    OneSided,
    /// both over [a−h, a+h]
    TwoSided,
}

/// sup over the lattice of avg(v1)^{e1}·avg(v2)^{e2}.
fn lattice_sup(ws: &WeightSample, v1: &[f64], e1: f64, v2: &[f64], e2: f64, win: Windows, lat: &Lattice) -> Result<WeightReport> {
    let h = ws.w.h();
    let n = v1.len();
    let (c1, c2) = (cumulative(v1, h), cumulative(v2, h));
    if c1.iter().chain(&c2).any(|v| !v.is_finite()) {
        return Err(FracError::Overflow("weight power overflows on the grid".into()));
    }
    let stride = lat.a_stride.max(1);
    let mut levels = Vec::new();
    let mut best = (f64::NEG_INFINITY, (f64::NAN, f64::NAN));
    for k in 0..lat.levels {
        let m = 1usize << k;
        if 2 * m > n - 1 {
            break;
        }
        let hw = m as f64 * h;
        let (sup, at) = (m..n - m)
            .into_par_iter()
            .step_by(stride)
            .map(|i| {
                let (a1, a2) = match win {
                    Windows::OneSided => ((c1[i] - c1[i - m]) / hw, (c2[i + m] - c2[i]) / hw),
                    Windows::TwoSided => ((c1[i + m] - c1[i - m]) / (2.0 * hw), (c2[i + m] - c2[i - m]) / (2.0 * hw)),
                };
                (a1.powf(e1) * a2.powf(e2), i)
            })
            .reduce(|| (f64::NEG_INFINITY, usize::MAX), |x, y| if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) { y } else { x });
        levels.push((hw, sup));
        if sup > best.0 {
            best = (sup, (ws.w.x(at), hw));
        }
    }
    if levels.is_empty() {
        return Err(FracError::Precondition("weight grid too short for the lattice".into()));
    }
    let trend = match levels.len() {
        0 | 1 => f64::NAN,
        l => (levels[l - 1].1 / levels[l - 2].1).ln() / (levels[l - 1].0 / levels[l - 2].0).ln(),
    };
    let verdict = if !best.0.is_finite() || trend > TREND_UNBOUNDED {
        WeightVerdict::Unbounded
    } else if trend <= TREND_BOUNDED {
        WeightVerdict::Bounded
    } else {
        WeightVerdict::Inconclusive
    };
    Ok(WeightReport { sup_estimate: best.0, argmax: best.1, levels, trend, verdict })
}

fn conjugate(s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(FracError::domain(format!("exponent must exceed 1, got {s}")));
    }
    Ok(s / (s - 1.0))
}

fn powers(ws: &WeightSample, e: f64) -> Vec<f64> {
    ws.w.values().iter().map(|w| w.powf(e)).collect()
}

fn ap_product(ws: &WeightSample, s: f64, win: Windows, lat: &Lattice) -> Result<WeightReport> {
    let sp = conjugate(s)?;
    lattice_sup(ws, ws.w.values(), 1.0 / s, &powers(ws, 1.0 - sp), 1.0 / sp, win, lat)
}

fn apq_product(ws: &WeightSample, win: Windows, lat: &Lattice) -> Result<WeightReport> {
    let q = ws.q.ok_or_else(|| FracError::Precondition("weight sample has no q (attach alpha first)".into()))?;
    lattice_sup(ws, &powers(ws, q), 1.0 / q, &powers(ws, -ws.p_prime), 1.0 / ws.p_prime, win, lat)
}

/// One-sided A_s⁺ product (h^{−1}∫_{a−h}^a ω)^{1/s}(h^{−1}∫_a^{a+h} ω^{1−s'})^{1/s'}.
pub fn check_ap_plus(ws: &WeightSample, s: f64, lat: &Lattice) -> Result<WeightReport> {
    ap_product(ws, s, Windows::OneSided, lat)
}

/// Classical A_s product over the centred interval [a−h, a+h].
pub fn check_ap(ws: &WeightSample, s: f64, lat: &Lattice) -> Result<WeightReport> {
    ap_product(ws, s, Windows::TwoSided, lat)
}

/// One-sided A_{p,q}⁺ product (h^{−1}∫_{a−h}^a w^q)^{1/q}(h^{−1}∫_a^{a+h} w^{−p'})^{1/p'}.
pub fn check_apq_plus(ws: &WeightSample, lat: &Lattice) -> Result<WeightReport> {
    apq_product(ws, Windows::OneSided, lat)
}

/// Classical A_{p,q} product over [a−h, a+h].
pub fn check_apq(ws: &WeightSample, lat: &Lattice) -> Result<WeightReport> {
    apq_product(ws, Windows::TwoSided, lat)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct A1Report {
    /// max over nodes of M⁻w / w.
    pub constant: f64,
    pub at: f64,
}

/// Discrete A₁⁺ check M⁻w ≤ C w, with M⁻ restricted to windows on the grid.
pub fn check_a1_plus(ws: &WeightSample) -> Result<A1Report> {
    let v = ws.w.values();
    let h = ws.w.h();
    let c = cumulative(v, h);
    let (constant, i) = (1..v.len())
        .into_par_iter()
        .map(|i| {
            let m = (0..i).map(|j| (c[i] - c[j]) / ((i - j) as f64 * h)).fold(0.0f64, f64::max);
            (m / v[i], i)
        })
        .reduce(|| (0.0, 0), |x, y| if y.0 > x.0 || (y.0 == x.0 && y.1 < x.1) { y } else { x });
    Ok(A1Report { constant, at: ws.w.x(i) })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegrabilityReport {
    pub finite: bool,
    /// The integral when finite, +∞ otherwise.
    pub value: f64,
    /// Exponent s of the kernel (y − a)^{−s}.
    pub kernel_exponent: f64,
}

/// ∫_b^∞ w^{−p'}(y) (y − a)^{−(1−α)p'} dy, evaluated on the samples and the
/// weight's growth model beyond the grid.
pub fn integrability_diagnostic(ws: &WeightSample, a: f64, b: f64, a_: Alpha) -> Result<IntegrabilityReport> {
    integrability_with_exponent(ws, a, b, (1.0 - a_.value()) * ws.p_prime)
}

/// Same with an arbitrary kernel exponent s ≥ 0 in (y − a)^{−s}.
pub fn integrability_with_exponent(ws: &WeightSample, a: f64, b: f64, s: f64) -> Result<IntegrabilityReport> {
    if !(b > a) {
        return Err(FracError::domain(format!("need b > a, got a = {a}, b = {b}")));
    }
    if !(s >= 0.0) {
        return Err(FracError::domain(format!("kernel exponent must be nonnegative, got {s}")));
    }
    let growth = ws.growth.ok_or_else(|| FracError::Precondition("weight has no tail model beyond its grid".into()))?;
    let pp = ws.p_prime;
    let finite = match growth {
        WeightGrowth::Power { exponent } => exponent * pp + s > 1.0,
        WeightGrowth::Exp { rate } => rate > 0.0 || (rate == 0.0 && s > 1.0),
    };
    if !finite {
        return Ok(IntegrabilityReport { finite, value: f64::INFINITY, kernel_exponent: s });
    }
    let g = |y: f64| ws.eval(y).map(|w| w.powf(-pp) * (y - a).powf(-s)).unwrap_or(f64::NAN);
    let gl = GaussLegendre::new(10);
    let q = Graded { gl: &gl, levels: 40 };
    let w = &ws.w;
    if b < w.x0() {
        return Err(FracError::Precondition(format!("weight not sampled at b = {b}")));
    }
    let mut total = 0.0;
    // grid cells (the interpolant has kinks at the nodes)
    for j in 0..w.len() - 1 {
        let (lo, hi) = (w.x(j).max(b), w.x(j + 1));
        if hi > lo {
            total += q.integrate(&g, lo, hi, &[a])?;
        }
    }
    // growth region on doubling panels
    // decay exponent of the integrand when it is power-like
    let power_like = match growth {
        WeightGrowth::Power { exponent } => Some(exponent * pp + s),
        WeightGrowth::Exp { rate } => (rate == 0.0).then_some(s),
    };
    let mut lo = w.xmax().max(b);
    let mut width = (lo - a).max(w.h());
    if let WeightGrowth::Exp { rate } = growth {
        if rate > 0.0 {
            width = width.min(1.0 / rate);
        }
    }
    for _ in 0..200 {
        let c = q.integrate(&g, lo, lo + width, &[a])?;
        total += c;
        lo += width;
        if c.abs() <= 1e-17 * total.abs() {
            break;
        }
        if power_like.is_some() {
            width *= 2.0;
        }
    }
    if let Some(e) = power_like {
        // remainder of a y^{−e} tail beyond lo
        total += g(lo) * (lo - a) / (e - 1.0);
    }
    if !total.is_finite() {
        return Err(FracError::Overflow("integrability integral overflowed".into()));
    }
    Ok(IntegrabilityReport { finite, value: total, kernel_exponent: s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn exp_weight(scale: f64, p: f64) -> WeightSample {
        WeightSample::from_fn(-10.0, 0.01, 2001, |x| (x / scale).exp(), p).unwrap()
    }

    fn level(r: &WeightReport, h: f64) -> f64 {
        r.levels.iter().find(|(hh, _)| (hh - h).abs() < 1e-9).expect("level present").1
    }

    #[test]
    fn exponential_is_one_sided_a2() {
        let ws = exp_weight(1.0, 2.0);
        let r = check_ap_plus(&ws, 2.0, &Lattice::default()).unwrap();
        assert_eq!(r.verdict, WeightVerdict::Bounded, "{r:?}");
        assert!(r.sup_estimate <= 1.0 && r.sup_estimate > 0.99, "{}", r.sup_estimate);
        for (h, v) in &r.levels {
            // (1 − e^{−h})/h, up to the trapezoid error of the averages
            let exact = (1.0 - (-h).exp()) / h;
            assert!((v - exact).abs() < 1e-4 * (1.0 + h), "h {h}: {v} vs {exact}");
        }
    }

    #[test]
    fn exponential_is_not_two_sided_a2() {
        let ws = exp_weight(1.0, 2.0);
        let r = check_ap(&ws, 2.0, &Lattice::default()).unwrap();
        assert_eq!(r.verdict, WeightVerdict::Unbounded, "{r:?}");
        let h = 2.56;
        // (avg e^x)^{1/2}(avg e^{−x})^{1/2} over [a−h, a+h] = sinh(h)/h
        let exact = (h as f64).sinh() / h;
        assert!((level(&r, h) / exact - 1.0).abs() < 1e-3, "{} vs {exact}", level(&r, h));
    }

    #[test]
    fn unit_weight_products_are_one() {
        let ws = WeightSample::from_fn(-5.0, 0.05, 201, |_| 1.0, 3.0).unwrap().with_alpha(Alpha::new(0.2).unwrap()).unwrap();
        for r in [
            check_ap_plus(&ws, 2.5, &Lattice::default()).unwrap(),
            check_ap(&ws, 2.5, &Lattice::default()).unwrap(),
            check_apq_plus(&ws, &Lattice::default()).unwrap(),
        ] {
            assert!(r.levels.iter().all(|(_, v)| (v - 1.0).abs() < 1e-12));
            assert_eq!(r.verdict, WeightVerdict::Bounded);
        }
    }

    #[test]
    fn apq_plus_exponential() {
        // ω = e^{x/q}: w^q = e^x and w^{−p'} = e^{−p'x/q} give an a-free product
        let (p, a) = (1.5, Alpha::new(0.25).unwrap());
        let q = 1.0 / (1.0 / p - 0.25);
        let ws = exp_weight(q, p).with_alpha(a).unwrap();
        assert!((ws.q.unwrap() - q).abs() < 1e-12);
        let r = check_apq_plus(&ws, &Lattice::default()).unwrap();
        assert_eq!(r.verdict, WeightVerdict::Bounded, "{r:?}");
        assert!(r.sup_estimate <= 1.0);
        let pp = ws.p_prime;
        let c = pp / q;
        for (h, v) in &r.levels {
            let exact = ((1.0 - (-h).exp()) / h).powf(1.0 / q) * ((1.0 - (-c * h).exp()) / (c * h)).powf(1.0 / pp);
            assert!((v - exact).abs() < 5e-4, "h {h}: {v} vs {exact}");
        }
        assert_eq!(check_apq(&ws, &Lattice::default()).unwrap().verdict, WeightVerdict::Unbounded);
    }

    #[test]
    fn monotone_weights_are_a1_plus() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..5 {
            let mut v = 0.5;
            let vals: Vec<f64> = (0..300)
                .map(|_| {
                    v += rng.gen_range(0.0..0.2);
                    v
                })
                .collect();
            let ws = WeightSample::new(GridFunction::new(0.0, 0.1, vals, TailModel::zero()).unwrap(), 2.0).unwrap();
            let r = check_a1_plus(&ws).unwrap();
            assert!(r.constant <= 1.0 + 1e-12, "{r:?}");
        }
        let dec = WeightSample::from_fn(0.0, 0.05, 201, |x| (-x).exp(), 2.0).unwrap();
        assert!(check_a1_plus(&dec).unwrap().constant > 100.0);
    }

    #[test]
    fn invalid_weights_rejected() {
        assert!(WeightSample::from_fn(0.0, 0.1, 20, |x| x - 1.0, 2.0).is_err());
        assert!(WeightSample::from_fn(0.0, 0.1, 20, |_| f64::INFINITY, 2.0).is_err());
        assert!(WeightSample::from_fn(0.0, 0.1, 20, |_| 1.0, 1.0).is_err());
        let ws = WeightSample::from_fn(0.0, 0.1, 20, |_| 1.0, 3.0).unwrap();
        assert!(ws.clone().with_alpha(Alpha::new(0.5).unwrap()).is_err());
        assert!(check_apq_plus(&ws, &Lattice::default()).is_err());
        assert!(check_ap_plus(&ws, 1.0, &Lattice::default()).is_err());
    }

    /// Γ(c, z) for z > 0 by the modified Lentz continued fraction.
    fn upper_gamma(c: f64, z: f64) -> f64 {
        let tiny = 1e-300;
        let mut b = z + 1.0 - c;
        let mut cc = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..10_000 {
            let an = -(i as f64) * (i as f64 - c);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            cc = b + an / cc;
            if cc.abs() < tiny {
                cc = tiny;
            }
            d = 1.0 / d;
            let del = d * cc;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        (-z + c * z.ln()).exp() * h
    }

    #[test]
    fn integrability_of_exponential_weight() {
        // w^{−p'} = e^{−x}: ∫_b^∞ e^{−y}(y − a)^{−s} dy = e^{−a} Γ(1 − s, b − a)
        let (p, al) = (3.0, 0.25);
        let pp: f64 = 1.5;
        let ws = WeightSample::from_fn(-2.0, 0.01, 1001, |x| (x / pp).exp(), p).unwrap().with_growth(WeightGrowth::Exp { rate: 1.0 / pp });
        let (a, b) = (-1.0, 1.0);
        let r = integrability_diagnostic(&ws, a, b, Alpha::new(al).unwrap()).unwrap();
        let s = (1.0 - al) * pp;
        assert!((r.kernel_exponent - s).abs() < 1e-15);
        let expect = (-a).exp() * upper_gamma(1.0 - s, b - a);
        assert!(r.finite);
        assert!((r.value - expect).abs() < 1e-6 * expect, "{} vs {expect}", r.value);
    }

    #[test]
    fn integrability_of_unit_weight() {
        let ws = WeightSample::from_fn(0.0, 0.1, 101, |_| 1.0, 2.0).unwrap();
        assert!(matches!(integrability_diagnostic(&ws, 0.0, 1.0, Alpha::new(0.5).unwrap()), Err(FracError::Precondition(_))));
        let ws = ws.with_growth(WeightGrowth::Power { exponent: 0.0 });
        let r = integrability_diagnostic(&ws, 0.0, 1.0, Alpha::new(0.5).unwrap()).unwrap();
        assert!(!r.finite && r.value.is_infinite());
        assert!(!integrability_with_exponent(&ws, 0.0, 1.0, 0.0).unwrap().finite);
        // s = 1.5: ∫_1^∞ y^{−1.5} = 2
        let r = integrability_with_exponent(&ws, 0.0, 1.0, 1.5).unwrap();
        assert!(r.finite && (r.value - 2.0).abs() < 1e-6, "{r:?}");
        assert!(integrability_with_exponent(&ws, 1.0, 1.0, 1.5).is_err());
    }

    #[test]
    fn weight_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.csv");
        let ws = exp_weight(2.0, 1.5).with_alpha(Alpha::new(0.3).unwrap()).unwrap().with_growth(WeightGrowth::Exp { rate: 0.5 });
        ws.write(&path).unwrap();
        assert!(fs::read_to_string(&path).unwrap().starts_with("x,w\n"));
        let back = WeightSample::read(&path).unwrap();
        assert_eq!(back.w.values(), ws.w.values());
        assert_eq!((back.p, back.q, back.alpha, back.growth), (ws.p, ws.q, ws.alpha, ws.growth));
        assert!((back.w.h() - ws.w.h()).abs() < 1e-15);
    }
}
