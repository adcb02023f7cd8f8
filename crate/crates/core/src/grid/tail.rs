use crate::error::{FracError, Result};

/// Functional form of a function beyond the end of its grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailKind {
    Zero,
    /// c·e^{−λ(x − x_v)}
    ExpDecay { rate: f64, coefficient: f64 },
    /// c·((1−κ)ρ^{−β} + κρ^{−β−2}) with ρ = (x − o)/(x_v − o); κ is the
    /// `correction` (usually 0).
    PowerDecay { exponent: f64, coefficient: f64, origin: f64, correction: f64 },
}

/// A tail model valid for x ≥ `valid_from` (x_v above). Coefficients are the
/// value at `valid_from`, which [`TailModel::anchored`] sets to the last grid
/// sample so the extended function is continuous.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailModel {
    pub kind: TailKind,
    pub valid_from: f64,
}

impl TailModel {
    pub fn zero() -> Self {
        Self { kind: TailKind::Zero, valid_from: 0.0 }
    }

    pub fn exp(rate: f64) -> Self {
        Self { kind: TailKind::ExpDecay { rate, coefficient: 0.0 }, valid_from: 0.0 }
    }

    /// Constant continuation of the last sample (a power tail of exponent 0).
    pub fn constant() -> Self {
        Self { kind: TailKind::PowerDecay { exponent: 0.0, coefficient: 0.0, origin: f64::NEG_INFINITY, correction: 0.0 }, valid_from: 0.0 }
    }

    /// Power decay |x − origin|^{−exponent}.
    pub fn power(exponent: f64, origin: f64) -> Self {
        Self { kind: TailKind::PowerDecay { exponent, coefficient: 0.0, origin, correction: 0.0 }, valid_from: 0.0 }
    }

    /// Power decay with the next term of the asymptotic series,
    /// (1−κ)ρ^{−β} + κρ^{−β−2}.
    pub fn power_corrected(exponent: f64, origin: f64, correction: f64) -> Self {
        Self { kind: TailKind::PowerDecay { exponent, coefficient: 0.0, origin, correction }, valid_from: 0.0 }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, TailKind::Zero)
    }

    /// Pins the model to pass through `value` at `x`.
    pub fn anchored(self, x: f64, value: f64) -> Result<Self> {
        let kind = match self.kind {
            TailKind::Zero => TailKind::Zero,
            TailKind::ExpDecay { rate, .. } => {
                if !(rate > 0.0) || !rate.is_finite() {
                    return Err(FracError::domain(format!("exponential tail needs rate > 0, got {rate}")));
                }
                TailKind::ExpDecay { rate, coefficient: value }
            }
            TailKind::PowerDecay { exponent, origin, correction, .. } => {
                if !(exponent >= 0.0) || !exponent.is_finite() || !correction.is_finite() {
                    return Err(FracError::domain(format!("power tail needs exponent >= 0, got {exponent}")));
                }
                let origin = if origin == f64::NEG_INFINITY && exponent == 0.0 { x - 1.0 } else { origin };
                if !(origin < x) {
                    return Err(FracError::domain(format!("power tail origin {origin} must lie before {x}")));
                }
                TailKind::PowerDecay { exponent, coefficient: value, origin, correction }
            }
        };
        Ok(Self { kind, valid_from: x })
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.kind {
            TailKind::Zero => 0.0,
            TailKind::ExpDecay { rate, coefficient } => coefficient * (-rate * (x - self.valid_from)).exp(),
            TailKind::PowerDecay { exponent, coefficient, origin, correction } => {
                let r = (x - origin) / (self.valid_from - origin);
                coefficient * r.powf(-exponent) * (1.0 - correction + correction / (r * r))
            }
        }
    }

    /// First and second derivative at `valid_from`.
    pub fn derivatives_at_anchor(&self) -> (f64, f64) {
        match self.kind {
            TailKind::Zero => (0.0, 0.0),
            TailKind::ExpDecay { rate, coefficient } => (-rate * coefficient, rate * rate * coefficient),
            TailKind::PowerDecay { exponent: b, coefficient: c, origin, correction: k } => {
                let d = self.valid_from - origin;
                let d1 = -((1.0 - k) * b + k * (b + 2.0)) * c / d;
                let d2 = ((1.0 - k) * b * (b + 1.0) + k * (b + 2.0) * (b + 3.0)) * c / (d * d);
                (d1, d2)
            }
        }
    }

    /// Natural decay length used to size quadrature panels, if any.
    pub(crate) fn decay_length(&self) -> Option<f64> {
        match self.kind {
            TailKind::ExpDecay { rate, .. } => Some(1.0 / rate),
            _ => None,
        }
    }

    pub fn scaled(&self, a: f64) -> Self {
        let kind = match self.kind {
            TailKind::Zero => TailKind::Zero,
            TailKind::ExpDecay { rate, coefficient } => TailKind::ExpDecay { rate, coefficient: a * coefficient },
            TailKind::PowerDecay { exponent, coefficient, origin, correction } => {
                TailKind::PowerDecay { exponent, coefficient: a * coefficient, origin, correction }
            }
        };
        Self { kind, ..*self }
    }

    /// Tail kind for a·f + b·g: the slower-decaying of the two (the sum is
    /// asymptotically dominated by it); the coefficient is re-anchored by the caller.
    pub(crate) fn combine(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        use TailKind::*;
        let pick = |s: &Self, t: &Self| -> Self {
            match (s.kind, t.kind) {
                (Zero, _) => *t,
                (_, Zero) => *s,
                (ExpDecay { rate: r1, .. }, ExpDecay { rate: r2, .. }) => {
                    if r1 <= r2 { *s } else { *t }
                }
                (PowerDecay { .. }, ExpDecay { .. }) => *s,
                (ExpDecay { .. }, PowerDecay { .. }) => *t,
                (PowerDecay { exponent: e1, .. }, PowerDecay { exponent: e2, .. }) => {
                    if e1 <= e2 { *s } else { *t }
                }
            }
        };
        let s = if a == 0.0 { Self::zero() } else { *self };
        let t = if b == 0.0 { Self::zero() } else { *other };
        Ok(pick(&s, &t))
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            TailKind::Zero => "zero",
            TailKind::ExpDecay { .. } => "exp",
            TailKind::PowerDecay { .. } => "power",
        }
    }

    /// Shape parameters (without the anchored coefficient).
    pub fn shape_params(&self) -> Vec<f64> {
        match self.kind {
            TailKind::Zero => vec![],
            TailKind::ExpDecay { rate, .. } => vec![rate],
            TailKind::PowerDecay { exponent, origin, correction, .. } => {
                if correction == 0.0 { vec![exponent, origin] } else { vec![exponent, origin, correction] }
            }
        }
    }

    pub fn from_shape(kind: &str, params: &[f64]) -> Result<Self> {
        match (kind, params) {
            ("zero", []) => Ok(Self::zero()),
            ("exp", [rate]) => Ok(Self::exp(*rate)),
            ("power", [exponent, origin]) => Ok(Self::power(*exponent, *origin)),
            ("power", [exponent, origin, correction]) => Ok(Self::power_corrected(*exponent, *origin, *correction)),
            _ => Err(FracError::Parse(format!("unknown tail model {kind} with {} parameters", params.len()))),
        }
    }
}
