use serde::Serialize;

use super::MarchaudPlan;
use crate::error::{FracError, Result};
use crate::grid::GridFunction;
use crate::special::Alpha;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    NonPositive,
    ZeroAndFlat,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaxPrincipleReport {
    pub value: f64,
    pub tol: f64,
    pub verdict: Verdict,
}

/// Evaluates (D_right)^α φ at a point x0 where φ attains its minimum 0 over
/// [x0, ∞). The derivative there must be nonpositive, and zero only when φ
/// vanishes identically to the right of x0.
///
/// `x0` must be a grid node.
pub fn max_principle_check(phi: &GridFunction, x0: f64, a: Alpha) -> Result<MaxPrincipleReport> {
    let i0 = phi.nearest_index(x0);
    if (phi.x(i0) - x0).abs() > 1e-9 * phi.h() {
        return Err(FracError::Precondition(format!("x0 = {x0} is not a grid node")));
    }
    let v = phi.values();
    if v[i0].abs() > 1e-12 {
        return Err(FracError::Precondition(format!("phi(x0) = {:e} is not zero", v[i0])));
    }
    let scale = phi.max_abs();
    if let Some(j) = (i0..v.len()).find(|&j| v[j] < -1e-14 * scale) {
        return Err(FracError::Precondition(format!("phi is negative at x = {} right of x0", phi.x(j))));
    }
    let plan = MarchaudPlan::new(a, phi.h(), phi.len())?;
    let (value, _) = plan.limit_at(phi, i0)?;
    let tol = 1e-8 * scale;
    let right_max = v[i0..].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let verdict = if value < -tol {
        Verdict::NonPositive
    } else if value.abs() <= tol && right_max <= tol {
        Verdict::ZeroAndFlat
    } else {
        Verdict::Violated
    };
    Ok(MaxPrincipleReport { value, tol, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{bump, zero, TailModel};

    #[test]
    fn touching_minimum_gives_negative_derivative() {
        let x0 = 0.5;
        let phi = GridFunction::from_fn(-10.0, 0.02, 1001, |x| (x - x0).powi(2) * (-(x - x0).powi(2)).exp(), TailModel::zero()).unwrap();
        for al in [0.25, 0.5, 0.75] {
            let r = max_principle_check(&phi, x0, Alpha::new(al).unwrap()).unwrap();
            assert_eq!(r.verdict, Verdict::NonPositive, "{r:?}");
        }
    }

    #[test]
    fn flat_cases() {
        let a = Alpha::new(0.5).unwrap();
        let r = max_principle_check(&zero(-2.0, 2.0, 0.05).unwrap(), 0.0, a).unwrap();
        assert_eq!(r.verdict, Verdict::ZeroAndFlat);
        assert_eq!(r.value, 0.0);
        let b = bump(-2.0, 1.0, 5.0, 0.02).unwrap();
        let r = max_principle_check(&b, 0.0, a).unwrap();
        assert_eq!(r.verdict, Verdict::ZeroAndFlat);
    }

    #[test]
    fn preconditions_enforced() {
        let a = Alpha::new(0.5).unwrap();
        let phi = GridFunction::from_fn(-5.0, 0.05, 201, |x| x * x - 0.25, TailModel::zero()).unwrap();
        assert!(matches!(max_principle_check(&phi, 0.0, a), Err(FracError::Precondition(_))));
        let psi = GridFunction::from_fn(-5.0, 0.05, 201, |x| x * (x - 1.0), TailModel::zero()).unwrap();
        assert!(matches!(max_principle_check(&psi, 0.0, a), Err(FracError::Precondition(_))));
        assert!(matches!(max_principle_check(&psi, 0.01, a), Err(FracError::Precondition(_))));
    }
}
