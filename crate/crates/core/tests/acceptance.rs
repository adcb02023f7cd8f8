//! Acceptance criteria: one PASS/FAIL line per criterion, nonzero exit if
//! any fails.

use std::time::Instant;

use fracalc::cli::{duality_error, maximum_principle_violations, monotone_a1_constant};
use fracalc::extension::{neumann_trace, pde_residual, poisson, poisson_symbol, semigroup_check};
use fracalc::fracops::{dirichlet_solve, marchaud_right, weyl};
use fracalc::grid::{gaussian, one_sided_exp};
use fracalc::onesided::{check_ap, check_ap_plus, default_fftc_eps, fftc_verify, KernelKTilde, Lattice, WeightSample, WeightVerdict};
use fracalc::spectral::{verify_identity_with, Identity};
use fracalc::{Alpha, GridFunction, Result, TailModel};
use num_complex::Complex64;

const ALPHAS: [f64; 3] = [0.25, 0.5, 0.75];

fn alphas() -> impl Iterator<Item = Alpha> {
    ALPHAS.into_iter().map(|a| Alpha::new(a).unwrap())
}

/// Outcome of one criterion: whether it holds, and the worst figure seen.
struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

fn eigen_relations() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for a in alphas() {
        for lambda in [0.5, 1.0, 2.0] {
            let f = one_sided_exp(lambda, 40.0 / lambda, 0.01 / lambda)?;
            let (d, w) = (marchaud_right(&f, a)?, weyl(&f, a)?);
            for i in f.interior(0.1) {
                let e = (-lambda * f.x(i)).exp();
                worst = worst.max((d.values()[i] / (lambda.powf(a.value()) * e) - 1.0).abs());
                worst = worst.max((w.values()[i] / (lambda.powf(-a.value()) * e) - 1.0).abs());
            }
        }
    }
    outcome(worst < 1e-5, format!("max relative error {worst:.2e} (bound 1e-5)"))
}

fn fftc() -> Result<Outcome> {
    let (mut last, mut route, mut decreasing) = (0.0f64, 0.0f64, true);
    for a in alphas() {
        for f in [gaussian(0.0, 1.0, 12.0, 0.02)?, one_sided_exp(1.0, 20.0, 0.02)?] {
            let r = fftc_verify(&f, a, &default_fftc_eps(a), None)?;
            last = last.max(*r.sup_errors.last().unwrap());
            route = route.max(r.route_differences.iter().fold(0.0, |m: f64, d| m.max(*d)));
            decreasing &= r.sup_errors.windows(2).all(|w| w[1] < w[0]);
        }
    }
    outcome(
        last < 1e-3 && route < 1e-6 && decreasing,
        format!("final sup error {last:.2e} (bound 1e-3), route difference {route:.2e} (bound 1e-6), strictly decreasing: {decreasing}"),
    )
}

fn kernel_mass() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for k in 1..10 {
        let m = KernelKTilde::new(Alpha::new(k as f64 / 10.0)?).mass()?;
        worst = worst.max((m - 1.0).abs());
    }
    outcome(worst < 1e-8, format!("max |mass - 1| {worst:.2e} over alpha = 0.1..0.9 (bound 1e-8)"))
}

fn extension() -> Result<Outcome> {
    let half = Alpha::new(0.5)?;
    let f = one_sided_exp(1.0, 20.0, 0.01)?;
    let ts = [0.1, 0.5, 1.0, 2.0];
    let field = poisson(&f, half, &ts)?;
    let mut field_err = 0.0f64;
    for (j, t) in ts.iter().enumerate() {
        for (i, x) in field.xs.iter().enumerate().filter(|(_, x)| **x <= 5.0) {
            field_err = field_err.max((field.u[j][i] - (-x - t).exp()).abs());
        }
    }
    let h = 1e-3;
    let mut residual = 0.0f64;
    for a in alphas() {
        let g = one_sided_exp(1.0, 8.0, h)?;
        let ts: Vec<f64> = (0..=10).map(|j| 0.5 + j as f64 * h).collect();
        residual = residual.max(pde_residual(&poisson(&g, a, &ts)?)?.max_residual);
    }
    let mut trace_err = 0.0f64;
    for a in alphas() {
        let g = gaussian(0.0, 1.0, 12.0, 0.05)?;
        let (tr, d) = (neumann_trace(&g, a)?, marchaud_right(&g, a)?);
        for i in g.interior(0.1) {
            trace_err = trace_err.max((tr.values()[i] - d.values()[i]).abs());
        }
    }
    outcome(
        field_err < 1e-6 && residual < 1e-3 && trace_err < 1e-3,
        format!("field vs e^(-x-t) {field_err:.2e} (1e-6), PDE residual {residual:.2e} (1e-3), trace vs derivative {trace_err:.2e} (1e-3)"),
    )
}

fn multiplier() -> Result<Outcome> {
    let f = GridFunction::from_fn(-24.0, 0.05, 961, |x| (x.powi(4) - 6.0 * x * x + 3.0) * (-0.5 * x * x).exp(), TailModel::zero())?;
    let mut fft_err = 0.0f64;
    for a in alphas() {
        for t in [0.25, 1.0] {
            fft_err = fft_err.max(semigroup_check(&f, a, t)?.max_error);
        }
    }
    let half = Alpha::new(0.5)?;
    let mut closed = 0.0f64;
    for t in [0.1, 0.5, 1.0, 3.0] {
        for k in -40..=40 {
            let xi = k as f64 * 0.25;
            let exact = (-t * Complex64::new(0.0, -xi).sqrt()).exp();
            closed = closed.max((poisson_symbol(t, xi, half)?.value - exact).norm());
        }
    }
    outcome(fft_err < 1e-5 && closed < 1e-8, format!("FFT mismatch {fft_err:.2e} (1e-5), closed form at alpha 1/2 {closed:.2e} (1e-8)"))
}

fn unification() -> Result<Outcome> {
    let f = gaussian(0.0, 1.0, 12.0, 0.05)?;
    let mut worst = 0.0f64;
    let mut failing = Vec::new();
    for a in alphas() {
        for id in Identity::ALL {
            let r = verify_identity_with(id, &f, a, 1e-4)?;
            worst = worst.max(r.max_abs_error);
            if !r.pass {
                failing.push(format!("{}@{}", id.name(), a.value()));
            }
        }
    }
    outcome(failing.is_empty(), format!("9 identities x 3 orders, max error {worst:.2e} (1e-4); failing: {failing:?}"))
}

fn maximum_principle() -> Result<Outcome> {
    let mut violations = 0;
    for a in alphas() {
        violations += maximum_principle_violations(a, 200, 2024)?;
    }
    let h = 0.01;
    let mut min_u = f64::INFINITY;
    for a in alphas() {
        let f = GridFunction::from_fn(0.0, h, 100, |x| (3.0 * x).sin().powi(2) + (x - 0.5).abs(), TailModel::zero())?;
        let g = GridFunction::from_fn(1.0, h, 200, |_| 0.0, TailModel::zero())?;
        min_u = dirichlet_solve(&f, &g, a, h)?.u.values().iter().fold(min_u, |m, v| m.min(*v));
    }
    let a = Alpha::new(0.5)?;
    let err = |h: f64| -> Result<f64> {
        let f = GridFunction::from_fn(0.0, h, (1.0 / h).round() as usize + 1, |x| (-x).exp(), TailModel::exp(1.0))?;
        let g = GridFunction::from_fn(1.0, h, (10.0 / h).round() as usize + 1, |x| (-x).exp(), TailModel::exp(1.0))?;
        let u = dirichlet_solve(&f, &g, a, h)?.u;
        Ok((0..u.len()).map(|i| (u.values()[i] - (-u.x(i)).exp()).abs()).fold(0.0, f64::max))
    };
    let ratio = err(0.02)? / err(0.01)?;
    outcome(
        violations == 0 && min_u >= -1e-8 && (1.7..=2.3).contains(&ratio),
        format!("{violations} violations in 600 random touching minima, min Dirichlet u {min_u:.2e}, halving ratio {ratio:.3} (in [1.7, 2.3])"),
    )
}

fn weights() -> Result<Outcome> {
    let lat = Lattice::default();
    let w = WeightSample::from_fn(-4.0, 5e-4, 16001, f64::exp, 2.0)?;
    let plus = check_ap_plus(&w, 2.0, &lat)?;
    let two = check_ap(&w, 2.0, &lat)?;
    let one = WeightSample::from_fn(-5.0, 0.05, 201, |_| 1.0, 2.0)?;
    let flat = check_ap_plus(&one, 2.0, &lat)?.levels.into_iter().chain(check_ap(&one, 2.0, &lat)?.levels).fold(0.0f64, |m, (_, v)| m.max((v - 1.0).abs()));
    let a1 = monotone_a1_constant(50, 77)?;
    let sup_ok = (1.0 - 1e-3..=1.0).contains(&plus.sup_estimate);
    let two_ok = two.verdict == WeightVerdict::Unbounded && two.trend > 0.0;
    outcome(
        sup_ok && two_ok && flat < 1e-12 && a1 <= 1.0 + 1e-12,
        format!(
            "e^x: one-sided sup {:.6} in [0.999, 1], two-sided {:?} trend {:.2}; constant weight deviation {flat:.1e}; monotone A1+ constant {a1:.12} over 50 weights",
            plus.sup_estimate, two.verdict, two.trend
        ),
    )
}

fn duality() -> Result<Outcome> {
    let mut worst = 0.0f64;
    for a in alphas() {
        worst = worst.max(duality_error(a, 0.05, 20)?);
    }
    outcome(worst < 1e-6, format!("max relative defect {worst:.2e} over 20 Gaussian pairs per order (bound 1e-6)"))
}

fn main() {
    let criteria: [(&str, fn() -> Result<Outcome>); 9] = [
        ("eigen-relations", eigen_relations),
        ("inversion (fundamental theorem)", fftc),
        ("inversion kernel normalization", kernel_mass),
        ("extension problem", extension),
        ("Poisson multiplier", multiplier),
        ("two-sided identities", unification),
        ("maximum principle and Dirichlet problem", maximum_principle),
        ("one-sided weights", weights),
        ("duality", duality),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (pass, detail) = match run() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!pass);
        println!("criterion {} [{}] {name}: {detail} ({:.1}s)", k + 1, if pass { "PASS" } else { "FAIL" }, t.elapsed().as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
