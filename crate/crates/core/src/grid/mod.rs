//! Sampled functions on uniform grids, their tail models, and the quadrature
//! engines that integrate them against singular kernels.

mod engine;
mod io;
mod quad;
mod tail;
mod testfn;

pub use engine::{integrate_right_tail, Kernel, KernelTable, QuadResult};
pub use io::{format_g17, read_grid_function, sidecar_path, write_grid_function, GridSidecar, TailSpec};
pub use quad::{GaussLegendre, QuadratureSpec};
pub(crate) use quad::Graded;
pub use tail::{TailKind, TailModel};
pub use testfn::{bump, constant, gaussian, indicator, one_sided_exp, shifted_square_decay, zero};

use std::sync::OnceLock;

use crate::error::{FracError, Result};

/// Uniform samples x_i = x0 + i·h of a real function together with models for
/// its behaviour beyond both ends of the grid.
///
/// The left tail is stored in reflected coordinates: for x < x0 the value is
/// `left_tail.eval(-x)`. This keeps every tail model a right tail and makes
/// [`GridFunction::reflect`] a swap.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    x0: f64,
    h: f64,
    values: Vec<f64>,
    tail: TailModel,
    left_tail: TailModel,
}

impl GridFunction {
    pub const MIN_LEN: usize = 8;

    /// Builds a grid function with the given right tail and a zero left tail.
    /// The tail is anchored to the last sample so the model is continuous there.
    pub fn new(x0: f64, h: f64, values: Vec<f64>, tail: TailModel) -> Result<Self> {
        if !x0.is_finite() || !(h > 0.0) || !h.is_finite() {
            return Err(FracError::domain(format!("invalid grid x0 = {x0}, h = {h}")));
        }
        if values.len() < Self::MIN_LEN {
            return Err(FracError::domain(format!(
                "grid needs at least {} samples, got {}",
                Self::MIN_LEN,
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(FracError::domain(format!("non-finite sample at index {i}")));
        }
        let xmax = x0 + (values.len() - 1) as f64 * h;
        let last = *values.last().unwrap();
        let first = values[0];
        let tail = tail.anchored(xmax, last)?;
        let left_tail = TailModel::zero().anchored(-x0, first)?;
        Ok(Self { x0, h, values, tail, left_tail })
    }

    /// Replaces the left tail (given in reflected coordinates, i.e. as a model
    /// of x ↦ f(−x) for x > −x0).
    pub fn with_left_tail(mut self, left_tail: TailModel) -> Result<Self> {
        self.left_tail = left_tail.anchored(-self.x0, self.values[0])?;
        Ok(self)
    }

    /// Samples `f` at `n` nodes starting at `x0`.
    pub fn from_fn(x0: f64, h: f64, n: usize, f: impl Fn(f64) -> f64, tail: TailModel) -> Result<Self> {
        let values = (0..n).map(|i| f(x0 + i as f64 * h)).collect();
        Self::new(x0, h, values, tail)
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tail(&self) -> &TailModel {
        &self.tail
    }

    pub fn left_tail(&self) -> &TailModel {
        &self.left_tail
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.h
    }

    pub fn xmax(&self) -> f64 {
        self.x(self.values.len() - 1)
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.x(i)).collect()
    }

    /// Nearest node index to `x`, clamped to the grid.
    pub fn nearest_index(&self, x: f64) -> usize {
        let k = ((x - self.x0) / self.h).round();
        k.clamp(0.0, (self.len() - 1) as f64) as usize
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Value at an arbitrary abscissa: cubic interpolation inside the grid,
    /// tail models outside.
    pub fn eval(&self, x: f64) -> f64 {
        if x > self.xmax() {
            return self.tail.eval(x);
        }
        if x < self.x0 {
            return self.left_tail.eval(-x);
        }
        let n = self.len();
        let s = (x - self.x0) / self.h;
        let j = (s.floor() as usize).min(n - 2);
        let u = s - j as f64;
        let c = self.cell_poly(j);
        c[0] + u * (c[1] + u * (c[2] + u * c[3]))
    }

    /// Monomial coefficients of the interpolating cubic on cell j = [x_j, x_{j+1}]
    /// in the local variable u = (x − x_j)/h ∈ [0,1]. The stencil is j−1..j+2,
    /// shifted inward at the ends of the grid.
    pub fn cell_poly(&self, j: usize) -> [f64; 4] {
        let n = self.len();
        debug_assert!(j + 1 < n);
        let (start, table) = if j == 0 {
            (0, &stencil_tables()[0])
        } else if j + 2 >= n {
            (n - 4, &stencil_tables()[2])
        } else {
            (j - 1, &stencil_tables()[1])
        };
        let f = &self.values[start..start + 4];
        let mut out = [0.0; 4];
        for (k, row) in table.iter().enumerate() {
            out[k] = row[0] * f[0] + row[1] * f[1] + row[2] * f[2] + row[3] * f[3];
        }
        out
    }

    /// First and second derivatives with respect to u = t/h of the function
    /// just to the right of node i (one-sided, using the cell or the tail).
    pub(crate) fn right_taylor(&self, i: usize) -> [f64; 3] {
        if i + 1 < self.len() {
            let c = self.cell_poly(i);
            [c[1], c[2], c[3]]
        } else {
            let (d1, d2) = self.tail.derivatives_at_anchor();
            [d1 * self.h, 0.5 * d2 * self.h * self.h, 0.0]
        }
    }

    /// The function x ↦ f(−x).
    pub fn reflect(&self) -> Self {
        let mut values = self.values.clone();
        values.reverse();
        Self {
            x0: -self.xmax(),
            h: self.h,
            values,
            tail: self.left_tail.clone(),
            left_tail: self.tail.clone(),
        }
    }

    /// Same grid and tail kinds, new samples; tails are re-anchored.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::new(self.x0, self.h, values, self.tail.clone())?.with_left_tail(self.left_tail.clone())
    }

    /// Same grid with explicitly supplied tails.
    pub fn with_values_and_tails(&self, values: Vec<f64>, tail: TailModel, left_tail: TailModel) -> Result<Self> {
        Self::new(self.x0, self.h, values, tail)?.with_left_tail(left_tail)
    }

    /// a·self + b·other on a common grid; tails must be of the same kind.
    pub fn lin_comb(&self, a: f64, other: &Self, b: f64) -> Result<Self> {
        self.check_same_grid(other)?;
        let values = self.values.iter().zip(&other.values).map(|(x, y)| a * x + b * y).collect();
        let tail = self.tail.combine(a, &other.tail, b)?;
        let left = self.left_tail.combine(a, &other.left_tail, b)?;
        self.with_values_and_tails(values, tail, left)
    }

    pub fn scale(&self, a: f64) -> Self {
        let values = self.values.iter().map(|v| a * v).collect();
        Self {
            values,
            tail: self.tail.scaled(a),
            left_tail: self.left_tail.scaled(a),
            ..self.clone()
        }
    }

    pub fn check_same_grid(&self, other: &Self) -> Result<()> {
        let same = self.len() == other.len()
            && (self.x0 - other.x0).abs() <= 1e-12 * (1.0 + self.x0.abs())
            && (self.h - other.h).abs() <= 1e-12 * self.h;
        if same {
            Ok(())
        } else {
            Err(FracError::Precondition("grid functions live on different grids".into()))
        }
    }

    /// Every `step`-th sample starting at node 0, with the tails re-anchored.
    pub fn subsample(&self, step: usize) -> Result<Self> {
        let values: Vec<f64> = self.values.iter().step_by(step.max(1)).copied().collect();
        Self::new(self.x0, self.h * step as f64, values, self.tail.clone())?.with_left_tail(self.left_tail.clone())
    }

    /// Trapezoidal integral of the samples over the grid.
    pub fn trapezoid(&self) -> f64 {
        let v = &self.values;
        let inner: f64 = v[1..v.len() - 1].iter().sum();
        self.h * (inner + 0.5 * (v[0] + v[v.len() - 1]))
    }

    /// Index range of the interior nodes left after dropping `fraction` of the
    /// grid on each side.
    pub fn interior(&self, fraction: f64) -> std::ops::Range<usize> {
        let m = (self.len() as f64 * fraction).ceil() as usize;
        m.min(self.len() / 2)..self.len().saturating_sub(m).max(self.len() / 2)
    }
}

/// Monomial-coefficient matrices of the four-point Lagrange interpolant for
/// node offsets {0,1,2,3}, {−1,0,1,2} and {−2,−1,0,1}.
fn stencil_tables() -> &'static [[[f64; 4]; 4]; 3] {
    static TABLES: OnceLock<[[[f64; 4]; 4]; 3]> = OnceLock::new();
    TABLES.get_or_init(|| [lagrange_monomials(0.0), lagrange_monomials(-1.0), lagrange_monomials(-2.0)])
}

fn lagrange_monomials(first: f64) -> [[f64; 4]; 4] {
    let nodes = [first, first + 1.0, first + 2.0, first + 3.0];
    // table[k][m] = coefficient of u^k in the m-th Lagrange basis polynomial
    let mut table = [[0.0; 4]; 4];
    for m in 0..4 {
        let mut poly = [1.0, 0.0, 0.0, 0.0];
        let mut denom = 1.0;
        for (l, &xl) in nodes.iter().enumerate() {
            if l == m {
                continue;
            }
            denom *= nodes[m] - xl;
            let mut next = [0.0; 4];
            for d in 0..3 {
                next[d + 1] += poly[d];
                next[d] -= xl * poly[d];
            }
            poly = next;
        }
        for k in 0..4 {
            table[k][m] = poly[k] / denom;
        }
    }
    table
}
