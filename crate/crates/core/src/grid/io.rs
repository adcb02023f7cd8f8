//! CSV (`x,value`) plus JSON sidecar serialization of grid functions.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{GridFunction, TailModel};
use crate::error::{FracError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailSpec {
    pub kind: String,
    pub params: Vec<f64>,
    pub valid_from: f64,
}

impl TailSpec {
    fn of(t: &TailModel) -> Self {
        Self { kind: t.kind_name().to_string(), params: t.shape_params(), valid_from: t.valid_from }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSidecar {
    pub x0: f64,
    pub h: f64,
    pub n: usize,
    pub tail: TailSpec,
    #[serde(default = "zero_tail_spec")]
    pub left_tail: TailSpec,
}

fn zero_tail_spec() -> TailSpec {
    TailSpec { kind: "zero".into(), params: vec![], valid_from: 0.0 }
}

/// `path` with its extension replaced by `json`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("json")
}

/// Formats like C's `%.17g`, which round-trips every `f64`.
pub fn format_g17(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{v:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let m = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let digits = (16 - exp).max(0) as usize;
        trim_fraction(&format!("{v:.digits$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes `path` as CSV and the metadata next to it (same stem, `.json`).
pub fn write_grid_function(f: &GridFunction, path: &Path) -> Result<()> {
    let mut out = String::from("x,value\n");
    for (i, v) in f.values().iter().enumerate() {
        out.push_str(&format_g17(f.x(i)));
        out.push(',');
        out.push_str(&format_g17(*v));
        out.push('\n');
    }
    fs::write(path, out)?;
    let meta = GridSidecar {
        x0: f.x0(),
        h: f.h(),
        n: f.len(),
        tail: TailSpec::of(f.tail()),
        left_tail: TailSpec::of(f.left_tail()),
    };
    fs::write(sidecar_path(path), serde_json::to_string_pretty(&meta)? + "\n")?;
    Ok(())
}

/// Reads a grid function. Without a sidecar the spacing is inferred from the
/// abscissae and both tails are taken to be zero.
pub fn read_grid_function(path: &Path) -> Result<GridFunction> {
    let text = fs::read_to_string(path)?;
    let mut xs = Vec::new();
    let mut vs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split(',');
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(FracError::Parse(format!("{}:{}: expected two columns", path.display(), lineno + 1)));
        };
        match (a.trim().parse::<f64>(), b.trim().parse::<f64>()) {
            (Ok(x), Ok(v)) => {
                xs.push(x);
                vs.push(v);
            }
            _ if lineno == 0 => continue,
            _ => {
                return Err(FracError::Parse(format!("{}:{}: malformed number", path.display(), lineno + 1)));
            }
        }
    }
    if xs.len() < GridFunction::MIN_LEN {
        return Err(FracError::Parse(format!("{}: need at least {} rows", path.display(), GridFunction::MIN_LEN)));
    }
    let meta_path = sidecar_path(path);
    let (x0, h, tail, left) = if meta_path.exists() {
        let meta: GridSidecar = serde_json::from_str(&fs::read_to_string(&meta_path)?)?;
        if meta.n != xs.len() {
            return Err(FracError::Parse(format!("sidecar declares {} rows, CSV has {}", meta.n, xs.len())));
        }
        (
            meta.x0,
            meta.h,
            TailModel::from_shape(&meta.tail.kind, &meta.tail.params)?,
            TailModel::from_shape(&meta.left_tail.kind, &meta.left_tail.params)?,
        )
    } else {
        let h = (xs[xs.len() - 1] - xs[0]) / (xs.len() - 1) as f64;
        (xs[0], h, TailModel::zero(), TailModel::zero())
    };
    for (i, x) in xs.iter().enumerate() {
        if (x - (x0 + i as f64 * h)).abs() > 1e-9 * h.max(x.abs()) {
            return Err(FracError::Parse(format!("{}: abscissae are not uniform at row {}", path.display(), i + 1)));
        }
    }
    GridFunction::new(x0, h, vs, tail)?.with_left_tail(left)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{one_sided_exp, shifted_square_decay};

    #[test]
    fn g17_format() {
        assert_eq!(format_g17(1.0), "1");
        assert_eq!(format_g17(0.1), "0.10000000000000001");
        assert_eq!(format_g17(1e-5), "1.0000000000000001e-05");
        assert_eq!(format_g17(-2.5e20), "-2.5e+20");
        assert_eq!(format_g17(123.5), "123.5");
        for v in [std::f64::consts::PI, 1.0 / 3.0, 6.02e23, -7.1e-300] {
            assert_eq!(format_g17(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        for f in [one_sided_exp(1.5, 5.0, 0.1).unwrap(), shifted_square_decay(0.5, 4.0, 0.25).unwrap()] {
            let p = dir.path().join("f.csv");
            write_grid_function(&f, &p).unwrap();
            let g = read_grid_function(&p).unwrap();
            assert_eq!(f, g);
        }
    }

    #[test]
    fn malformed_input_is_a_parse_error() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.csv");
        fs::write(&p, "x,value\n0,1\n0.1,abc\n").unwrap();
        assert!(matches!(read_grid_function(&p), Err(FracError::Parse(_))));
    }
}
