use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::grid::GridFunction;

/// Campaign parameters. The TOML file uses the flag names with `_` for `-`;
/// unknown keys are rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub alpha: Option<Vec<f64>>,
    pub eps: Option<Vec<f64>>,
    pub grid_n: Option<usize>,
    pub grid_h: Option<f64>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
    pub oracle: Option<bool>,
    pub suite: Option<String>,
}

impl CampaignConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn validate(&self) -> Result<(), String> {
        if let Some(a) = &self.alpha {
            if a.is_empty() {
                return Err("alpha list is empty".into());
            }
            if let Some(bad) = a.iter().find(|v| !(**v > 0.0 && **v < 1.0)) {
                return Err(format!("alpha must lie in (0,1), got {bad}"));
            }
        }
        if let Some(e) = &self.eps {
            if e.is_empty() || e.iter().any(|v| !(*v > 0.0 && v.is_finite())) || e.windows(2).any(|w| !(w[1] < w[0])) {
                return Err("eps must be a nonempty, positive, strictly decreasing list".into());
            }
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(format!("tol must be positive, got {t}"));
            }
        }
        if let Some(h) = self.grid_h {
            if !(h > 0.0 && h.is_finite()) {
                return Err(format!("grid-h must be positive, got {h}"));
            }
        }
        if let Some(n) = self.grid_n {
            if n < GridFunction::MIN_LEN {
                return Err(format!("grid-n must be at least {}, got {n}", GridFunction::MIN_LEN));
            }
        }
        if let Some(s) = &self.suite {
            if s.trim().is_empty() {
                return Err("suite name is empty".into());
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_key() {
        let c = CampaignConfig::parse("alpha = [0.5, 0.25]\neps = [0.1, 0.01]\ngrid_n = 101\ngrid_h = 0.02\ntol = 1e-4\nout = \"r.json\"\noracle = true\nsuite = \"gamma\"\n").unwrap();
        assert_eq!(c.alpha, Some(vec![0.5, 0.25]));
        assert_eq!(c.grid_n, Some(101));
        assert_eq!(c.oracle, Some(true));
        assert_eq!(c.suite.as_deref(), Some("gamma"));
    }

    #[test]
    fn rejects_unknown_keys_and_bad_values() {
        assert!(CampaignConfig::parse("alpah = [0.5]").is_err());
        let bad = [
            CampaignConfig { alpha: Some(vec![1.0]), ..Default::default() },
            CampaignConfig { eps: Some(vec![0.01, 0.1]), ..Default::default() },
            CampaignConfig { tol: Some(0.0), ..Default::default() },
            CampaignConfig { suite: Some(String::new()), ..Default::default() },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "{c:?}");
        }
        assert!(CampaignConfig::default().validate().is_ok());
    }
}
