//! The JSON run configuration.
//!
//! ```json
//! {
//!   "centers": [[0, 0, 0], [1, 0, 0]],
//!   "strengths": [[0, 0], [0, 0]],
//!   "tolerances": { "freq_tol": 1e-9, "cancel_tol": 1e-10, "gap_tol": 1e-9, "class_tol": 1e-8 },
//!   "counting": { "r_min": 20, "r_max": 200, "steps": 10 },
//!   "region": { "re_min": 0, "re_max": 20, "im_min": -5, "im_max": 0, "max_depth": 12 },
//!   "seed": 7
//! }
//! ```
//!
//! Only `centers` and `strengths` are required.

use std::path::Path;

use num_complex::Complex64;
use resonance_core::asymptotics::DEFAULT_CLASS_TOL;
use resonance_core::expoly::{ExpandOptions, DEFAULT_CANCEL_TOL, DEFAULT_FREQ_TOL};
use resonance_core::geometry::{validate_configuration, Configuration, Point, StrengthTuple};
use resonance_core::sizing::DEFAULT_GAP_TOL;
use resonance_core::zeros::Rect;
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_MAX_DEPTH: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub centers: Vec<Point>,
    pub strengths: Vec<[f64; 2]>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub counting: Option<CountingGrid>,
    #[serde(default)]
    pub region: Option<Region>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub freq_tol: f64,
    pub cancel_tol: f64,
    pub gap_tol: f64,
    pub class_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            freq_tol: DEFAULT_FREQ_TOL,
            cancel_tol: DEFAULT_CANCEL_TOL,
            gap_tol: DEFAULT_GAP_TOL,
            class_tol: DEFAULT_CLASS_TOL,
        }
    }
}

impl Tolerances {
    pub fn expand(&self) -> ExpandOptions {
        ExpandOptions {
            freq_tol: self.freq_tol,
            cancel_tol: self.cancel_tol,
        }
    }
}

/// `steps` evenly spaced radii from `r_min` to `r_max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountingGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub steps: usize,
}

impl CountingGrid {
    pub fn radii(&self) -> Result<Vec<f64>, CliError> {
        let ok = self.r_min.is_finite()
            && self.r_max.is_finite()
            && self.r_min > 0.0
            && self.steps >= 1
            && (self.r_max > self.r_min || (self.steps == 1 && self.r_max == self.r_min));
        if !ok {
            return Err(CliError::Config(format!(
                "bad counting grid: r_min {}, r_max {}, steps {}",
                self.r_min, self.r_max, self.steps
            )));
        }
        if self.steps == 1 {
            return Ok(vec![self.r_min]);
        }
        let h = (self.r_max - self.r_min) / (self.steps - 1) as f64;
        Ok((0..self.steps)
            .map(|k| if k + 1 == self.steps { self.r_max } else { self.r_min + h * k as f64 })
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Region {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    #[serde(default = "default_max_depth")]
    pub max_depth: usize,
}

fn default_max_depth() -> usize {
    DEFAULT_MAX_DEPTH
}

impl Region {
    pub fn rect(&self) -> Result<Rect, CliError> {
        let bounds = [self.re_min, self.re_max, self.im_min, self.im_max];
        if bounds.iter().any(|x| !x.is_finite()) || self.re_min > self.re_max || self.im_min > self.im_max {
            return Err(CliError::Config(format!("bad region: {bounds:?}")));
        }
        Ok(Rect::new(self.re_min, self.re_max, self.im_min, self.im_max))
    }
}

/// A configuration that passed validation.
pub struct Validated {
    pub raw: RunConfig,
    pub cfg: Configuration,
    pub a: StrengthTuple,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Validated, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let raw: RunConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        raw.validate()
    }

    pub fn validate(self) -> Result<Validated, CliError> {
        let cfg = validate_configuration(self.centers.clone())?;
        let strengths = self
            .strengths
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        let a = StrengthTuple::for_configuration(strengths, &cfg)?;
        let t = &self.tolerances;
        if [t.freq_tol, t.cancel_tol].iter().any(|x| !(*x >= 0.0))
            || [t.gap_tol, t.class_tol].iter().any(|x| !(*x > 0.0))
        {
            return Err(CliError::Config(format!("bad tolerances: {t:?}")));
        }
        Ok(Validated { raw: self, cfg, a })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<Validated, CliError> {
        serde_json::from_str::<RunConfig>(s)
            .map_err(|e| CliError::Config(e.to_string()))?
            .validate()
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let v = parse(r#"{"centers": [[0,0,0],[1,0,0]], "strengths": [[0,0],[1,-1]]}"#).unwrap();
        assert_eq!(v.raw.tolerances, Tolerances::default());
        assert_eq!(v.a.values()[1], Complex64::new(1.0, -1.0));
        assert!(v.raw.region.is_none());
    }

    #[test]
    fn rejects_missing_strengths_and_mismatch() {
        assert!(parse(r#"{"centers": [[0,0,0],[1,0,0]]}"#).is_err());
        assert!(parse(r#"{"centers": [[0,0,0],[1,0,0]], "strengths": [[0,0]]}"#).is_err());
        assert!(parse(r#"{"centers": [[0,0,0],[0,0,0]], "strengths": [[0,0],[0,0]]}"#).is_err());
    }

    #[test]
    fn partial_tolerances() {
        let v = parse(
            r#"{"centers": [[0,0,0],[1,0,0]], "strengths": [[0,0],[0,0]], "tolerances": {"gap_tol": 1e-6}}"#,
        )
        .unwrap();
        assert_eq!(v.raw.tolerances.gap_tol, 1e-6);
        assert_eq!(v.raw.tolerances.freq_tol, DEFAULT_FREQ_TOL);
    }

    #[test]
    fn grid_radii() {
        let g = CountingGrid { r_min: 20.0, r_max: 200.0, steps: 10 };
        let r = g.radii().unwrap();
        assert_eq!(r.len(), 10);
        assert_eq!(r[0], 20.0);
        assert_eq!(r[9], 200.0);
        assert!((r[1] - 40.0).abs() < 1e-12);
        assert!(CountingGrid { r_min: 5.0, r_max: 1.0, steps: 3 }.radii().is_err());
        assert!(CountingGrid { r_min: 0.0, r_max: 1.0, steps: 3 }.radii().is_err());
    }
}
