//! Weyl / non-Weyl classification and the empirical slope of N(R).
//!
//! Classification compares the effective size b_ν (top surviving frequency of
//! the characteristic determinant) with the size V(Y). The fitted slope of the
//! counting function is reported alongside but never used to classify.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expoly::{expand, ExpandOptions, FrequencyGroup};
use crate::geometry::{
    random_configuration, random_strengths, Configuration, StrengthTuple,
    DEFAULT_MIN_GAP_FRACTION,
};
use crate::permutations::enumerate_classes;
use crate::sizing::{is_generic_with, size_v, GenericityReport, SizeMode, DEFAULT_GAP_TOL};
use crate::zeros::{counting_function_for, CountOptions, ExpoFunction};

pub const DEFAULT_CLASS_TOL: f64 = 1e-8;

/// Radii below `SKIP_RADIUS_FACTOR / b_ν` are treated as transient by default.
pub const SKIP_RADIUS_FACTOR: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
}

/// Ordinary least squares of `counts` against `radii`, ignoring the first `skip` points.
pub fn fit_slope(radii: &[f64], counts: &[f64], skip: usize) -> Result<LineFit> {
    if radii.len() != counts.len() {
        return Err(Error::SizeMismatch {
            expected: radii.len(),
            found: counts.len(),
        });
    }
    let xs = radii.get(skip..).unwrap_or(&[]);
    let ys = counts.get(skip..).unwrap_or(&[]);
    if xs.len() < 3 {
        return Err(Error::TooFewPoints(xs.len()));
    }
    let m = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / m;
    let mean_y = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("all radii coincide".into()));
    }
    let slope = sxy / sxx;
    Ok(LineFit {
        slope,
        intercept: mean_y - slope * mean_x,
    })
}

/// Default counting grid `{20, 40, …, 200} · 2/b_ν`.
pub fn default_radii(b_nu: f64) -> Vec<f64> {
    (1..=10).map(|k| 20.0 * k as f64 * 2.0 / b_nu).collect()
}

/// Number of leading radii below `20/b_ν`.
pub fn default_skip(radii: &[f64], b_nu: f64) -> usize {
    radii
        .iter()
        .take_while(|&&r| r < SKIP_RADIUS_FACTOR / b_nu)
        .count()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Weyl,
    NonWeyl,
    Inconclusive,
}

/// Classifies `b_nu` against `v` with tolerance `class_tol · max(1, v)`.
pub fn classify_sizes(b_nu: f64, v: f64, class_tol: f64) -> Classification {
    let tol = class_tol * v.max(1.0);
    if (b_nu - v).abs() <= tol {
        Classification::Weyl
    } else if b_nu < v - tol {
        Classification::NonWeyl
    } else {
        Classification::Inconclusive
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalOptions {
    /// Counting radii; `None` selects [`default_radii`].
    pub radii: Option<Vec<f64>>,
    /// Leading radii left out of the fit; `None` selects [`default_skip`].
    pub skip: Option<usize>,
    pub count: CountOptions,
}

impl Default for EmpiricalOptions {
    fn default() -> Self {
        EmpiricalOptions {
            radii: None,
            skip: None,
            count: CountOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    pub expand: ExpandOptions,
    pub class_tol: f64,
    pub gap_tol: f64,
    /// Run the counting function and fit its slope.
    pub empirical: Option<EmpiricalOptions>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            expand: ExpandOptions::default(),
            class_tol: DEFAULT_CLASS_TOL,
            gap_tol: DEFAULT_GAP_TOL,
            empirical: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalSlope {
    pub radii: Vec<f64>,
    pub counts: Vec<usize>,
    pub winding_residuals: Vec<f64>,
    pub skip: usize,
    pub fitted_slope: f64,
    pub fitted_intercept: f64,
    /// π · fitted slope.
    pub w_est: f64,
    /// |w_est − b_ν| / b_ν.
    pub relative_slope_discrepancy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountingReport {
    pub n: usize,
    pub b_nu: f64,
    pub v: f64,
    pub classification: Classification,
    /// (b_ν − V) / max(1, V).
    pub relative_discrepancy: f64,
    pub class_tol: f64,
    pub top_group: FrequencyGroup,
    pub cancelled_frequencies: Vec<f64>,
    pub genericity: GenericityReport,
    pub empirical: Option<EmpiricalSlope>,
}

pub fn classify(
    a: &StrengthTuple,
    cfg: &Configuration,
    opts: &ClassifyOptions,
) -> Result<CountingReport> {
    let (e, report) = expand(a, cfg, &opts.expand)?;
    let b_nu = e.max_frequency();
    let v = size_v(cfg, SizeMode::Assignment)?.v;
    let classes = enumerate_classes(cfg.len())?;
    let genericity = is_generic_with(cfg, &classes, opts.gap_tol)?;
    let classification = classify_sizes(b_nu, v, opts.class_tol);

    let empirical = match &opts.empirical {
        None => None,
        Some(emp) => {
            let radii = emp.radii.clone().unwrap_or_else(|| default_radii(b_nu));
            let skip = emp.skip.unwrap_or_else(|| default_skip(&radii, b_nu));
            let f = ExpoFunction::new(e.clone());
            let zc = counting_function_for(&f, &radii, &emp.count)?;
            let counts: Vec<usize> = zc.iter().map(|c| c.count).collect();
            let fit = fit_slope(
                &radii,
                &counts.iter().map(|&c| c as f64).collect::<Vec<_>>(),
                skip,
            )?;
            let w_est = PI * fit.slope;
            Some(EmpiricalSlope {
                winding_residuals: zc.iter().map(|c| c.winding_residual).collect(),
                radii,
                counts,
                skip,
                fitted_slope: fit.slope,
                fitted_intercept: fit.intercept,
                w_est,
                relative_slope_discrepancy: (w_est - b_nu).abs() / b_nu,
            })
        }
    };

    Ok(CountingReport {
        n: cfg.len(),
        b_nu,
        v,
        classification,
        relative_discrepancy: (b_nu - v) / v.max(1.0),
        class_tol: opts.class_tol,
        top_group: report
            .top_group()
            .cloned()
            .expect("identity group always present"),
        cancelled_frequencies: report.cancelled_frequencies,
        genericity,
        empirical,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub box_side: f64,
    /// Sampler gap as a fraction of `box_side`.
    pub min_gap_fraction: f64,
    /// Strengths are drawn with parts uniform in `[-strength_scale, strength_scale]`.
    pub strength_scale: f64,
    pub gap_tol: f64,
    pub class_tol: f64,
    pub expand: ExpandOptions,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            box_side: 1.0,
            min_gap_fraction: DEFAULT_MIN_GAP_FRACTION,
            strength_scale: 1.0,
            gap_tol: DEFAULT_GAP_TOL,
            class_tol: DEFAULT_CLASS_TOL,
            expand: ExpandOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapStatistics {
    pub min: f64,
    pub median: f64,
    pub max: f64,
    /// `(k, m)`: m samples with min_gap in `[10^k, 10^{k+1})`.
    pub log10_histogram: Vec<(i32, usize)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NearCancellation {
    pub trial: usize,
    pub frequency: f64,
    pub residual_ratio: f64,
    pub cancelled: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub generic_count: usize,
    pub weyl_count: usize,
    pub generic_fraction: Option<f64>,
    pub weyl_fraction: Option<f64>,
    /// Largest |b_ν − V| / max(1, V) over all trials.
    pub max_relative_discrepancy: Option<f64>,
    pub min_gap: Option<GapStatistics>,
    pub near_cancellations: Vec<NearCancellation>,
}

/// Seed for trial `k` of a scan started from `seed`.
pub fn trial_seed(seed: u64, k: usize) -> u64 {
    // SplitMix64 finalizer over the stream position.
    let mut z = seed.wrapping_add((k as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct TrialOutcome {
    generic: bool,
    min_gap: f64,
    weyl: bool,
    discrepancy: f64,
    near: Vec<NearCancellation>,
}

/// Samples `trials` random configurations (with random strengths) and reports
/// how many are generic and how many are Weyl.
pub fn genericity_scan(
    n: usize,
    trials: usize,
    seed: u64,
    opts: &ScanOptions,
) -> Result<ScanSummary> {
    let classes = enumerate_classes(n)?;
    let min_gap = opts.min_gap_fraction * opts.box_side;
    let outcomes: Result<Vec<TrialOutcome>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let s = trial_seed(seed, trial);
            let cfg = random_configuration(n, s, opts.box_side, min_gap)?;
            let a = random_strengths(n, s ^ 0x5A5A_5A5A_5A5A_5A5A, opts.strength_scale);
            let genericity = is_generic_with(&cfg, &classes, opts.gap_tol)?;
            let (e, report) = expand(&a, &cfg, &opts.expand)?;
            let v = size_v(&cfg, SizeMode::Assignment)?.v;
            let b_nu = e.max_frequency();
            let near = report
                .groups
                .iter()
                .filter(|g| g.frequency > 0.0)
                .filter(|g| g.residual_ratio() <= 10.0 * opts.expand.cancel_tol)
                .map(|g| NearCancellation {
                    trial,
                    frequency: g.frequency,
                    residual_ratio: g.residual_ratio(),
                    cancelled: g.cancelled,
                })
                .collect();
            Ok(TrialOutcome {
                generic: genericity.is_generic,
                min_gap: genericity.min_gap,
                weyl: classify_sizes(b_nu, v, opts.class_tol) == Classification::Weyl,
                discrepancy: (b_nu - v).abs() / v.max(1.0),
                near,
            })
        })
        .collect();
    let outcomes = outcomes?;

    let generic_count = outcomes.iter().filter(|o| o.generic).count();
    let weyl_count = outcomes.iter().filter(|o| o.weyl).count();
    let frac = |k: usize| (trials > 0).then(|| k as f64 / trials as f64);
    let max_relative_discrepancy = outcomes.iter().map(|o| o.discrepancy).reduce(f64::max);

    let min_gap_stats = if outcomes.is_empty() {
        None
    } else {
        let mut gaps: Vec<f64> = outcomes.iter().map(|o| o.min_gap).collect();
        gaps.sort_by(f64::total_cmp);
        let mut histogram: Vec<(i32, usize)> = Vec::new();
        for &g in &gaps {
            let bucket = if g > 0.0 { g.log10().floor() as i32 } else { i32::MIN };
            match histogram.last_mut() {
                Some((b, m)) if *b == bucket => *m += 1,
                _ => histogram.push((bucket, 1)),
            }
        }
        Some(GapStatistics {
            min: gaps[0],
            median: gaps[gaps.len() / 2],
            max: gaps[gaps.len() - 1],
            log10_histogram: histogram,
        })
    };

    Ok(ScanSummary {
        n,
        trials,
        seed,
        generic_count,
        weyl_count,
        generic_fraction: frac(generic_count),
        weyl_fraction: frac(weyl_count),
        max_relative_discrepancy,
        min_gap: min_gap_stats,
        near_cancellations: outcomes.into_iter().flat_map(|o| o.near).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn exact_line() {
        let radii = [10.0, 20.0, 30.0];
        let counts: Vec<f64> = radii.iter().map(|r| 2.0 / PI * r).collect();
        let fit = fit_slope(&radii, &counts, 0).unwrap();
        assert!((fit.slope - 2.0 / PI).abs() < 1e-15);
        assert!(fit.intercept.abs() < 1e-13);
    }

    #[test]
    fn constant_counts() {
        let fit = fit_slope(&[1.0, 2.0, 3.0, 4.0], &[5.0; 4], 1).unwrap();
        assert_eq!(fit.slope, 0.0);
        assert_eq!(fit.intercept, 5.0);
    }

    #[test]
    fn too_few_points() {
        assert_eq!(
            fit_slope(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0], 1),
            Err(Error::TooFewPoints(2))
        );
    }

    #[test]
    fn size_classification() {
        assert_eq!(classify_sizes(4.0, 4.0, 1e-8), Classification::Weyl);
        assert_eq!(classify_sizes(3.0, 4.0, 1e-8), Classification::NonWeyl);
        assert_eq!(classify_sizes(4.1, 4.0, 1e-8), Classification::Inconclusive);
    }

    #[test]
    fn pair_is_weyl() {
        for d in [0.3, 1.0, 2.5] {
            let cfg = Configuration::new(vec![[0.0; 3], [0.0, d, 0.0]]).unwrap();
            let a = StrengthTuple::new(vec![Complex64::new(0.7, -0.1), Complex64::new(-2.0, 0.5)]).unwrap();
            let r = classify(&a, &cfg, &ClassifyOptions::default()).unwrap();
            assert_eq!(r.classification, Classification::Weyl);
            assert_eq!(r.b_nu, 2.0 * d);
            assert_eq!(r.v, 2.0 * d);
        }
    }

    #[test]
    fn empty_scan() {
        let s = genericity_scan(3, 0, 5, &ScanOptions::default()).unwrap();
        assert_eq!(s.trials, 0);
        assert_eq!(s.generic_fraction, None);
        assert!(s.min_gap.is_none());
        assert!(s.near_cancellations.is_empty());
    }

    #[test]
    fn scan_is_reproducible() {
        let a = genericity_scan(3, 50, 17, &ScanOptions::default()).unwrap();
        let b = genericity_scan(3, 50, 17, &ScanOptions::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.generic_fraction, Some(1.0));
    }

    #[test]
    fn trial_seeds_differ() {
        assert_ne!(trial_seed(1, 0), trial_seed(1, 1));
        assert_ne!(trial_seed(1, 0), trial_seed(2, 0));
    }
}
