//! The characteristic determinant as an exponential polynomial
//! `D(z) = Σ_j P_j(z) e^{i b_j z}`, built from the Leibniz expansion.
//!
//! Each permutation σ contributes `ε_σ K₁(σ) e^{i z V_σ} ∏_{σ(j)=j} (iz − 4π a_j)`.
//! Terms are grouped by frequency, summed, and groups whose sum vanishes (up to a
//! relative threshold) are dropped and reported as cancelled.

use std::collections::{HashMap, HashSet};
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{check_compatible, distance_matrix, Configuration, DistanceMatrix, StrengthTuple};
use crate::permutations::{
    all_permutations, edge_multigraph, permutation_sign, Permutation, ENUMERATION_CAP,
};
use crate::poly::Polynomial;
use crate::sizing::for_each_bond;

pub const DEFAULT_FREQ_TOL: f64 = 1e-9;
pub const DEFAULT_CANCEL_TOL: f64 = 1e-10;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, PartialEq)]
pub struct LeibnizTerm {
    pub sigma: Permutation,
    /// V_σ(Y).
    pub frequency: f64,
    /// ε_σ.
    pub sign: i32,
    /// K₁(σ, Y) = ∏_{σ(j)≠j} |y_j − y_σ(j)|⁻¹.
    pub k1: f64,
    pub fixed_points: Vec<usize>,
    /// `sign · k1 · ∏_{j fixed} (iz − 4π a_j)`.
    pub polynomial: Polynomial,
}

/// `iz − 4π a_j`.
fn center_factor(a: Complex64) -> Polynomial {
    Polynomial::linear(-4.0 * PI * a, I)
}

fn fixed_product(a: &StrengthTuple, fixed: impl Iterator<Item = usize>) -> Polynomial {
    fixed.fold(Polynomial::one(), |acc, j| &acc * &center_factor(a.values()[j]))
}

fn frequency_and_k1(dist: &DistanceMatrix, sigma: &Permutation) -> (f64, f64) {
    let mut v = 0.0;
    let mut prod = 1.0;
    for_each_bond(dist, sigma, |d| {
        v += d;
        prod *= d;
    });
    (v, 1.0 / prod)
}

fn check_size(a: &StrengthTuple, cfg: &Configuration) -> Result<()> {
    check_compatible(a, cfg)?;
    if cfg.len() > ENUMERATION_CAP {
        return Err(Error::TooLarge {
            n: cfg.len(),
            cap: ENUMERATION_CAP,
        });
    }
    Ok(())
}

/// One term per permutation of S_N, in lexicographic order.
pub fn leibniz_terms(a: &StrengthTuple, cfg: &Configuration) -> Result<Vec<LeibnizTerm>> {
    check_size(a, cfg)?;
    let dist = distance_matrix(cfg);
    Ok(all_permutations(cfg.len())
        .map(|sigma| {
            let (frequency, k1) = frequency_and_k1(&dist, &sigma);
            let sign = permutation_sign(&sigma);
            let fixed_points: Vec<usize> = sigma.fixed_points().collect();
            let polynomial = fixed_product(a, fixed_points.iter().copied())
                .scale(Complex64::new(sign as f64 * k1, 0.0));
            LeibnizTerm {
                sigma,
                frequency,
                sign,
                k1,
                fixed_points,
                polynomial,
            }
        })
        .collect())
}

/// One summand `P(z) e^{i b z}` of an exponential polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpoTerm {
    pub frequency: f64,
    pub coefficients: Polynomial,
}

/// `Σ_j P_j(z) e^{i b_j z}` with `0 ≤ b_0 < b_1 < …` and every `P_j ≢ 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<ExpoTerm>", into = "Vec<ExpoTerm>")]
pub struct ExpoPolynomial {
    terms: Vec<ExpoTerm>,
}

impl TryFrom<Vec<ExpoTerm>> for ExpoPolynomial {
    type Error = Error;

    fn try_from(terms: Vec<ExpoTerm>) -> Result<Self> {
        ExpoPolynomial::new(terms)
    }
}

impl From<ExpoPolynomial> for Vec<ExpoTerm> {
    fn from(e: ExpoPolynomial) -> Self {
        e.terms
    }
}

impl ExpoPolynomial {
    /// Zero polynomials are dropped; frequencies must be finite, nonnegative and
    /// strictly increasing.
    pub fn new(terms: Vec<ExpoTerm>) -> Result<Self> {
        let terms: Vec<ExpoTerm> = terms
            .into_iter()
            .filter(|t| !t.coefficients.is_zero())
            .collect();
        for t in &terms {
            if !(t.frequency >= 0.0) || !t.frequency.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "frequency {} is not a finite nonnegative number",
                    t.frequency
                )));
            }
        }
        if terms.windows(2).any(|w| w[0].frequency >= w[1].frequency) {
            return Err(Error::InvalidArgument(
                "frequencies must be strictly increasing".into(),
            ));
        }
        Ok(ExpoPolynomial { terms })
    }

    pub fn terms(&self) -> &[ExpoTerm] {
        &self.terms
    }

    pub fn frequencies(&self) -> Vec<f64> {
        self.terms.iter().map(|t| t.frequency).collect()
    }

    /// Coefficient polynomial at `frequency`, if that frequency is present.
    pub fn coefficient_at(&self, frequency: f64) -> Option<&Polynomial> {
        self.terms
            .iter()
            .find(|t| t.frequency == frequency)
            .map(|t| &t.coefficients)
    }

    /// ν, the index of the top frequency.
    pub fn nu(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    pub fn max_frequency(&self) -> f64 {
        self.terms.last().map_or(0.0, |t| t.frequency)
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.coefficients.eval(z) * (I * z * t.frequency).exp())
            .sum()
    }

    /// `(P' + i b P) e^{i b z}` termwise.
    pub fn derivative(&self) -> ExpoPolynomial {
        let terms = self
            .terms
            .iter()
            .map(|t| ExpoTerm {
                frequency: t.frequency,
                coefficients: &t.coefficients.derivative()
                    + &t.coefficients.scale(I * t.frequency),
            })
            .filter(|t| !t.coefficients.is_zero())
            .collect();
        ExpoPolynomial { terms }
    }

    /// Value at `z` divided by `e^{s}` where `s = max_j Re(i b_j z)`, together
    /// with `s`. Finite for any `z` at which the polynomial parts are finite.
    pub fn evaluate_scaled(&self, z: Complex64) -> (Complex64, f64) {
        let log_scale = self.log_scale(z);
        let value = self.sum_scaled(z, log_scale);
        (value, log_scale)
    }

    pub(crate) fn log_scale(&self, z: Complex64) -> f64 {
        self.terms
            .iter()
            .map(|t| -t.frequency * z.im)
            .fold(f64::NEG_INFINITY, f64::max)
            .max(0.0)
    }

    pub(crate) fn sum_scaled(&self, z: Complex64, log_scale: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| {
                let modulus = (-t.frequency * z.im - log_scale).exp();
                let phase = Complex64::from_polar(modulus, t.frequency * z.re);
                t.coefficients.eval(z) * phase
            })
            .sum()
    }
}

/// Largest surviving frequency b_ν, the effective size.
pub fn effective_size(e: &ExpoPolynomial) -> f64 {
    e.max_frequency()
}

pub fn evaluate(e: &ExpoPolynomial, z: Complex64) -> Complex64 {
    e.evaluate(z)
}

pub fn derivative(e: &ExpoPolynomial) -> ExpoPolynomial {
    e.derivative()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpandOptions {
    /// Relative clustering tolerance; absolute gap is `freq_tol · max(1, max V_σ)`.
    pub freq_tol: f64,
    /// A group is cancelled when its summed coefficients are at most
    /// `cancel_tol` times the largest coefficient entering the sum.
    pub cancel_tol: f64,
}

impl Default for ExpandOptions {
    fn default() -> Self {
        ExpandOptions {
            freq_tol: DEFAULT_FREQ_TOL,
            cancel_tol: DEFAULT_CANCEL_TOL,
        }
    }
}

/// Summary of one frequency cluster of the Leibniz sum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGroup {
    pub frequency: f64,
    /// Number of permutations in the cluster.
    pub members: usize,
    /// Number of distinct edge-equivalence classes in the cluster.
    pub classes: usize,
    /// Largest coefficient magnitude over the individual terms.
    pub pre_sum_scale: f64,
    /// Largest coefficient magnitude of the summed polynomial.
    pub residual_scale: f64,
    pub cancelled: bool,
    /// Degree of the summed polynomial; `None` if it is identically zero.
    pub degree: Option<usize>,
}

impl FrequencyGroup {
    /// `residual_scale / pre_sum_scale`.
    pub fn residual_ratio(&self) -> f64 {
        if self.pre_sum_scale > 0.0 {
            self.residual_scale / self.pre_sum_scale
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CancellationReport {
    pub groups: Vec<FrequencyGroup>,
    pub cancelled_frequencies: Vec<f64>,
    /// Absolute clustering gap that was used.
    pub freq_gap: f64,
    pub cancel_tol: f64,
}

impl CancellationReport {
    /// Largest Leibniz frequency, i.e. V(Y).
    pub fn max_leibniz_frequency(&self) -> f64 {
        self.groups.last().map_or(0.0, |g| g.frequency)
    }

    pub fn top_group(&self) -> Option<&FrequencyGroup> {
        self.groups.last()
    }
}

struct Record {
    frequency: f64,
    coefficient: f64,
    fixed_mask: u32,
    image: [u8; ENUMERATION_CAP],
}

/// Canonical form of the characteristic determinant plus a report on every
/// frequency cluster of the Leibniz expansion.
pub fn expand(
    a: &StrengthTuple,
    cfg: &Configuration,
    opts: &ExpandOptions,
) -> Result<(ExpoPolynomial, CancellationReport)> {
    check_size(a, cfg)?;
    if !(opts.freq_tol >= 0.0) || !(opts.cancel_tol >= 0.0) {
        return Err(Error::InvalidArgument(
            "tolerances must be nonnegative".into(),
        ));
    }
    let n = cfg.len();
    let dist = distance_matrix(cfg);

    // Lexicographic enumeration; the Vec index is the lexicographic rank.
    let mut records: Vec<Record> = all_permutations(n)
        .map(|sigma| {
            let (frequency, k1) = frequency_and_k1(&dist, &sigma);
            let sign = permutation_sign(&sigma) as f64;
            let fixed_mask = sigma.fixed_points().fold(0u32, |m, j| m | (1 << j));
            let mut image = [0u8; ENUMERATION_CAP];
            for (slot, &s) in image.iter_mut().zip(sigma.image()) {
                *slot = s as u8;
            }
            Record {
                frequency,
                coefficient: sign * k1,
                fixed_mask,
                image,
            }
        })
        .collect();

    let mut order: Vec<usize> = (0..records.len()).collect();
    order.sort_by(|&x, &y| {
        records[x]
            .frequency
            .total_cmp(&records[y].frequency)
            .then(x.cmp(&y))
    });
    let v_max = order.last().map_or(0.0, |&k| records[k].frequency);
    let freq_gap = opts.freq_tol * v_max.max(1.0);

    let mut clusters: Vec<Vec<usize>> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for &k in &order {
        let f = records[k].frequency;
        if clusters.is_empty() || f - last > freq_gap {
            clusters.push(Vec::new());
        }
        clusters.last_mut().unwrap().push(k);
        last = f;
    }

    let mut fixed_cache: HashMap<u32, Polynomial> = HashMap::new();
    let mut terms = Vec::new();
    let mut groups = Vec::with_capacity(clusters.len());
    let mut cancelled_frequencies = Vec::new();
    for mut members in clusters {
        members.sort_unstable();
        let contains_identity = members[0] == 0;
        let frequency = if contains_identity {
            0.0
        } else {
            members.iter().map(|&k| records[k].frequency).sum::<f64>() / members.len() as f64
        };

        let mut sum = Polynomial::zero();
        let mut pre_sum_scale: f64 = 0.0;
        let mut classes = HashSet::new();
        for &k in &members {
            let rec = &records[k];
            let base = fixed_cache.entry(rec.fixed_mask).or_insert_with(|| {
                fixed_product(a, (0..n).filter(|j| rec.fixed_mask & (1 << j) != 0))
            });
            let term = base.scale(Complex64::new(rec.coefficient, 0.0));
            pre_sum_scale = pre_sum_scale.max(term.max_abs_coeff());
            sum += &term;
            let sigma = Permutation::new(rec.image[..n].iter().map(|&s| s as usize).collect())
                .expect("stored image is a permutation");
            classes.insert(edge_multigraph(&sigma).edges().collect::<Vec<_>>());
        }
        let residual_scale = sum.max_abs_coeff();
        let cancelled = residual_scale <= opts.cancel_tol * pre_sum_scale && !contains_identity;
        groups.push(FrequencyGroup {
            frequency,
            members: members.len(),
            classes: classes.len(),
            pre_sum_scale,
            residual_scale,
            cancelled,
            degree: sum.degree(),
        });
        if cancelled {
            cancelled_frequencies.push(frequency);
        } else {
            terms.push(ExpoTerm {
                frequency,
                coefficients: sum,
            });
        }
    }
    records.clear();

    let report = CancellationReport {
        groups,
        cancelled_frequencies,
        freq_gap,
        cancel_tol: opts.cancel_tol,
    };
    Ok((ExpoPolynomial { terms }, report))
}

/// The `b = 0` part alone: `∏_j (iz − 4π a_j)`.
pub fn p0_only(a: &StrengthTuple) -> ExpoPolynomial {
    ExpoPolynomial {
        terms: vec![ExpoTerm {
            frequency: 0.0,
            coefficients: fixed_product(a, 0..a.len()),
        }],
    }
}
