//! Configurations of interaction centers in R³ and their strength tuples.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permutations::Permutation;

pub type Point = [f64; 3];

/// Two centers closer than this (in configuration length units) are treated as coincident.
pub const COINCIDENCE_THRESHOLD: f64 = 1e-12;

/// Default sampler gap, as a fraction of the box side.
pub const DEFAULT_MIN_GAP_FRACTION: f64 = 1e-3;

const MAX_SAMPLING_ATTEMPTS_PER_CENTER: usize = 10_000;

fn dist(p: &Point, q: &Point) -> f64 {
    let dx = p[0] - q[0];
    let dy = p[1] - q[1];
    let dz = p[2] - q[2];
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// An ordered tuple of N ≥ 2 pairwise distinct centers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct Configuration {
    centers: Vec<Point>,
}

impl TryFrom<Vec<Point>> for Configuration {
    type Error = Error;

    fn try_from(raw: Vec<Point>) -> Result<Self> {
        validate_configuration(raw)
    }
}

impl From<Configuration> for Vec<Point> {
    fn from(cfg: Configuration) -> Self {
        cfg.centers
    }
}

/// Checks that there are at least two centers, all finite and pairwise distinct.
pub fn validate_configuration(raw: Vec<Point>) -> Result<Configuration> {
    if raw.len() < 2 {
        return Err(Error::TooFewCenters(raw.len()));
    }
    if let Some(idx) = raw.iter().position(|p| p.iter().any(|c| !c.is_finite())) {
        return Err(Error::NonFiniteCoordinate(idx));
    }
    let mut closest: Option<(usize, usize, f64)> = None;
    for i in 0..raw.len() {
        for j in i + 1..raw.len() {
            let d = dist(&raw[i], &raw[j]);
            if closest.map_or(true, |(_, _, best)| d < best) {
                closest = Some((i, j, d));
            }
        }
    }
    if let Some((first, second, distance)) = closest {
        if distance <= COINCIDENCE_THRESHOLD {
            return Err(Error::CoincidentCenters {
                first,
                second,
                distance,
            });
        }
    }
    Ok(Configuration { centers: raw })
}

impl Configuration {
    pub fn new(raw: Vec<Point>) -> Result<Self> {
        validate_configuration(raw)
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    pub fn centers(&self) -> &[Point] {
        &self.centers
    }

    pub fn distance(&self, i: usize, j: usize) -> f64 {
        dist(&self.centers[i], &self.centers[j])
    }

    /// Smallest pairwise distance between centers.
    pub fn min_distance(&self) -> f64 {
        let n = self.len();
        let mut best = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                best = best.min(self.distance(i, j));
            }
        }
        best
    }

    /// Applies `x ↦ rotation · x + translation` to every center.
    pub fn rigid_motion(&self, rotation: &[[f64; 3]; 3], translation: &Point) -> Result<Self> {
        let centers = self
            .centers
            .iter()
            .map(|p| {
                let mut q = *translation;
                for (r, row) in rotation.iter().enumerate() {
                    q[r] += row[0] * p[0] + row[1] * p[1] + row[2] * p[2];
                }
                q
            })
            .collect();
        validate_configuration(centers)
    }

    /// New configuration whose center `perm(j)` is the old center `j`.
    pub fn relabel(&self, perm: &Permutation) -> Result<Self> {
        check_len(self.len(), perm.len())?;
        let mut centers = vec![[0.0; 3]; self.len()];
        for (j, p) in self.centers.iter().enumerate() {
            centers[perm.apply(j)] = *p;
        }
        Ok(Configuration { centers })
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::SizeMismatch { expected, found });
    }
    Ok(())
}

/// The strength parameters a_j, one per center. Every entry is finite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct StrengthTuple {
    strengths: Vec<Complex64>,
}

impl TryFrom<Vec<Complex64>> for StrengthTuple {
    type Error = Error;

    fn try_from(raw: Vec<Complex64>) -> Result<Self> {
        StrengthTuple::new(raw)
    }
}

impl From<StrengthTuple> for Vec<Complex64> {
    fn from(a: StrengthTuple) -> Self {
        a.strengths
    }
}

impl StrengthTuple {
    pub fn new(strengths: Vec<Complex64>) -> Result<Self> {
        if let Some(idx) = strengths.iter().position(|a| !a.is_finite()) {
            return Err(Error::NonFiniteStrength(idx));
        }
        Ok(StrengthTuple { strengths })
    }

    /// Builds a tuple and checks that its length matches `cfg`.
    pub fn for_configuration(strengths: Vec<Complex64>, cfg: &Configuration) -> Result<Self> {
        check_len(cfg.len(), strengths.len())?;
        Self::new(strengths)
    }

    pub fn zeros(n: usize) -> Self {
        StrengthTuple {
            strengths: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn len(&self) -> usize {
        self.strengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strengths.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.strengths
    }

    pub fn relabel(&self, perm: &Permutation) -> Result<Self> {
        check_len(self.len(), perm.len())?;
        let mut strengths = vec![Complex64::new(0.0, 0.0); self.len()];
        for (j, a) in self.strengths.iter().enumerate() {
            strengths[perm.apply(j)] = *a;
        }
        Ok(StrengthTuple { strengths })
    }
}

/// Ensures a strength tuple and a configuration describe the same number of centers.
pub fn check_compatible(a: &StrengthTuple, cfg: &Configuration) -> Result<()> {
    check_len(cfg.len(), a.len())
}

/// Symmetric matrix of pairwise center distances with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks(self.n)
    }

    pub fn max(&self) -> f64 {
        self.entries.iter().copied().fold(0.0, f64::max)
    }
}

pub fn distance_matrix(cfg: &Configuration) -> DistanceMatrix {
    let n = cfg.len();
    let mut entries = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let d = cfg.distance(i, j);
            entries[i * n + j] = d;
            entries[j * n + i] = d;
        }
    }
    DistanceMatrix { n, entries }
}

pub fn scale_configuration(cfg: &Configuration, factor: f64) -> Result<Configuration> {
    if !(factor > 0.0) || !factor.is_finite() {
        return Err(Error::NonpositiveScale(factor));
    }
    let centers = cfg
        .centers
        .iter()
        .map(|p| [p[0] * factor, p[1] * factor, p[2] * factor])
        .collect();
    validate_configuration(centers)
}

/// Samples `n` centers uniformly in `[0, box_side]³` with pairwise distances at least `min_gap`.
///
/// Each center is drawn by rejection against the ones already placed. The result
/// depends only on the arguments.
pub fn random_configuration(
    n: usize,
    seed: u64,
    box_side: f64,
    min_gap: f64,
) -> Result<Configuration> {
    if n < 2 {
        return Err(Error::TooFewCenters(n));
    }
    if !(box_side > 0.0) || !box_side.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "box side must be positive, got {box_side}"
        )));
    }
    if !(min_gap >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "min_gap must be nonnegative, got {min_gap}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut centers: Vec<Point> = Vec::with_capacity(n);
    let gap = min_gap.max(COINCIDENCE_THRESHOLD * 10.0);
    while centers.len() < n {
        let mut placed = false;
        for _ in 0..MAX_SAMPLING_ATTEMPTS_PER_CENTER {
            let p = [
                rng.gen::<f64>() * box_side,
                rng.gen::<f64>() * box_side,
                rng.gen::<f64>() * box_side,
            ];
            if centers.iter().all(|q| dist(&p, q) >= gap) {
                centers.push(p);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::SamplingExhausted {
                n,
                min_gap,
                attempts: MAX_SAMPLING_ATTEMPTS_PER_CENTER,
            });
        }
    }
    validate_configuration(centers)
}

/// Samples `n` strengths with real and imaginary parts uniform in `[-scale, scale]`.
pub fn random_strengths(n: usize, seed: u64, scale: f64) -> StrengthTuple {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let strengths = (0..n)
        .map(|_| {
            Complex64::new(
                rng.gen_range(-scale..=scale),
                rng.gen_range(-scale..=scale),
            )
        })
        .collect();
    StrengthTuple { strengths }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_are_valid() {
        let cfg = validate_configuration(vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]).unwrap();
        assert_eq!(cfg.len(), 2);
    }

    #[test]
    fn single_point_is_rejected() {
        assert_eq!(
            validate_configuration(vec![[0.0, 0.0, 0.0]]),
            Err(Error::TooFewCenters(1))
        );
    }

    #[test]
    fn duplicate_points_are_rejected() {
        let err = validate_configuration(vec![[0.0; 3], [0.0; 3]]).unwrap_err();
        assert_eq!(
            err,
            Error::CoincidentCenters {
                first: 0,
                second: 1,
                distance: 0.0
            }
        );
    }

    #[test]
    fn coincidence_reports_closest_pair() {
        let err = validate_configuration(vec![
            [0.0; 3],
            [1.0, 0.0, 0.0],
            [5.0, 0.0, 0.0],
            [1.0, 1e-13, 0.0],
        ])
        .unwrap_err();
        match err {
            Error::CoincidentCenters { first, second, .. } => assert_eq!((first, second), (1, 3)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nan_coordinates_are_rejected() {
        let err = validate_configuration(vec![[0.0; 3], [f64::NAN, 0.0, 0.0]]).unwrap_err();
        assert_eq!(err, Error::NonFiniteCoordinate(1));
    }

    #[test]
    fn distance_examples() {
        let cfg = Configuration::new(vec![[0.0; 3], [1.0, 0.0, 0.0]]).unwrap();
        let d = distance_matrix(&cfg);
        assert_eq!(d.rows().collect::<Vec<_>>(), vec![&[0.0, 1.0][..], &[1.0, 0.0][..]]);

        let cfg = Configuration::new(vec![[0.0; 3], [3.0, 4.0, 0.0]]).unwrap();
        assert_eq!(distance_matrix(&cfg).get(0, 1), 5.0);

        let h = 3f64.sqrt() / 2.0;
        let cfg = Configuration::new(vec![[0.0; 3], [1.0, 0.0, 0.0], [0.5, h, 0.0]]).unwrap();
        let d = distance_matrix(&cfg);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 0.0 } else { 1.0 };
                assert!((d.get(i, j) - expect).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn scaling() {
        let cfg = Configuration::new(vec![[0.0; 3], [1.0, 0.0, 0.0]]).unwrap();
        assert_eq!(scale_configuration(&cfg, 1.0).unwrap(), cfg);
        assert_eq!(
            scale_configuration(&cfg, 2.0).unwrap().centers(),
            &[[0.0; 3], [2.0, 0.0, 0.0]]
        );
        let cfg = Configuration::new(vec![[0.0; 3], [3.0, 4.0, 0.0]]).unwrap();
        assert_eq!(scale_configuration(&cfg, 0.5).unwrap().distance(0, 1), 2.5);
        assert_eq!(
            scale_configuration(&cfg, 0.0),
            Err(Error::NonpositiveScale(0.0))
        );
        assert!(scale_configuration(&cfg, -1.0).is_err());
    }

    #[test]
    fn sampler_is_deterministic_and_valid() {
        let a = random_configuration(2, 11, 1.0, 1e-3).unwrap();
        let b = random_configuration(2, 11, 1.0, 1e-3).unwrap();
        assert_eq!(a, b);
        assert!(a.distance(0, 1) >= 1e-3);

        let c = random_configuration(5, 3, 1.0, 0.05).unwrap();
        assert!(validate_configuration(c.centers().to_vec()).is_ok());
        assert!(c.min_distance() >= 0.05);
        assert!(c.centers().iter().flatten().all(|&x| (0.0..=1.0).contains(&x)));
    }

    #[test]
    fn sampler_gives_up_on_impossible_gap() {
        let err = random_configuration(30, 1, 1.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::SamplingExhausted { .. }));
    }

    #[test]
    fn strengths_reject_infinity() {
        let err = StrengthTuple::new(vec![Complex64::new(f64::INFINITY, 0.0)]).unwrap_err();
        assert_eq!(err, Error::NonFiniteStrength(0));
        let cfg = Configuration::new(vec![[0.0; 3], [1.0, 0.0, 0.0]]).unwrap();
        assert!(StrengthTuple::for_configuration(vec![Complex64::new(0.0, 0.0)], &cfg).is_err());
    }

    #[test]
    fn relabel_moves_centers() {
        let cfg = Configuration::new(vec![[0.0; 3], [1.0, 0.0, 0.0], [0.0, 2.0, 0.0]]).unwrap();
        let perm = Permutation::new(vec![1, 2, 0]).unwrap();
        let moved = cfg.relabel(&perm).unwrap();
        assert_eq!(moved.centers()[1], [0.0; 3]);
        assert_eq!(moved.centers()[0], [0.0, 2.0, 0.0]);
    }
}
