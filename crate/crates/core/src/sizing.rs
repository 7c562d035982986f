//! Bond lengths V_σ(Y), the configuration size V(Y) = max_σ V_σ(Y), and the
//! genericity test that every edge-equivalence class has its own length.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{distance_matrix, Configuration, DistanceMatrix};
use crate::permutations::{
    all_permutations, enumerate_classes, ClassRepresentatives, Permutation, ENUMERATION_CAP,
};

/// Default relative gap tolerance; the absolute threshold is `gap_tol · max(1, V(Y))`.
pub const DEFAULT_GAP_TOL: f64 = 1e-9;

/// Relative tolerance used to collect tied maximizers in brute-force mode.
pub const DEFAULT_TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SizeMode {
    /// Maximum over all of S_N.
    Brute,
    /// Maximum-weight perfect assignment on the distance matrix.
    Assignment,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeReport {
    pub v: f64,
    pub argmax: Permutation,
    /// Every permutation within the tie tolerance of `v`; empty in assignment mode.
    pub achievers: Vec<Permutation>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenericityReport {
    pub is_generic: bool,
    /// Smallest |V_σ̃j(Y) − V_σ̃m(Y)| over distinct class representatives.
    pub min_gap: f64,
    pub witness_pair: (Permutation, Permutation),
    /// Absolute threshold the gap was compared against.
    pub gap_tolerance: f64,
    pub v: f64,
}

/// V_σ(Y) = Σ_j |y_j − y_σ(j)|.
pub fn v_sigma(cfg: &Configuration, sigma: &Permutation) -> Result<f64> {
    if cfg.len() != sigma.len() {
        return Err(Error::SizeMismatch {
            expected: cfg.len(),
            found: sigma.len(),
        });
    }
    Ok(bond_length(&distance_matrix(cfg), sigma))
}

/// Visits the non-loop edges of the undirected multigraph of `sigma` in sorted
/// `(min, max)` order, so edge-equivalent permutations see identical sequences.
pub(crate) fn for_each_bond(dist: &DistanceMatrix, sigma: &Permutation, mut visit: impl FnMut(f64)) {
    let image = sigma.image();
    let mut preimage = vec![0; image.len()];
    for (j, &s) in image.iter().enumerate() {
        preimage[s] = j;
    }
    for j in 0..image.len() {
        let (fwd, back) = (image[j], preimage[j]);
        let (lo, hi) = (fwd.min(back), fwd.max(back));
        if lo > j {
            visit(dist.get(j, lo));
        }
        if hi > j {
            visit(dist.get(j, hi));
        }
    }
}

pub(crate) fn bond_length(dist: &DistanceMatrix, sigma: &Permutation) -> f64 {
    let mut total = 0.0;
    for_each_bond(dist, sigma, |d| total += d);
    total
}

pub fn size_v(cfg: &Configuration, mode: SizeMode) -> Result<SizeReport> {
    let dist = distance_matrix(cfg);
    match mode {
        SizeMode::Brute => brute_size(&dist),
        SizeMode::Assignment => {
            let argmax = max_weight_assignment(&dist);
            Ok(SizeReport {
                v: bond_length(&dist, &argmax),
                argmax,
                achievers: Vec::new(),
            })
        }
    }
}

fn brute_size(dist: &DistanceMatrix) -> Result<SizeReport> {
    let n = dist.len();
    if n > ENUMERATION_CAP {
        return Err(Error::TooLarge {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    let lengths: Vec<(Permutation, f64)> = all_permutations(n)
        .map(|sigma| {
            let v = bond_length(dist, &sigma);
            (sigma, v)
        })
        .collect();
    let v = lengths.iter().map(|(_, v)| *v).fold(0.0, f64::max);
    let tol = DEFAULT_TIE_TOL * v.max(1.0);
    // Lexicographic order is preserved, so the first achiever is the tie-break winner.
    let achievers: Vec<Permutation> = lengths
        .into_iter()
        .filter(|(_, l)| *l >= v - tol)
        .map(|(sigma, _)| sigma)
        .collect();
    Ok(SizeReport {
        v,
        argmax: achievers[0].clone(),
        achievers,
    })
}

/// Hungarian method with row/column potentials, O(N³). Returns the permutation
/// maximizing Σ_j d(j, σ(j)).
fn max_weight_assignment(dist: &DistanceMatrix) -> Permutation {
    let n = dist.len();
    let top = dist.max();
    // Minimize top − d ≥ 0; indices are 1-based with 0 as the virtual column.
    let cost = |i: usize, j: usize| top - dist.get(i - 1, j - 1);
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost(i0, j) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut image = vec![0; n];
    for j in 1..=n {
        image[row_of[j] - 1] = j - 1;
    }
    Permutation::new(image).expect("assignment is a bijection")
}

/// Membership test for the generic set: all class representatives have pairwise
/// distinct V values, separated by more than `gap_tol · max(1, V(Y))`.
pub fn is_generic(cfg: &Configuration, gap_tol: f64) -> Result<GenericityReport> {
    let classes = enumerate_classes(cfg.len())?;
    is_generic_with(cfg, &classes, gap_tol)
}

/// Same as [`is_generic`] with precomputed class representatives.
pub fn is_generic_with(
    cfg: &Configuration,
    classes: &ClassRepresentatives,
    gap_tol: f64,
) -> Result<GenericityReport> {
    if !(gap_tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "gap tolerance must be positive, got {gap_tol}"
        )));
    }
    let first = classes
        .representatives
        .first()
        .ok_or_else(|| Error::InvalidArgument("no class representatives".into()))?;
    if first.len() != cfg.len() {
        return Err(Error::SizeMismatch {
            expected: cfg.len(),
            found: first.len(),
        });
    }
    let dist = distance_matrix(cfg);
    let mut values: Vec<(f64, usize)> = classes
        .representatives
        .iter()
        .enumerate()
        .map(|(k, sigma)| (bond_length(&dist, sigma), k))
        .collect();
    values.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let v = values.last().map_or(0.0, |x| x.0);

    let mut min_gap = f64::INFINITY;
    let mut witness = (values[0].1, values[0].1);
    for w in values.windows(2) {
        let gap = w[1].0 - w[0].0;
        if gap < min_gap {
            min_gap = gap;
            witness = (w[0].1.min(w[1].1), w[0].1.max(w[1].1));
        }
    }
    let gap_tolerance = gap_tol * v.max(1.0);
    Ok(GenericityReport {
        is_generic: min_gap > gap_tolerance,
        min_gap,
        witness_pair: (
            classes.representatives[witness.0].clone(),
            classes.representatives[witness.1].clone(),
        ),
        gap_tolerance,
        v,
    })
}
