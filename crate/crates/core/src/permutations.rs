//! Permutations of center indices: cycle structure, signs and the undirected
//! multigraphs used to group permutations into edge-equivalence classes.
//!
//! Indices are 0-based internally. `Display` prints cycle notation with
//! 1-based labels, omitting fixed points, e.g. `[1 2 3][4 5]`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest N for which all of S_N is enumerated.
pub const ENUMERATION_CAP: usize = 10;

/// A bijection of `{0, …, n-1}`, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    image: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(image: Vec<usize>) -> Result<Self> {
        Permutation::new(image)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.image
    }
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &j in &image {
            if j >= n || seen[j] {
                return Err(Error::InvalidPermutation(image));
            }
            seen[j] = true;
        }
        Ok(Permutation { image })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// Builds a permutation of `{0, …, n-1}` from disjoint cycles (0-based).
    /// Indices not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut image: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &j) in cycle.iter().enumerate() {
                if j >= n || touched[j] {
                    return Err(Error::InvalidPermutation(cycle.to_vec()));
                }
                touched[j] = true;
                image[j] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::new(image)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, j: usize) -> usize {
        self.image[j]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(j, &s)| j == s)
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.image
            .iter()
            .enumerate()
            .filter(|(j, &s)| *j == s)
            .map(|(j, _)| j)
    }

    pub fn inverse(&self) -> Self {
        let mut image = vec![0; self.len()];
        for (j, &s) in self.image.iter().enumerate() {
            image[s] = j;
        }
        Permutation { image }
    }

    /// `self ∘ other`, i.e. `j ↦ self(other(j))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(Permutation {
            image: other.image.iter().map(|&j| self.image[j]).collect(),
        })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = cycle_decompose(self);
        let mut wrote = false;
        for cycle in cycles.cycles().iter().filter(|c| c.len() > 1) {
            write!(f, "[{}]", cycle.iter().map(|j| j + 1).join(" "))?;
            wrote = true;
        }
        if !wrote {
            write!(f, "id")?;
        }
        Ok(())
    }
}

/// All permutations of `{0, …, n-1}` in lexicographic order of their image arrays.
pub fn all_permutations(n: usize) -> impl Iterator<Item = Permutation> {
    (0..n)
        .permutations(n)
        .map(|image| Permutation { image })
}

/// Disjoint cycles of a permutation, fixed points included as singletons.
///
/// Canonical order: each cycle starts at its smallest element, cycles are
/// sorted by that element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    n: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Number of cycles, M(σ).
    pub fn count(&self) -> usize {
        self.cycles.len()
    }

    /// Multiplies the cycles back together.
    pub fn to_permutation(&self) -> Permutation {
        let refs: Vec<&[usize]> = self.cycles.iter().map(Vec::as_slice).collect();
        Permutation::from_cycles(self.n, &refs).expect("cycles partition the index set")
    }
}

pub fn cycle_decompose(sigma: &Permutation) -> CycleDecomposition {
    let n = sigma.len();
    let mut visited = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut j = sigma.apply(start);
        while j != start {
            visited[j] = true;
            cycle.push(j);
            j = sigma.apply(j);
        }
        cycles.push(cycle);
    }
    CycleDecomposition { n, cycles }
}

/// ε_σ = (−1)^{N − M(σ)}.
pub fn permutation_sign(sigma: &Permutation) -> i32 {
    let m = cycle_decompose(sigma).count();
    if (sigma.len() - m) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Undirected multigraph with loops: unordered pair `(min, max)` → multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeMultigraph {
    edges: BTreeMap<(usize, usize), usize>,
}

impl EdgeMultigraph {
    pub fn multiplicity(&self, i: usize, j: usize) -> usize {
        self.edges.get(&(i.min(j), i.max(j))).copied().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.edges.iter().map(|(&k, &v)| (k, v))
    }

    /// Sum of multiplicities, loops counted once.
    pub fn total_multiplicity(&self) -> usize {
        self.edges.values().sum()
    }
}

/// The graph with one edge `{j, σ(j)}` per index: fixed points become loops and
/// 2-cycles become doubled edges.
pub fn edge_multigraph(sigma: &Permutation) -> EdgeMultigraph {
    let mut edges = BTreeMap::new();
    for j in 0..sigma.len() {
        let s = sigma.apply(j);
        *edges.entry((j.min(s), j.max(s))).or_insert(0) += 1;
    }
    EdgeMultigraph { edges }
}

pub fn edge_equivalent(sigma: &Permutation, other: &Permutation) -> Result<bool> {
    if sigma.len() != other.len() {
        return Err(Error::SizeMismatch {
            expected: sigma.len(),
            found: other.len(),
        });
    }
    Ok(edge_multigraph(sigma) == edge_multigraph(other))
}

/// Every permutation obtained by inverting some subset of the cycles of `sigma`,
/// sorted lexicographically. Contains `sigma` itself.
pub fn class_mates(sigma: &Permutation) -> Vec<Permutation> {
    let decomposition = cycle_decompose(sigma);
    // Cycles of length ≤ 2 are their own inverses.
    let long: Vec<&Vec<usize>> = decomposition
        .cycles()
        .iter()
        .filter(|c| c.len() >= 3)
        .collect();
    let mut mates = Vec::with_capacity(1 << long.len());
    for mask in 0u32..(1u32 << long.len()) {
        let mut image = sigma.image.clone();
        for (bit, cycle) in long.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                for w in 0..cycle.len() {
                    let next = cycle[(w + 1) % cycle.len()];
                    image[next] = cycle[w];
                }
            }
        }
        mates.push(Permutation { image });
    }
    mates.sort();
    mates.dedup();
    mates
}

/// One representative per edge-equivalence class of S_N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRepresentatives {
    /// Lexicographically smallest member of each class, in lexicographic order.
    pub representatives: Vec<Permutation>,
    /// Size of each class, aligned with `representatives`.
    pub class_sizes: Vec<usize>,
}

impl ClassRepresentatives {
    /// Number of classes, n.
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

pub fn enumerate_classes(n: usize) -> Result<ClassRepresentatives> {
    if n > ENUMERATION_CAP {
        return Err(Error::TooLarge {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    if n < 2 {
        return Err(Error::TooFewCenters(n));
    }
    let mut representatives = Vec::new();
    let mut class_sizes = Vec::new();
    for sigma in all_permutations(n) {
        let mates = class_mates(&sigma);
        if mates[0] == sigma {
            class_sizes.push(mates.len());
            representatives.push(sigma);
        }
    }
    Ok(ClassRepresentatives {
        representatives,
        class_sizes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
    }

    #[test]
    fn decompositions() {
        let id = cycle_decompose(&Permutation::identity(3));
        assert_eq!(id.cycles(), &[vec![0], vec![1], vec![2]]);
        assert_eq!(id.count(), 3);

        let c3 = cycle_decompose(&perm(3, &[&[0, 1, 2]]));
        assert_eq!(c3.count(), 1);
        assert_eq!(c3.cycles(), &[vec![0, 1, 2]]);

        let c22 = cycle_decompose(&perm(4, &[&[0, 1], &[2, 3]]));
        assert_eq!(c22.count(), 2);
        assert_eq!(c22.cycles(), &[vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn decomposition_is_canonical() {
        let p = perm(6, &[&[4, 2, 5], &[3, 1]]);
        let d = cycle_decompose(&p);
        assert_eq!(d.cycles(), &[vec![0], vec![1, 3], vec![2, 5, 4]]);
        assert_eq!(d.to_permutation(), p);
    }

    #[test]
    fn signs() {
        assert_eq!(permutation_sign(&Permutation::identity(4)), 1);
        assert_eq!(permutation_sign(&perm(4, &[&[1, 3]])), -1);
        assert_eq!(permutation_sign(&perm(3, &[&[0, 1, 2]])), 1);
    }

    #[test]
    fn multigraphs() {
        let g = edge_multigraph(&Permutation::identity(2));
        assert_eq!(g.multiplicity(0, 0), 1);
        assert_eq!(g.multiplicity(1, 1), 1);
        assert_eq!(g.multiplicity(0, 1), 0);

        let g = edge_multigraph(&perm(2, &[&[0, 1]]));
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![((0, 1), 2)]);

        let g = edge_multigraph(&perm(3, &[&[0, 1, 2]]));
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![((0, 1), 1), ((0, 2), 1), ((1, 2), 1)]
        );
        assert_eq!(g.total_multiplicity(), 3);
    }

    #[test]
    fn equivalence_examples() {
        let s = perm(3, &[&[0, 1, 2]]);
        assert!(edge_equivalent(&s, &s).unwrap());
        assert!(edge_equivalent(&s, &perm(3, &[&[0, 2, 1]])).unwrap());
        assert!(!edge_equivalent(&perm(3, &[&[0, 1]]), &perm(3, &[&[0, 2]])).unwrap());
        assert!(edge_equivalent(&s, &Permutation::identity(4)).is_err());
    }

    #[test]
    fn mates_examples() {
        assert_eq!(
            class_mates(&Permutation::identity(4)),
            vec![Permutation::identity(4)]
        );
        let s = perm(3, &[&[0, 1, 2]]);
        assert_eq!(class_mates(&s), vec![s.clone(), perm(3, &[&[0, 2, 1]])]);
        assert_eq!(class_mates(&perm(5, &[&[0, 1], &[2, 3, 4]])).len(), 2);
    }

    #[test]
    fn class_counts_small() {
        assert_eq!(enumerate_classes(2).unwrap().count(), 2);
        assert_eq!(enumerate_classes(3).unwrap().count(), 5);
        assert_eq!(enumerate_classes(4).unwrap().count(), 17);
        assert!(matches!(
            enumerate_classes(11),
            Err(Error::TooLarge { n: 11, cap: 10 })
        ));
    }

    #[test]
    fn display_uses_one_based_cycles() {
        assert_eq!(Permutation::identity(3).to_string(), "id");
        assert_eq!(perm(5, &[&[0, 1], &[2, 3, 4]]).to_string(), "[1 2][3 4 5]");
    }

    #[test]
    fn lexicographic_enumeration() {
        let all: Vec<_> = all_permutations(3).collect();
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0], Permutation::identity(3));
    }
}
