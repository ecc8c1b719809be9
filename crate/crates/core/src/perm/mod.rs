//! Group elements of S_n and C_n, their descent and cycle statistics, and
//! sparse group-algebra arithmetic over exact rationals.

mod algebra;
mod permutation;
mod signed;

use std::fmt;

use serde::Serialize;

use crate::cellini::{Family, WallSet};
use crate::error::{Error, Result};

pub use algebra::{ClassMeasure, GroupAlgebraElement, GroupKind};
pub use permutation::{type_a_stats, Permutation, TypeAStats};
pub use signed::{type_c_stats, SignedPermutation, TypeCStats};

/// Partition of `n` recording cycle lengths, parts weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CycleType {
    parts: Vec<usize>,
}

impl CycleType {
    pub fn from_parts(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.parts))
    }
}

/// Pair of partitions: lengths of positive cycles and of negative cycles.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SignedCycleType {
    lambda: Vec<usize>,
    mu: Vec<usize>,
}

impl SignedCycleType {
    pub fn new(lambda: Vec<usize>, mu: Vec<usize>) -> Self {
        SignedCycleType {
            lambda: CycleType::from_parts(lambda).parts,
            mu: CycleType::from_parts(mu).parts,
        }
    }

    /// Build from multiplicity vectors: `lambda_counts[i - 1]` positive `i`-cycles.
    pub fn from_counts(lambda_counts: &[usize], mu_counts: &[usize]) -> Self {
        let expand = |counts: &[usize]| -> Vec<usize> {
            counts
                .iter()
                .enumerate()
                .flat_map(|(i, &c)| std::iter::repeat_n(i + 1, c))
                .collect()
        };
        SignedCycleType::new(expand(lambda_counts), expand(mu_counts))
    }

    pub fn lambda(&self) -> &[usize] {
        &self.lambda
    }

    pub fn mu(&self) -> &[usize] {
        &self.mu
    }

    pub fn size(&self) -> usize {
        self.lambda.iter().sum::<usize>() + self.mu.iter().sum::<usize>()
    }

    pub fn positive_multiplicity(&self, i: usize) -> usize {
        self.lambda.iter().filter(|&&p| p == i).count()
    }

    pub fn negative_multiplicity(&self, i: usize) -> usize {
        self.mu.iter().filter(|&&p| p == i).count()
    }
}

impl fmt::Display for SignedCycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({});({}))", join(&self.lambda), join(&self.mu))
    }
}

fn join(parts: &[usize]) -> String {
    parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

/// Parse the canonical comma-separated one-line text, e.g. `"3,1,-2,4,5"`.
pub fn parse_one_line(s: &str) -> Result<Vec<i64>> {
    let trimmed = s.trim().trim_start_matches('[').trim_end_matches(']');
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|tok| {
            tok.trim().parse::<i64>().map_err(|e| Error::ParseElement {
                input: s.to_string(),
                reason: e.to_string(),
            })
        })
        .collect()
}

/// Common interface of the two Weyl groups handled here.
pub trait WeylElement: Clone + Ord + std::hash::Hash + fmt::Display + fmt::Debug + Send + Sync + 'static {
    type Class: Clone + Ord + fmt::Display + fmt::Debug + Serialize + Send + Sync;

    const FAMILY: Family;

    fn degree(&self) -> usize;
    fn identity(n: usize) -> Self;
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    /// Cyclic descents as wall indices in `0..=rank`.
    fn cdes(&self) -> WallSet;
    fn class(&self) -> Self::Class;
    fn enumerate(n: usize) -> Vec<Self>;

    fn rank_for_degree(n: usize) -> usize {
        match Self::FAMILY {
            Family::A => n.saturating_sub(1),
            Family::C => n,
        }
    }
}

impl WeylElement for Permutation {
    type Class = CycleType;
    const FAMILY: Family = Family::A;

    fn degree(&self) -> usize {
        Permutation::degree(self)
    }
    fn identity(n: usize) -> Self {
        Permutation::identity(n)
    }
    fn compose(&self, other: &Self) -> Self {
        Permutation::compose(self, other)
    }
    fn inverse(&self) -> Self {
        Permutation::inverse(self)
    }
    fn cdes(&self) -> WallSet {
        self.cyclic_descent_set()
    }
    fn class(&self) -> CycleType {
        self.cycle_type()
    }
    fn enumerate(n: usize) -> Vec<Self> {
        Permutation::all(n)
    }
}

impl WeylElement for SignedPermutation {
    type Class = SignedCycleType;
    const FAMILY: Family = Family::C;

    fn degree(&self) -> usize {
        SignedPermutation::degree(self)
    }
    fn identity(n: usize) -> Self {
        SignedPermutation::identity(n)
    }
    fn compose(&self, other: &Self) -> Self {
        SignedPermutation::compose(self, other)
    }
    fn inverse(&self) -> Self {
        SignedPermutation::inverse(self)
    }
    fn cdes(&self) -> WallSet {
        self.cyclic_descent_set()
    }
    fn class(&self) -> SignedCycleType {
        self.cycle_type()
    }
    fn enumerate(n: usize) -> Vec<Self> {
        SignedPermutation::all(n)
    }
}

/// Descent histograms `A_r = #{w in S_n : d(w) = r}` for `r = 0..n-1` and
/// `N_r = #{w in C_n : cd(w) = r}` stored at index `r - 1` for `r = 1..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentHistograms {
    pub eulerian: Vec<u64>,
    pub signed_cyclic: Vec<u64>,
}

impl DescentHistograms {
    /// `N_{r+1} = 2^n A_r` for every `r`.
    pub fn satisfies_doubling(&self, n: usize) -> bool {
        self.eulerian.len() == self.signed_cyclic.len()
            && self
                .eulerian
                .iter()
                .zip(&self.signed_cyclic)
                .all(|(&a, &c)| c == (a << n))
    }
}

pub fn eulerian_histogram(n: usize) -> Vec<u64> {
    let mut hist = vec![0u64; n.max(1)];
    for w in Permutation::all(n) {
        hist[w.descents()] += 1;
    }
    hist
}

pub fn signed_cyclic_descent_histogram(n: usize) -> Vec<u64> {
    let mut hist = vec![0u64; n.max(1)];
    for w in SignedPermutation::all(n) {
        let cd = w.stats().cd;
        assert!((1..=n).contains(&cd), "cd({w}) = {cd} outside 1..=n");
        hist[cd - 1] += 1;
    }
    hist
}

pub fn descent_histograms(n: usize) -> DescentHistograms {
    DescentHistograms {
        eulerian: eulerian_histogram(n),
        signed_cyclic: signed_cyclic_descent_histogram(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histograms_small() {
        assert_eq!(eulerian_histogram(3), vec![1, 4, 1]);
        assert_eq!(signed_cyclic_descent_histogram(2), vec![4, 4]);
        let h = descent_histograms(2);
        assert_eq!(h.signed_cyclic[0], 4 * h.eulerian[0]);
    }

    #[test]
    fn doubling_identity_through_six() {
        for n in 1..=6 {
            assert!(descent_histograms(n).satisfies_doubling(n), "n = {n}");
        }
    }

    #[test]
    fn cyclic_descents_bounded() {
        for n in 2..=5 {
            let mut hist = vec![0u64; n + 1];
            for w in Permutation::all(n) {
                let cd = w.cyclic_descents();
                assert!((1..n).contains(&cd), "cd({w}) = {cd}");
                hist[cd] += 1;
            }
            assert_eq!(hist.iter().sum::<u64>(), Permutation::all(n).len() as u64);
            assert_eq!(hist[0], 0);
        }
    }

    #[test]
    fn cycle_type_display() {
        assert_eq!(CycleType::from_parts(vec![1, 2]).to_string(), "(2,1)");
        assert_eq!(SignedCycleType::new(vec![1], vec![2]).to_string(), "((1);(2))");
        assert_eq!(
            SignedCycleType::from_counts(&[1, 0], &[0, 1]),
            SignedCycleType::new(vec![1], vec![2])
        );
    }
}
