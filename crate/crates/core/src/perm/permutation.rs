use std::fmt;
use std::str::FromStr;

use crate::cellini::WallSet;
use crate::error::{Error, Result};

use super::CycleType;

/// Element of S_n in one-line form: `images[i - 1] = w(i)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

/// Descent-type statistics of a permutation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeAStats {
    /// Positions `i < n` with `w(i) > w(i+1)`.
    pub descent_set: Vec<usize>,
    pub maj: usize,
    /// Descents as simple roots, plus the affine root when `w(n) > w(1)`.
    pub cdes: WallSet,
    pub cd: usize,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(images.iter().map(|&x| x as i64).collect()));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.degree(),
            other.degree(),
            "composing permutations of different degree"
        );
        Permutation {
            images: other.images.iter().map(|&j| self.images[j - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { images: inv }
    }

    pub fn descent_set(&self) -> Vec<usize> {
        (1..self.degree())
            .filter(|&i| self.images[i - 1] > self.images[i])
            .collect()
    }

    pub fn descents(&self) -> usize {
        self.images.windows(2).filter(|p| p[0] > p[1]).count()
    }

    pub fn major_index(&self) -> usize {
        self.descent_set().iter().sum()
    }

    /// Cyclic descent set as wall indices: `i` for a descent at position `i`,
    /// `0` for the affine root `e_n - e_1`.
    pub fn cyclic_descent_set(&self) -> WallSet {
        let n = self.degree();
        let mut set = WallSet::from_indices(self.descent_set());
        if n >= 1 && self.images[n - 1] > self.images[0] {
            set.insert(0);
        }
        set
    }

    pub fn cyclic_descents(&self) -> usize {
        self.cyclic_descent_set().len()
    }

    pub fn stats(&self) -> TypeAStats {
        let descent_set = self.descent_set();
        let maj = descent_set.iter().sum();
        let cdes = self.cyclic_descent_set();
        TypeAStats {
            cd: cdes.len(),
            descent_set,
            maj,
            cdes,
        }
    }

    /// Cycles in order of their smallest element, each starting there.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.apply(i);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_parts(self.cycles().iter().map(Vec::len).collect())
    }

    /// All of S_n in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut out = vec![Permutation { images: cur.clone() }];
        while next_permutation(&mut cur) {
            out.push(Permutation { images: cur.clone() });
        }
        out
    }

    /// `g ∘ self ∘ g^{-1}`.
    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.compose(self).compose(&g.inverse())
    }
}

pub fn type_a_stats(w: &Permutation) -> TypeAStats {
    w.stats()
}

pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = super::parse_one_line(s)?
            .into_iter()
            .map(|v| {
                usize::try_from(v).map_err(|_| Error::ParseElement {
                    input: s.to_string(),
                    reason: "negative image in an unsigned permutation".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}
