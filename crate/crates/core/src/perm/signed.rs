use std::fmt;
use std::str::FromStr;

use crate::cellini::WallSet;
use crate::error::{Error, Result};

use super::{Permutation, SignedCycleType};

/// Element of the hyperoctahedral group C_n in one-line form, extended to
/// negatives by `w(-i) = -w(i)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPermutation {
    images: Vec<i64>,
}

/// Descent counts of a signed permutation under `1 < 2 < ... < n < -n < ... < -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypeCStats {
    pub d: usize,
    pub cd: usize,
}

impl SignedPermutation {
    pub fn new(images: Vec<i64>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[a] = true;
        }
        Ok(SignedPermutation { images })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation {
            images: (1..=n as i64).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i64] {
        &self.images
    }

    /// `w(i)` for any nonzero `i` with `|i| <= n`.
    pub fn apply(&self, i: i64) -> i64 {
        let v = self.images[i.unsigned_abs() as usize - 1];
        if i < 0 {
            -v
        } else {
            v
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            self.degree(),
            other.degree(),
            "composing signed permutations of different degree"
        );
        SignedPermutation {
            images: other.images.iter().map(|&j| self.apply(j)).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            let pos = i as i64 + 1;
            inv[v.unsigned_abs() as usize - 1] = if v < 0 { -pos } else { pos };
        }
        SignedPermutation { images: inv }
    }

    /// Forget signs.
    pub fn unsigned(&self) -> Permutation {
        Permutation::from_images_unchecked(self.images.iter().map(|v| v.unsigned_abs() as usize).collect())
    }

    /// Rank of `x` in the order `1 < 2 < ... < n < -n < ... < -1`.
    fn order_key(&self, x: i64) -> i64 {
        if x > 0 {
            x
        } else {
            2 * self.degree() as i64 + 1 + x
        }
    }

    /// Descent set as wall indices: `i < n` when `w(i) > w(i+1)`, `n` when
    /// `w(n) < 0`.
    pub fn descent_set(&self) -> WallSet {
        let n = self.degree();
        let mut set = WallSet::empty();
        for i in 1..n {
            if self.order_key(self.images[i - 1]) > self.order_key(self.images[i]) {
                set.insert(i);
            }
        }
        if n >= 1 && self.images[n - 1] < 0 {
            set.insert(n);
        }
        set
    }

    /// Descent set plus the affine wall `0` when `w(1) > 0`.
    pub fn cyclic_descent_set(&self) -> WallSet {
        let mut set = self.descent_set();
        if self.images.first().is_some_and(|&v| v > 0) {
            set.insert(0);
        }
        set
    }

    pub fn stats(&self) -> TypeCStats {
        TypeCStats {
            d: self.descent_set().len(),
            cd: self.cyclic_descent_set().len(),
        }
    }

    /// Cycles of the underlying unsigned permutation together with the sign
    /// product over each support (`true` for a positive cycle).
    pub fn signed_cycles(&self) -> Vec<(Vec<usize>, bool)> {
        self.unsigned()
            .cycles()
            .into_iter()
            .map(|c| {
                let negatives = c.iter().filter(|&&i| self.images[i - 1] < 0).count();
                (c, negatives % 2 == 0)
            })
            .collect()
    }

    pub fn cycle_type(&self) -> SignedCycleType {
        let mut lambda = Vec::new();
        let mut mu = Vec::new();
        for (c, positive) in self.signed_cycles() {
            if positive {
                lambda.push(c.len());
            } else {
                mu.push(c.len());
            }
        }
        SignedCycleType::new(lambda, mu)
    }

    /// All `2^n n!` signed permutations, grouped by underlying permutation.
    pub fn all(n: usize) -> Vec<SignedPermutation> {
        let mut out = Vec::with_capacity((1usize << n) * Permutation::all(n).len());
        for p in Permutation::all(n) {
            for mask in 0u64..(1u64 << n) {
                let images = p
                    .images()
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| if mask >> i & 1 == 1 { -(v as i64) } else { v as i64 })
                    .collect();
                out.push(SignedPermutation { images });
            }
        }
        out
    }

    pub fn conjugate_by(&self, g: &Self) -> Self {
        g.compose(self).compose(&g.inverse())
    }
}

pub fn type_c_stats(w: &SignedPermutation) -> TypeCStats {
    w.stats()
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SignedPermutation::new(super::parse_one_line(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn stats_of_worked_example() {
        let w = sp("3,1,-2,4,5");
        assert_eq!(w.descent_set().indices(), vec![1, 3]);
        assert_eq!(w.stats(), TypeCStats { d: 2, cd: 3 });
    }

    #[test]
    fn small_stats() {
        assert_eq!(SignedPermutation::identity(2).stats(), TypeCStats { d: 0, cd: 1 });
        assert_eq!(sp("-2,-1").stats(), TypeCStats { d: 1, cd: 1 });
    }

    #[test]
    fn signed_cycle_types() {
        let t = sp("-1,2").cycle_type();
        assert_eq!(t.lambda(), &[1]);
        assert_eq!(t.mu(), &[1]);
        let t = sp("-2,-1").cycle_type();
        assert_eq!(t.lambda(), &[2]);
        assert!(t.mu().is_empty());
    }

    #[test]
    fn inverse_and_compose() {
        let w = sp("-2,1");
        assert_eq!(w.inverse(), sp("2,-1"));
        assert_eq!(w.compose(&w.inverse()), SignedPermutation::identity(2));
        assert_eq!(
            sp("-6,-5,7,8,-4,9,-3,10,-2,11,-1,12").inverse().unsigned().images(),
            &[11, 9, 7, 5, 2, 1, 3, 4, 6, 8, 10, 12]
        );
    }

    #[test]
    fn enumeration_size() {
        assert_eq!(SignedPermutation::all(3).len(), 48);
        assert_eq!(SignedPermutation::all(1), vec![sp("1"), sp("-1")]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SignedPermutation::new(vec![1, -1]).is_err());
        assert!(SignedPermutation::new(vec![0]).is_err());
        assert!("1,,2".parse::<SignedPermutation>().is_err());
    }
}
