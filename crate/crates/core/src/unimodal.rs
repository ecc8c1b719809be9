//! Unimodal permutations, cycle shapes and the map from type-C 2-shuffles.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::numth::{divisors, mu};
use crate::perm::{Permutation, SignedPermutation};

/// Increases up to its maximum, then decreases.
pub fn is_unimodal(w: &Permutation) -> bool {
    let im = w.images();
    let peak = im.iter().position(|&x| x == im.len()).unwrap_or(0);
    im[..=peak.min(im.len().saturating_sub(1))]
        .windows(2)
        .all(|p| p[0] < p[1])
        && im[peak..].windows(2).all(|p| p[0] > p[1])
}

/// The `2^{n-1}` unimodal permutations in lexicographic order: the values
/// left of `n` are any subset of `1..n`, increasing.
pub fn enumerate_unimodal(n: usize) -> Vec<Permutation> {
    if n == 0 {
        return vec![Permutation::identity(0)];
    }
    let mut out: Vec<Permutation> = (0u64..1 << (n - 1))
        .map(|mask| {
            let left = (1..n).filter(|v| mask >> (v - 1) & 1 == 1);
            let right = (1..n).rev().filter(|v| mask >> (v - 1) & 1 == 0);
            let images = left.chain(std::iter::once(n)).chain(right).collect();
            Permutation::from_images_unchecked(images)
        })
        .collect();
    out.sort();
    out
}

/// Order-isomorphism class of a cycle, stored with its entries relabelled to
/// `1..=k` and rotated to begin at 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleShape {
    word: Vec<usize>,
}

impl CycleShape {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

impl fmt::Display for CycleShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.word.len() < 10 { "" } else { "," };
        let parts: Vec<String> = self.word.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(sep))
    }
}

pub fn cycle_shape(cycle: &[usize]) -> Result<CycleShape> {
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::RepeatedSymbol(cycle.to_vec()));
    }
    let relabel: Vec<usize> = cycle
        .iter()
        .map(|x| sorted.binary_search(x).expect("present") + 1)
        .collect();
    let start = relabel.iter().position(|&x| x == 1).unwrap_or(0);
    let mut word = relabel[start..].to_vec();
    word.extend_from_slice(&relabel[..start]);
    Ok(CycleShape { word })
}

/// Sorted multiset of the cycle shapes of `w`.
pub fn shape_multiset(w: &Permutation) -> Vec<CycleShape> {
    let mut shapes: Vec<CycleShape> = w
        .cycles()
        .iter()
        .map(|c| cycle_shape(c).expect("cycles have distinct entries"))
        .collect();
    shapes.sort();
    shapes
}

/// Unimodal permutations of `{1..n}` grouped by their multiset of cycle
/// shapes.
pub fn gannon_histogram(n: usize) -> BTreeMap<Vec<CycleShape>, u64> {
    let mut out = BTreeMap::new();
    for w in enumerate_unimodal(n) {
        *out.entry(shape_multiset(&w)).or_insert(0) += 1;
    }
    out
}

/// Number of distinct shapes in a multiset.
pub fn distinct_shapes(multiset: &[CycleShape]) -> usize {
    let mut d = multiset.to_vec();
    d.dedup();
    d.len()
}

/// `(1/2n) Σ_{d|n, d odd} μ(d) 2^{n/d}`.
pub fn transitive_unimodal_count(n: u64) -> u64 {
    assert!(n >= 1);
    let num: BigInt = divisors(n)
        .into_iter()
        .filter(|d| d % 2 == 1)
        .map(|d| BigInt::from(mu(d)) * BigInt::from(2).pow((n / d) as u32))
        .sum();
    let (q, r) = num.div_rem(&BigInt::from(2 * n));
    assert!(r == BigInt::from(0), "count is integral");
    q.to_u64().expect("fits")
}

/// Shapes of unimodal `n`-cycles, by enumeration.
pub fn transitive_unimodal_shapes(n: usize) -> Vec<CycleShape> {
    enumerate_unimodal(n)
        .into_iter()
        .filter_map(|w| {
            let cycles = w.cycles();
            (cycles.len() == 1).then(|| cycle_shape(&cycles[0]).expect("single cycle"))
        })
        .collect()
}

/// Checks that `w` is an outcome of the type-C 2-stack model: the face-up
/// cards read `-j, .., -1` and the others `j+1, .., n`, both in deck order;
/// the top card may also show the other side.
fn is_two_shuffle_outcome(w: &SignedPermutation) -> bool {
    let im = w.images();
    let check = |im: &[i64]| {
        let neg: Vec<i64> = im.iter().copied().filter(|&x| x < 0).collect();
        let pos: Vec<i64> = im.iter().copied().filter(|&x| x > 0).collect();
        let j = neg.len() as i64;
        neg.iter().copied().eq((1..=j).rev().map(|x| -x)) && pos.iter().copied().eq(j + 1..=im.len() as i64)
    };
    if im.is_empty() || check(im) {
        return true;
    }
    let mut flipped = im.to_vec();
    flipped[0] = -flipped[0];
    check(&flipped)
}

/// Inverse, forget signs, then conjugate by `i ↦ n + 1 - i`.
pub fn eta_map(outcome: &SignedPermutation) -> Result<Permutation> {
    if !is_two_shuffle_outcome(outcome) {
        return Err(Error::InvalidShuffleOutcome(outcome.to_string()));
    }
    let n = outcome.degree();
    let u = outcome.inverse().unsigned();
    let images = (1..=n).map(|i| n + 1 - u.apply(n + 1 - i)).collect();
    Ok(Permutation::from_images_unchecked(images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shuffles::affine_c_shuffle_outcomes;
    use std::collections::BTreeSet;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn recognition_and_enumeration() {
        let three: Vec<Permutation> = ["1,2,3", "1,3,2", "2,3,1", "3,2,1"].iter().map(|s| p(s)).collect();
        assert_eq!(enumerate_unimodal(3), three);
        assert_eq!(enumerate_unimodal(1), vec![p("1")]);
        assert!(!is_unimodal(&p("3,1,2")));
        for n in 1..=7 {
            let brute: Vec<Permutation> = Permutation::all(n).into_iter().filter(is_unimodal).collect();
            assert_eq!(brute, enumerate_unimodal(n));
            assert_eq!(brute.len(), 1 << (n - 1));
        }
    }

    #[test]
    fn shapes() {
        assert_eq!(cycle_shape(&[5, 2, 3]).unwrap(), cycle_shape(&[3, 1, 2]).unwrap());
        assert_eq!(cycle_shape(&[4]).unwrap().word(), &[1]);
        assert_eq!(cycle_shape(&[3, 1]).unwrap(), cycle_shape(&[2, 1]).unwrap());
        assert_eq!(cycle_shape(&[3, 1]).unwrap().word(), &[1, 2]);
        assert_eq!(cycle_shape(&[2, 2]), Err(Error::RepeatedSymbol(vec![2, 2])));
        assert_eq!(cycle_shape(&[5, 2, 3]).unwrap().to_string(), "(123)");
    }

    #[test]
    fn gannon_examples() {
        let h = gannon_histogram(3);
        let one = cycle_shape(&[1]).unwrap();
        let two = cycle_shape(&[1, 2]).unwrap();
        let three = cycle_shape(&[1, 2, 3]).unwrap();
        assert_eq!(h[&vec![one.clone(), one.clone(), one.clone()]], 1);
        assert_eq!(h[&vec![one, two]], 2);
        assert_eq!(h[&vec![three]], 1);
        for n in 1..=8 {
            for (ms, count) in gannon_histogram(n) {
                assert_eq!(count, 1 << (distinct_shapes(&ms) - 1));
            }
        }
    }

    #[test]
    fn transitive_counts() {
        let closed: Vec<u64> = (1..=6).map(transitive_unimodal_count).collect();
        assert_eq!(closed, vec![1, 1, 1, 2, 3, 5]);
        for n in 1..=10 {
            assert_eq!(
                transitive_unimodal_shapes(n).len() as u64,
                transitive_unimodal_count(n as u64),
                "n={n}"
            );
        }
    }

    #[test]
    fn eta_worked_example() {
        let w: SignedPermutation = "-6,-5,7,8,-4,9,-3,10,-2,11,-1,12".parse().unwrap();
        assert_eq!(w.inverse().unsigned(), p("11,9,7,5,2,1,3,4,6,8,10,12"));
        let image = eta_map(&w).unwrap();
        assert!(is_unimodal(&image));
        let mut flipped = w.images().to_vec();
        flipped[0] = 6;
        assert_eq!(eta_map(&SignedPermutation::new(flipped).unwrap()).unwrap(), image);
    }

    #[test]
    fn eta_two_to_one() {
        for n in 1..=7 {
            let mut hits: BTreeMap<Permutation, usize> = BTreeMap::new();
            for o in affine_c_shuffle_outcomes(n, 2) {
                let v = eta_map(&o.element).unwrap();
                assert_eq!(v.cycle_type(), o.element.unsigned().cycle_type());
                *hits.entry(v).or_insert(0) += 1;
            }
            let image: BTreeSet<Permutation> = hits.keys().cloned().collect();
            assert_eq!(image, enumerate_unimodal(n).into_iter().collect::<BTreeSet<_>>());
            assert!(hits.values().all(|&c| c == 2), "n={n}");
        }
    }

    #[test]
    fn eta_rejects_other_inputs() {
        let w: SignedPermutation = "-1,-2,3".parse().unwrap();
        assert!(matches!(eta_map(&w), Err(Error::InvalidShuffleOutcome(_))));
    }
}
