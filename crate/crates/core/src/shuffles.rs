//! Physical card-shuffling models, their exact laws, samplers and total
//! variation distance.
//!
//! A deck is read from top to bottom; the card labels in that order form the
//! one-line notation of the outcome. A card turned face up carries a minus
//! sign.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::closed_forms::x_k_type_c;
use crate::error::{Error, Result};
use crate::perm::{
    eulerian_histogram, signed_cyclic_descent_histogram, GroupAlgebraElement, Permutation, SignedPermutation,
    WeylElement,
};
use crate::rational::{binomial, factorial, Rational};

/// Probability measure on a Weyl group: a group-algebra element with
/// nonnegative coefficients summing to one.
pub type Distribution<E> = GroupAlgebraElement<E>;

/// One equally likely branch of the stack-and-interleave model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleOutcome<E> {
    pub cut_sizes: Vec<usize>,
    /// Stack feeding each deck position, top to bottom.
    pub interleaving: Vec<usize>,
    pub element: E,
}

pub fn uniform<E: WeylElement>(n: usize) -> Distribution<E> {
    let all = E::enumerate(n);
    let mass = Rational::new(BigInt::one(), BigInt::from(all.len()));
    Distribution::from_terms(n, all.into_iter().map(|e| (e, mass.clone()))).expect("same degree")
}

/// `P(w) = C(k + n - d(w) - 1, n) / k^n`: the law of the inverse of the deck
/// order after a `k`-pile riffle shuffle.
pub fn riffle_distribution(n: usize, k: u32) -> Distribution<Permutation> {
    let denom = BigInt::from(k).pow(n as u32);
    let terms = Permutation::all(n).into_iter().map(|w| {
        let top = k as i64 + n as i64 - w.descents() as i64 - 1;
        let c = Rational::new(binomial(top, n as i64), denom.clone());
        (w, c)
    });
    Distribution::from_terms(n, terms).expect("same degree")
}

/// `Σ_r A_r C(k + n - r - 1, n) = k^n`.
pub fn worpitzky_holds(n: usize, k: u32) -> bool {
    let total: BigInt = eulerian_histogram(n)
        .iter()
        .enumerate()
        .map(|(r, &a)| BigInt::from(a) * binomial(k as i64 + n as i64 - r as i64 - 1, n as i64))
        .sum();
    total == BigInt::from(k).pow(n as u32)
}

/// Stack sizes drawn multinomially: each card picks a stack uniformly.
fn multinomial_cut(n: usize, k: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut sizes = vec![0; k];
    for _ in 0..n {
        sizes[rng.random_range(0..k)] += 1;
    }
    sizes
}

/// Drops cards one at a time, from a stack chosen with probability
/// proportional to its current size.
fn proportional_drop(stacks: Vec<Vec<i64>>, rng: &mut impl Rng) -> Vec<i64> {
    let mut remaining: Vec<usize> = stacks.iter().map(Vec::len).collect();
    let mut next = vec![0usize; stacks.len()];
    let mut total: usize = remaining.iter().sum();
    let mut deck = Vec::with_capacity(total);
    while total > 0 {
        let mut pick = rng.random_range(0..total);
        let i = remaining
            .iter()
            .position(|&r| {
                if pick < r {
                    true
                } else {
                    pick -= r;
                    false
                }
            })
            .expect("pick within total");
        deck.push(stacks[i][next[i]]);
        next[i] += 1;
        remaining[i] -= 1;
        total -= 1;
    }
    deck
}

fn cut_into_stacks(sizes: &[usize]) -> Vec<Vec<i64>> {
    let mut start = 1i64;
    sizes
        .iter()
        .map(|&s| {
            let stack: Vec<i64> = (start..start + s as i64).collect();
            start += s as i64;
            stack
        })
        .collect()
}

/// One riffle with `k` piles; returns the inverse of the deck order so that
/// draws follow `riffle_distribution`.
pub fn riffle_sample(n: usize, k: u32, rng: &mut impl Rng) -> Permutation {
    let sizes = multinomial_cut(n, k as usize, rng);
    let deck = proportional_drop(cut_into_stacks(&sizes), rng);
    let images = deck.into_iter().map(|c| c as usize).collect();
    Permutation::new(images).expect("deck is a permutation").inverse()
}

/// Stack `i` (1-based) of a `k`-stack type-C shuffle is turned over.
pub fn stack_is_flipped(k: u32, i: usize) -> bool {
    if k % 2 == 1 {
        i.is_multiple_of(2)
    } else {
        i % 2 == 1
    }
}

fn type_c_stacks(k: u32, sizes: &[usize]) -> Vec<Vec<i64>> {
    let mut stacks = cut_into_stacks(sizes);
    for (i, stack) in stacks.iter_mut().enumerate() {
        if stack_is_flipped(k, i + 1) {
            stack.reverse();
            stack.iter_mut().for_each(|c| *c = -*c);
        }
    }
    stacks
}

fn deal(stacks: &[Vec<i64>], labels: &[usize]) -> Vec<i64> {
    let mut next = vec![0usize; stacks.len()];
    labels
        .iter()
        .map(|&s| {
            let c = stacks[s][next[s]];
            next[s] += 1;
            c
        })
        .collect()
}

/// All `k^n` equally likely (cut, interleaving) branches of the type-C
/// `k`-stack model.
pub fn affine_c_shuffle_outcomes(n: usize, k: u32) -> Vec<ShuffleOutcome<SignedPermutation>> {
    let k_us = k as usize;
    let total = k_us.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut labels = Vec::with_capacity(n);
            for _ in 0..n {
                labels.push(idx % k_us);
                idx /= k_us;
            }
            labels.reverse();
            let mut sizes = vec![0; k_us];
            labels.iter().for_each(|&s| sizes[s] += 1);
            let deck = deal(&type_c_stacks(k, &sizes), &labels);
            let element = SignedPermutation::new(deck).expect("deck is a signed permutation");
            ShuffleOutcome {
                cut_sizes: sizes,
                interleaving: labels.iter().map(|s| s + 1).collect(),
                element,
            }
        })
        .collect()
}

pub fn affine_c_shuffle_distribution(n: usize, k: u32) -> Distribution<SignedPermutation> {
    let mass = Rational::new(BigInt::one(), BigInt::from(k).pow(n as u32));
    let mut out = Distribution::zero(n);
    for o in affine_c_shuffle_outcomes(n, k) {
        out.add_term(o.element, mass.clone()).expect("same degree");
    }
    out
}

/// One draw of the type-C model: multinomial cut, flips, proportional drop.
pub fn affine_c_shuffle_sample(n: usize, k: u32, rng: &mut impl Rng) -> SignedPermutation {
    let sizes = multinomial_cut(n, k as usize, rng);
    let deck = proportional_drop(type_c_stacks(k, &sizes), rng);
    SignedPermutation::new(deck).expect("deck is a signed permutation")
}

/// Closed-form law of the type-C affine `k`-shuffle, as an element.
pub fn type_c_measure(n: usize, k: u32) -> Distribution<SignedPermutation> {
    let terms = SignedPermutation::all(n).into_iter().map(|w| {
        let c = x_k_type_c(&w, k);
        (w, c)
    });
    Distribution::from_terms(n, terms).expect("same degree")
}

/// The two piles of the type-A 2-shuffle for an even pile size `2j`: the
/// middle cards, and the bottom `j` cards placed on the top `j` cards.
fn two_shuffle_piles(n: usize, j: usize) -> Vec<Vec<i64>> {
    let n = n as i64;
    let j = j as i64;
    let middle: Vec<i64> = (j + 1..=n - j).collect();
    let outer: Vec<i64> = (n - j + 1..=n).chain(1..=j).collect();
    vec![middle, outer]
}

/// Interleavings of two piles of sizes `a` and `b` as 0/1 label words.
fn two_pile_words(a: usize, b: usize) -> Vec<Vec<usize>> {
    let n = a + b;
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == b)
        .map(|m| (0..n).map(|i| ((m >> i) & 1) as usize).collect())
        .collect()
}

/// Exact law of the two-step type-A model: a pile of even size `2j` chosen
/// with probability `C(n, 2j)/2^{n-1}`, then a uniform interleaving.
pub fn affine_a_2shuffle_distribution(n: usize) -> Distribution<Permutation> {
    let mut out = Distribution::zero(n);
    if n <= 1 {
        out.add_term(Permutation::identity(n), Rational::one())
            .expect("same degree");
        return out;
    }
    let denom = BigInt::from(2).pow(n as u32 - 1);
    for j in 0..=n / 2 {
        let piles = two_shuffle_piles(n, j);
        // each interleaving gets C(n,2j)/2^{n-1} / C(n,2j)
        let mass = Rational::new(BigInt::one(), denom.clone());
        for word in two_pile_words(n - 2 * j, 2 * j) {
            let deck = deal(&piles, &word);
            let w = Permutation::new(deck.into_iter().map(|c| c as usize).collect()).expect("deck is a permutation");
            out.add_term(w, mass.clone()).expect("same degree");
        }
    }
    out
}

pub fn affine_a_2shuffle_sample(n: usize, rng: &mut impl Rng) -> Permutation {
    if n <= 1 {
        return Permutation::identity(n);
    }
    // C(n, 2j)/2^{n-1} is the law of n fair coin heads conditioned to be even
    let heads = loop {
        let h = (0..n).filter(|_| rng.random_bool(0.5)).count();
        if h % 2 == 0 {
            break h;
        }
    };
    let deck = proportional_drop(two_shuffle_piles(n, heads / 2), rng);
    Permutation::new(deck.into_iter().map(|c| c as usize).collect()).expect("deck is a permutation")
}

/// `½ Σ_x |P_1(x) - P_2(x)|`.
pub fn total_variation<E: WeylElement>(d1: &Distribution<E>, d2: &Distribution<E>) -> Result<Rational> {
    if d1.degree() != d2.degree() {
        return Err(Error::DegreeMismatch {
            left: d1.degree(),
            right: d2.degree(),
        });
    }
    let keys: std::collections::BTreeSet<&E> = d1.terms().map(|(e, _)| e).chain(d2.terms().map(|(e, _)| e)).collect();
    let sum = keys.into_iter().fold(Rational::zero(), |acc, e| {
        acc + (d1.coefficient(e) - d2.coefficient(e)).abs()
    });
    Ok(sum / Rational::from_integer(2.into()))
}

fn group_order<E: WeylElement>(n: usize) -> BigInt {
    let f = BigInt::from(factorial(n as u64));
    match E::FAMILY {
        crate::cellini::Family::A => f,
        crate::cellini::Family::C => f * BigInt::from(2).pow(n as u32),
    }
}

/// Both sides of the total-variation identity, each computed by summing
/// over group elements and by the descent-histogram formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TvCheck {
    pub n: usize,
    pub k: u32,
    pub type_c_by_elements: Rational,
    pub type_c_by_histogram: Rational,
    pub riffle_by_elements: Rational,
    pub riffle_by_histogram: Rational,
}

impl TvCheck {
    pub fn holds(&self) -> bool {
        let v = &self.type_c_by_elements;
        *v == self.type_c_by_histogram && *v == self.riffle_by_elements && *v == self.riffle_by_histogram
    }
}

/// TV of the type-C `k`-shuffle to uniform via `N_{r+1}`.
pub fn type_c_tv_by_histogram(n: usize, k: u32) -> Rational {
    let uniform = Rational::new(BigInt::one(), group_order::<SignedPermutation>(n));
    let denom = BigInt::from(k).pow(n as u32);
    let half_k = (k / 2) as i64;
    let sum = signed_cyclic_descent_histogram(n)
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (r, &count)| {
            let p = Rational::new(binomial(half_k + n as i64 - r as i64 - 1, n as i64), denom.clone());
            acc + (p - &uniform).abs() * Rational::from_integer(count.into())
        });
    sum / Rational::from_integer(2.into())
}

/// TV of the `k`-pile riffle to uniform via Eulerian numbers.
pub fn riffle_tv_by_histogram(n: usize, k: u32) -> Rational {
    let uniform = Rational::new(BigInt::one(), group_order::<Permutation>(n));
    let denom = BigInt::from(k).pow(n as u32);
    let sum = eulerian_histogram(n)
        .iter()
        .enumerate()
        .fold(Rational::zero(), |acc, (r, &count)| {
            let p = Rational::new(binomial(k as i64 + n as i64 - r as i64 - 1, n as i64), denom.clone());
            acc + (p - &uniform).abs() * Rational::from_integer(count.into())
        });
    sum / Rational::from_integer(2.into())
}

/// TV(type-C `k`-shuffle, uniform) against TV(`k/2`-riffle, uniform).
pub fn tv_identity_check(n: usize, k: u32) -> Result<TvCheck> {
    if !k.is_multiple_of(2) || k == 0 {
        return Err(Error::Domain(format!("k must be positive and even, got {k}")));
    }
    Ok(TvCheck {
        n,
        k,
        type_c_by_elements: total_variation(&type_c_measure(n, k), &uniform(n))?,
        type_c_by_histogram: type_c_tv_by_histogram(n, k),
        riffle_by_elements: total_variation(&riffle_distribution(n, k / 2), &uniform(n))?,
        riffle_by_histogram: riffle_tv_by_histogram(n, k / 2),
    })
}
