//! Root-system data for types A and C, lattice points of the dilated
//! fundamental alcove, the wall-pattern counts `a_{k,I}`, and the affine
//! k-shuffle element built from them.
//!
//! Pairings are Euclidean dot products in explicit coordinates:
//! type `A_{n-1}` uses `α_i = e_i - e_{i+1}`, `α_0 = e_n - e_1` on zero-sum
//! integer vectors; type `C_n` uses `α_i = e_i - e_{i+1}` (`i < n`),
//! `α_n = 2e_n`, `α_0 = -2e_1` on all of `Z^n`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::perm::{GroupAlgebraElement, Permutation, WeylElement};
use crate::rational::{inverse_power, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    A,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::A => "A",
            Family::C => "C",
        })
    }
}

/// Subset of the extended index set `{0, 1, .., r}`; bit `i` marks `α_i`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WallSet(u64);

impl WallSet {
    pub fn empty() -> Self {
        WallSet(0)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = WallSet(0);
        for i in indices {
            s.insert(i);
        }
        s
    }

    /// Every subset of `{0, .., r}`.
    pub fn all_subsets(rank: usize) -> impl Iterator<Item = WallSet> {
        (0u64..(1u64 << (rank + 1))).map(WallSet)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < 64, "wall index {i} out of range");
        self.0 |= 1 << i;
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_disjoint(self, other: WallSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..64).filter(|&i| self.contains(i)).collect()
    }
}

impl fmt::Display for WallSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|i| format!("α{i}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    pub family: Family,
    pub rank: usize,
    pub ambient_dim: usize,
    /// `simple_roots[i - 1] = α_i`.
    pub simple_roots: Vec<Vec<i64>>,
    /// Negative of the highest root.
    pub alpha_zero: Vec<i64>,
}

impl RootSystem {
    /// `A_{n-1}`, acting on `n` coordinates.
    pub fn type_a(n: usize) -> Self {
        assert!(n >= 1, "type A needs at least one coordinate");
        let unit = |i: usize| -> Vec<i64> {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        };
        let diff = |i: usize, j: usize| -> Vec<i64> { unit(i).iter().zip(unit(j)).map(|(a, b)| a - b).collect() };
        RootSystem {
            family: Family::A,
            rank: n - 1,
            ambient_dim: n,
            simple_roots: (0..n - 1).map(|i| diff(i, i + 1)).collect(),
            alpha_zero: diff(n - 1, 0),
        }
    }

    pub fn type_c(n: usize) -> Self {
        assert!(n >= 1, "type C needs rank at least one");
        let mut simple_roots: Vec<Vec<i64>> = (0..n - 1)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v[i + 1] = -1;
                v
            })
            .collect();
        let mut last = vec![0; n];
        last[n - 1] = 2;
        simple_roots.push(last);
        let mut alpha_zero = vec![0; n];
        alpha_zero[0] = -2;
        RootSystem {
            family: Family::C,
            rank: n,
            ambient_dim: n,
            simple_roots,
            alpha_zero,
        }
    }

    /// Root system of the Weyl group of `E` acting on `n` symbols.
    pub fn for_element<E: WeylElement>(n: usize) -> Self {
        match E::FAMILY {
            Family::A => Self::type_a(n),
            Family::C => Self::type_c(n),
        }
    }

    /// `α_i` for `i` in `0..=rank`.
    pub fn root(&self, i: usize) -> &[i64] {
        if i == 0 {
            &self.alpha_zero
        } else {
            &self.simple_roots[i - 1]
        }
    }

    pub fn pairing(&self, i: usize, y: &[i64]) -> i64 {
        self.root(i).iter().zip(y).map(|(a, b)| a * b).sum()
    }

    /// `⟨-α_0, y⟩`.
    pub fn height(&self, y: &[i64]) -> i64 {
        -self.pairing(0, y)
    }
}

/// Lattice point of the coroot lattice inside the closed dilated alcove.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct AlcovePoint {
    pub coords: Vec<i64>,
}

/// All points of `Y` in `{⟨α_i, y⟩ >= 0, ⟨-α_0, y⟩ <= k}`.
pub fn alcove_points(rs: &RootSystem, k: u32) -> Vec<AlcovePoint> {
    let k = k as i64;
    let n = rs.ambient_dim;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    match rs.family {
        // nonincreasing, zero sum, y_1 - y_n <= k; hence 0 <= y_1 <= k
        Family::A => {
            for top in 0..=k {
                cur.clear();
                cur.push(top);
                extend_type_a(n, k, top, &mut cur, &mut out);
            }
        }
        // nonincreasing, y_n >= 0, 2 y_1 <= k
        Family::C => extend_type_c(n, k / 2, &mut cur, &mut out),
    }
    debug_assert!(out.iter().all(|p| in_closed_alcove(rs, k, &p.coords)));
    out
}

fn extend_type_a(n: usize, k: i64, top: i64, cur: &mut Vec<i64>, out: &mut Vec<AlcovePoint>) {
    let partial: i64 = cur.iter().sum();
    let remaining = (n - cur.len()) as i64;
    if remaining == 0 {
        if partial == 0 {
            out.push(AlcovePoint { coords: cur.clone() });
        }
        return;
    }
    let lo = top - k;
    let prev = *cur.last().expect("first coordinate set");
    for v in (lo..=prev).rev() {
        let rest = remaining - 1;
        if partial + v + rest * lo > 0 || partial + v + rest * v < 0 {
            continue;
        }
        cur.push(v);
        extend_type_a(n, k, top, cur, out);
        cur.pop();
    }
}

fn extend_type_c(n: usize, bound: i64, cur: &mut Vec<i64>, out: &mut Vec<AlcovePoint>) {
    if cur.len() == n {
        out.push(AlcovePoint { coords: cur.clone() });
        return;
    }
    let hi = cur.last().copied().unwrap_or(bound);
    for v in 0..=hi {
        cur.push(v);
        extend_type_c(n, bound, cur, out);
        cur.pop();
    }
}

fn in_closed_alcove(rs: &RootSystem, k: i64, y: &[i64]) -> bool {
    let in_lattice = rs.family == Family::C || y.iter().sum::<i64>() == 0;
    in_lattice && (1..=rs.rank).all(|i| rs.pairing(i, y) >= 0) && rs.height(y) <= k
}

/// Walls of the dilated alcove containing `y`: `I(y)`.
pub fn wall_set(rs: &RootSystem, k: u32, y: &AlcovePoint) -> WallSet {
    let mut set = WallSet::empty();
    if rs.height(&y.coords) == k as i64 {
        set.insert(0);
    }
    for i in 1..=rs.rank {
        if rs.pairing(i, &y.coords) == 0 {
            set.insert(i);
        }
    }
    set
}

fn satisfies_pattern(rs: &RootSystem, k: i64, y: &[i64], walls: WallSet) -> bool {
    let h = rs.height(y);
    let simple_ok = |i: usize| {
        let p = rs.pairing(i, y);
        if walls.contains(i) {
            p == 0
        } else {
            p > 0
        }
    };
    if walls.contains(0) {
        h == k && (1..=rs.rank).all(simple_ok)
    } else {
        h < k && (1..=rs.rank).all(simple_ok)
    }
}

/// `a_{k,I}`: lattice points lying on exactly the walls in `I`.
pub fn a_k_i(rs: &RootSystem, k: u32, walls: WallSet) -> u64 {
    alcove_points(rs, k)
        .iter()
        .filter(|y| satisfies_pattern(rs, k as i64, &y.coords, walls))
        .count() as u64
}

/// `a_{k,I}` for every `I ⊆ {0..r}`, indexed by `I.bits()`.
pub fn wall_pattern_counts(rs: &RootSystem, k: u32) -> Vec<u64> {
    let points = alcove_points(rs, k);
    WallSet::all_subsets(rs.rank)
        .map(|walls| {
            points
                .iter()
                .filter(|y| satisfies_pattern(rs, k as i64, &y.coords, walls))
                .count() as u64
        })
        .collect()
}

/// Affine k-shuffle: coefficient of `w` is
/// `k^{-r} Σ_{I ⊆ Π̃ - Cdes(w)} a_{k,I}`.
pub fn affine_shuffle<E: WeylElement>(n: usize, k: u32) -> GroupAlgebraElement<E> {
    let rs = RootSystem::for_element::<E>(n);
    let counts = wall_pattern_counts(&rs, k);
    let scale = inverse_power(k as u64, rs.rank as u32);
    let mut out = GroupAlgebraElement::zero(n);
    for w in E::enumerate(n) {
        let cdes = w.cdes();
        let total: u64 = WallSet::all_subsets(rs.rank)
            .filter(|walls| walls.is_disjoint(cdes))
            .map(|walls| counts[walls.bits() as usize])
            .sum();
        out.add_term(w, Rational::from_integer(total.into()) * &scale)
            .expect("degree matches");
    }
    out
}

/// Coefficient of `w` in the type-A affine k-shuffle, counted directly from
/// the four lattice conditions on `(v_1, .., v_n)`.
pub fn x_k_type_a_lattice(w: &Permutation, k: u32) -> Rational {
    let n = w.degree();
    let imgs = w.images();
    let strict: Vec<bool> = imgs.windows(2).map(|p| p[0] > p[1]).collect();
    let affine_strict = n >= 1 && imgs[n - 1] > imgs[0];
    let k = k as i64;
    let mut count = 0u64;
    let mut v = Vec::with_capacity(n);
    for first in 0..=k {
        v.clear();
        v.push(first);
        count_lattice(n, k, &strict, affine_strict, &mut v, &mut count);
    }
    Rational::new(count.into(), BigInt::from(k).pow(n.saturating_sub(1) as u32))
}

fn count_lattice(n: usize, k: i64, strict: &[bool], affine_strict: bool, v: &mut Vec<i64>, count: &mut u64) {
    let len = v.len();
    if len == n {
        let spread = v[0] - v[n - 1];
        let sum: i64 = v.iter().sum();
        let affine_ok = if affine_strict { spread < k } else { spread <= k };
        if sum == 0 && affine_ok {
            *count += 1;
        }
        return;
    }
    let prev = v[len - 1];
    let hi = if strict[len - 1] { prev - 1 } else { prev };
    for next in (v[0] - k..=hi).rev() {
        v.push(next);
        count_lattice(n, k, strict, affine_strict, v, count);
        v.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CelliniSummary {
    pub family: Family,
    pub rank: usize,
    pub k: u32,
    pub h: u32,
    /// `Σ_I a_{k,I} |U_I|`, expected to equal `k^r`.
    pub measure_sum: String,
    /// `#{(y, w) : I(y) ∩ Cdes(w^{-1}) = ∅}`, expected to equal `k^r`.
    pub pair_count: String,
    pub convolution_support: usize,
}

/// First property that failed, with the offending data rendered as text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CelliniFailure {
    MeasureSum {
        expected: String,
        got: String,
    },
    PairCount {
        expected: String,
        got: String,
    },
    NotProbability {
        element: String,
        coefficient: String,
    },
    Convolution {
        element: String,
        product: String,
        expected: String,
    },
}

/// Checks the measure identity, the pair count behind the bijection with
/// semisimple classes, nonnegativity, and `x_k x_h = x_{kh}`.
pub fn verify_cellini_properties<E: WeylElement>(n: usize, k: u32, h: u32) -> Result<CelliniSummary, CelliniFailure> {
    let rs = RootSystem::for_element::<E>(n);
    let group = E::enumerate(n);
    let expected = BigInt::from(k).pow(rs.rank as u32);

    let counts = wall_pattern_counts(&rs, k);
    let measure_sum: BigInt = WallSet::all_subsets(rs.rank)
        .map(|walls| {
            let u_size = group.iter().filter(|w| w.cdes().is_disjoint(walls)).count();
            BigInt::from(counts[walls.bits() as usize]) * u_size
        })
        .sum();
    if measure_sum != expected {
        return Err(CelliniFailure::MeasureSum {
            expected: expected.to_string(),
            got: measure_sum.to_string(),
        });
    }

    let walls: Vec<WallSet> = alcove_points(&rs, k).iter().map(|y| wall_set(&rs, k, y)).collect();
    let pair_count: u64 = group
        .iter()
        .map(|w| {
            let inv_cdes = w.inverse().cdes();
            walls.iter().filter(|i| i.is_disjoint(inv_cdes)).count() as u64
        })
        .sum();
    if BigInt::from(pair_count) != expected {
        return Err(CelliniFailure::PairCount {
            expected: expected.to_string(),
            got: pair_count.to_string(),
        });
    }

    let xk = affine_shuffle::<E>(n, k);
    if let Some((e, c)) = xk.terms().find(|(_, c)| c < &&Rational::zero()) {
        return Err(CelliniFailure::NotProbability {
            element: e.to_string(),
            coefficient: c.to_string(),
        });
    }
    if xk.total() != Rational::one() {
        return Err(CelliniFailure::NotProbability {
            element: "<total>".into(),
            coefficient: xk.total().to_string(),
        });
    }
    let xh = affine_shuffle::<E>(n, h);
    let xkh = affine_shuffle::<E>(n, k * h);
    let product = xk.convolve(&xh).expect("same degree");
    if let Some((e, a, b)) = product.first_difference(&xkh) {
        return Err(CelliniFailure::Convolution {
            element: e.to_string(),
            product: a.to_string(),
            expected: b.to_string(),
        });
    }
    Ok(CelliniSummary {
        family: E::FAMILY,
        rank: rs.rank,
        k,
        h,
        measure_sum: measure_sum.to_string(),
        pair_count: pair_count.to_string(),
        convolution_support: product.support_len(),
    })
}
