use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cellini::Family;
use crate::error::{Error, Result};
use crate::rational::{to_fraction_string, Rational};

use super::WeylElement;

/// Family label and rank of a Weyl group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroupKind {
    pub family: Family,
    pub rank: usize,
}

/// Sparse element of the rational group algebra. Elements not present have
/// coefficient zero; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement<E: WeylElement> {
    degree: usize,
    coeffs: BTreeMap<E, Rational>,
}

impl<E: WeylElement> GroupAlgebraElement<E> {
    pub fn zero(degree: usize) -> Self {
        GroupAlgebraElement {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// Point mass at `e`.
    pub fn delta(e: E) -> Self {
        let mut out = Self::zero(e.degree());
        out.coeffs.insert(e, Rational::from_integer(1.into()));
        out
    }

    pub fn from_terms(degree: usize, terms: impl IntoIterator<Item = (E, Rational)>) -> Result<Self> {
        let mut out = Self::zero(degree);
        for (e, c) in terms {
            out.add_term(e, c)?;
        }
        Ok(out)
    }

    pub fn kind(&self) -> GroupKind {
        GroupKind {
            family: E::FAMILY,
            rank: E::rank_for_degree(self.degree),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn add_term(&mut self, e: E, c: Rational) -> Result<()> {
        if e.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: e.degree(),
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        let slot = self.coeffs.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
        Ok(())
    }

    pub fn coefficient(&self, e: &E) -> Rational {
        self.coeffs.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&E, &Rational)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn total(&self) -> Rational {
        self.coeffs.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// Nonnegative coefficients summing to one.
    pub fn is_probability(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative()) && self.total() == Rational::from_integer(1.into())
    }

    /// Group-algebra product `Σ a_u b_v (u ∘ v)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut out = Self::zero(self.degree);
        for (u, a) in &self.coeffs {
            for (v, b) in &other.coeffs {
                out.add_term(u.compose(v), a * b)?;
            }
        }
        Ok(out)
    }

    /// `Σ c_w w^{-1}`.
    pub fn inverted(&self) -> Self {
        GroupAlgebraElement {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(e, c)| (e.inverse(), c.clone())).collect(),
        }
    }

    /// Sum of coefficients over each conjugacy class.
    pub fn class_sums(&self) -> BTreeMap<E::Class, Rational> {
        let mut out: BTreeMap<E::Class, Rational> = BTreeMap::new();
        for (e, c) in &self.coeffs {
            *out.entry(e.class()).or_insert_with(Rational::zero) += c;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn class_measure(&self) -> Result<ClassMeasure<E::Class>> {
        ClassMeasure::new(self.class_sums())
    }

    /// First element where the two elements differ, with both coefficients.
    pub fn first_difference(&self, other: &Self) -> Option<(E, Rational, Rational)> {
        let keys: std::collections::BTreeSet<&E> = self.coeffs.keys().chain(other.coeffs.keys()).collect();
        keys.into_iter().find_map(|e| {
            let (a, b) = (self.coefficient(e), other.coefficient(e));
            (a != b).then(|| (e.clone(), a, b))
        })
    }
}

/// Probability measure on conjugacy classes, stored exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassMeasure<K: Ord + Serialize> {
    #[serde(serialize_with = "serialize_masses")]
    masses: BTreeMap<K, Rational>,
}

fn serialize_masses<K: Ord + Serialize, S: serde::Serializer>(
    masses: &BTreeMap<K, Rational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(masses.len()))?;
    for (k, v) in masses {
        seq.serialize_element(&(k, to_fraction_string(v)))?;
    }
    seq.end()
}

impl<K: Ord + Clone + Serialize> ClassMeasure<K> {
    /// Validates that the masses are nonnegative and sum to exactly one.
    pub fn new(mut masses: BTreeMap<K, Rational>) -> Result<Self> {
        masses.retain(|_, v| !v.is_zero());
        let total = masses.values().fold(Rational::zero(), |acc, v| acc + v);
        if total != Rational::from_integer(1.into()) || masses.values().any(|v| v.is_negative()) {
            return Err(Error::NotNormalized(to_fraction_string(&total)));
        }
        Ok(ClassMeasure { masses })
    }

    pub fn mass(&self, k: &K) -> Rational {
        self.masses.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn masses(&self) -> &BTreeMap<K, Rational> {
        &self.masses
    }

    /// First class where the two measures disagree.
    pub fn first_difference(&self, other: &Self) -> Option<(K, Rational, Rational)> {
        let keys: std::collections::BTreeSet<&K> = self.masses.keys().chain(other.masses.keys()).collect();
        keys.into_iter().find_map(|k| {
            let (a, b) = (self.mass(k), other.mass(k));
            (a != b).then(|| (k.clone(), a, b))
        })
    }

    /// Moves `amount` of mass from `from` to `to`; the result still sums to one.
    /// Used only to prove the checks can fail.
    pub fn perturbed(&self, from: &K, to: &K, amount: &Rational) -> Self {
        let mut masses = self.masses.clone();
        *masses.entry(from.clone()).or_insert_with(Rational::zero) -= amount;
        *masses.entry(to.clone()).or_insert_with(Rational::zero) += amount;
        masses.retain(|_, v| !v.is_zero());
        ClassMeasure { masses }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{Permutation, SignedPermutation};
    use crate::rational::ratio;

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    #[test]
    fn identity_is_unit() {
        let a = GroupAlgebraElement::from_terms(
            3,
            [
                ("2,3,1".parse().unwrap(), ratio(1, 3)),
                ("1,3,2".parse().unwrap(), ratio(2, 3)),
            ],
        )
        .unwrap();
        let e = GroupAlgebraElement::delta(Permutation::identity(3));
        assert_eq!(e.convolve(&a).unwrap(), a);
        assert_eq!(a.convolve(&e).unwrap(), a);
    }

    #[test]
    fn inversion_of_c2_measure() {
        let q = ratio(1, 4);
        let a =
            GroupAlgebraElement::from_terms(2, ["1,2", "-1,2", "-2,1", "-2,-1"].map(|s| (sp(s), q.clone()))).unwrap();
        let expected =
            GroupAlgebraElement::from_terms(2, ["1,2", "-1,2", "2,-1", "-2,-1"].map(|s| (sp(s), q.clone()))).unwrap();
        assert_eq!(a.inverted(), expected);
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let a = GroupAlgebraElement::delta(Permutation::identity(2));
        let b = GroupAlgebraElement::delta(Permutation::identity(3));
        assert!(matches!(a.convolve(&b), Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn class_measure_requires_normalization() {
        let mut m = BTreeMap::new();
        m.insert(1u8, ratio(1, 2));
        assert!(ClassMeasure::new(m.clone()).is_err());
        m.insert(2u8, ratio(1, 2));
        let cm = ClassMeasure::new(m).unwrap();
        let p = cm.perturbed(&1, &2, &ratio(1, 4));
        assert_eq!(p.mass(&2), ratio(3, 4));
        assert_eq!(cm.first_difference(&p), Some((1, ratio(1, 2), ratio(1, 4))));
    }
}
