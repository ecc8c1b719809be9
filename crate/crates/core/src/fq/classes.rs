use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{conjugate_poly, field_of_order, Factorization, Factorizer, FieldContext, FqPoly};
use crate::error::{Error, Result};
use crate::perm::{ClassMeasure, CycleType, SignedCycleType};
use crate::rational::Rational;

/// Monic degree-`n` polynomials with constant term 1 (`q^{n-1}` of them).
pub fn monic_with_unit_constant(field: &FieldContext, n: usize) -> Vec<FqPoly> {
    assert!(n >= 1);
    field
        .monic_polys(n - 1)
        .map(|tail| {
            let mut coeffs = vec![1];
            coeffs.extend_from_slice(&tail.coeffs()[..n - 1]);
            coeffs.push(1);
            FqPoly::new(coeffs)
        })
        .collect()
}

/// Monic palindromic polynomials of degree `2n` (`q^n` of them).
pub fn palindromic(field: &FieldContext, n: usize) -> Vec<FqPoly> {
    assert!(n >= 1);
    field
        .monic_polys(n)
        .map(|free| {
            // free[0] fills z^n, free[i] fills z^{n-i} and z^{n+i}
            let mut coeffs = vec![0u32; 2 * n + 1];
            coeffs[0] = 1;
            coeffs[2 * n] = 1;
            coeffs[n] = free.coeff(0);
            for i in 1..n {
                coeffs[n - i] = free.coeff(i);
                coeffs[n + i] = free.coeff(i);
            }
            FqPoly::new(coeffs)
        })
        .collect()
}

fn normalize<K: Ord + Clone + serde::Serialize>(counts: BTreeMap<K, u64>) -> ClassMeasure<K> {
    let total: u64 = counts.values().sum();
    let masses = counts
        .into_iter()
        .map(|(k, c)| (k, Rational::new(c.into(), total.into())))
        .collect();
    ClassMeasure::new(masses).expect("counts normalize to one")
}

fn merge<K: Ord>(mut a: BTreeMap<K, u64>, b: BTreeMap<K, u64>) -> BTreeMap<K, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

pub fn sl_type_counts(field: &FieldContext, n: usize) -> BTreeMap<CycleType, u64> {
    let fz = Factorizer::new(field, n);
    monic_with_unit_constant(field, n)
        .par_iter()
        .map(|f| {
            let t = fz.factor(f).expect("nonzero").degree_type();
            BTreeMap::from([(t, 1u64)])
        })
        .reduce(BTreeMap::new, merge)
}

pub fn sl_class_measure_in(field: &FieldContext, n: usize) -> ClassMeasure<CycleType> {
    normalize(sl_type_counts(field, n))
}

/// Distribution of factor-degree partitions of a uniform monic degree-`n`
/// polynomial with constant term 1 over `F_q`.
pub fn sl_class_measure(n: usize, q: u32) -> Result<ClassMeasure<CycleType>> {
    Ok(sl_class_measure_in(&field_of_order(q)?, n))
}

/// Folds the factorization of a palindromic polynomial into `(λ, μ)`.
pub fn signed_type_of_factorization(field: &FieldContext, fact: &Factorization) -> Result<SignedCycleType> {
    let mut lambda: Vec<usize> = Vec::new();
    let mut mu: Vec<usize> = Vec::new();
    let bump = |v: &mut Vec<usize>, i: usize, by: usize| {
        if v.len() < i {
            v.resize(i, 0);
        }
        v[i - 1] += by;
    };
    let mults: BTreeMap<&FqPoly, u32> = fact.factors.iter().map(|(g, m)| (g, *m)).collect();
    for (g, &m) in &mults {
        let d = g.degree().expect("irreducible factor");
        let bar = conjugate_poly(field, g)?;
        let m = m as usize;
        if bar == **g {
            if d == 1 {
                if !m.is_multiple_of(2) {
                    return Err(Error::Convention(format!("linear factor {g} has odd multiplicity {m}")));
                }
                bump(&mut lambda, 1, m / 2);
            } else if d % 2 == 0 {
                bump(&mut mu, d / 2, m % 2);
                bump(&mut lambda, d, m / 2);
            } else {
                return Err(Error::Convention(format!(
                    "self-conjugate factor {g} of odd degree {d}"
                )));
            }
        } else {
            if mults.get(&bar).copied() != Some(m as u32) {
                return Err(Error::Convention(format!(
                    "factor {g} and its conjugate {bar} differ in multiplicity"
                )));
            }
            // each pair is visited twice
            if **g < bar {
                bump(&mut lambda, d, m);
            }
        }
    }
    Ok(SignedCycleType::from_counts(&lambda, &mu))
}

pub fn sp_type_counts(field: &FieldContext, n: usize) -> Result<BTreeMap<SignedCycleType, u64>> {
    let fz = Factorizer::new(field, 2 * n);
    palindromic(field, n)
        .par_iter()
        .map(|f| {
            let t = signed_type_of_factorization(field, &fz.factor(f)?)?;
            debug_assert_eq!(t.size(), n);
            Ok(BTreeMap::from([(t, 1u64)]))
        })
        .try_reduce(BTreeMap::new, |a, b| Ok(merge(a, b)))
}

pub fn sp_class_measure_in(field: &FieldContext, n: usize) -> Result<ClassMeasure<SignedCycleType>> {
    Ok(normalize(sp_type_counts(field, n)?))
}

/// Distribution of `(λ, μ)` types of a uniform monic palindromic polynomial
/// of degree `2n` over `F_q`.
pub fn sp_class_measure(n: usize, q: u32) -> Result<ClassMeasure<SignedCycleType>> {
    sp_class_measure_in(&field_of_order(q)?, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FieldContext;
    use crate::rational::ratio;

    fn ct(p: &[usize]) -> CycleType {
        CycleType::from_parts(p.to_vec())
    }

    fn st(l: &[usize], m: &[usize]) -> SignedCycleType {
        SignedCycleType::new(l.to_vec(), m.to_vec())
    }

    #[test]
    fn enumeration_sizes() {
        for q in [2u32, 3, 4, 5] {
            let field = field_of_order(q).unwrap();
            for n in 1..=4 {
                assert_eq!(
                    monic_with_unit_constant(&field, n).len() as u64,
                    (q as u64).pow(n as u32 - 1)
                );
                let pals = palindromic(&field, n);
                assert_eq!(pals.len() as u64, (q as u64).pow(n as u32));
                assert!(pals.iter().all(|p| p.is_palindromic() && p.degree() == Some(2 * n)));
            }
        }
    }

    #[test]
    fn sl_examples() {
        let m = sl_class_measure(3, 2).unwrap();
        assert_eq!(m.mass(&ct(&[1, 1, 1])), ratio(1, 4));
        assert_eq!(m.mass(&ct(&[2, 1])), ratio(1, 4));
        assert_eq!(m.mass(&ct(&[3])), ratio(1, 2));
        let m = sl_class_measure(3, 3).unwrap();
        assert_eq!(m.mass(&ct(&[1, 1, 1])), ratio(2, 9));
        assert_eq!(m.mass(&ct(&[2, 1])), ratio(3, 9));
        assert_eq!(m.mass(&ct(&[3])), ratio(4, 9));
        assert_eq!(sl_class_measure(1, 5).unwrap().mass(&ct(&[1])), ratio(1, 1));
    }

    #[test]
    fn sp_examples() {
        let m = sp_class_measure(1, 2).unwrap();
        assert_eq!(m.mass(&st(&[1], &[])), ratio(1, 2));
        assert_eq!(m.mass(&st(&[], &[1])), ratio(1, 2));
        let m = sp_class_measure(1, 3).unwrap();
        assert_eq!(m.mass(&st(&[1], &[])), ratio(2, 3));
        assert_eq!(m.mass(&st(&[], &[1])), ratio(1, 3));
        let m = sp_class_measure(2, 2).unwrap();
        for t in [st(&[1, 1], &[]), st(&[2], &[]), st(&[1], &[1]), st(&[], &[2])] {
            assert_eq!(m.mass(&t), ratio(1, 4), "{t}");
        }
    }

    #[test]
    fn sp_types_have_size_n() {
        for q in [2u32, 3, 4, 5] {
            for n in 1..=3 {
                let m = sp_class_measure(n, q).unwrap();
                assert!(m.masses().keys().all(|t| t.size() == n));
            }
        }
    }

    #[test]
    fn odd_linear_multiplicity_is_a_convention_error() {
        let f3 = field_of_order(3).unwrap();
        // (z - 1)^3 is not palindromic-compatible with the folding rule
        let fact = Factorization {
            unit: 1,
            factors: vec![(FqPoly::new(vec![2, 1]), 3)],
        };
        assert!(matches!(
            signed_type_of_factorization(&f3, &fact),
            Err(Error::Convention(_))
        ));
    }

    #[test]
    fn modulus_choice_does_not_matter() {
        let a = FieldContext::with_modulus(3, vec![1, 0, 1]).unwrap();
        let b = FieldContext::with_modulus(3, vec![2, 1, 1]).unwrap();
        assert_eq!(sl_class_measure_in(&a, 3), sl_class_measure_in(&b, 3));
        assert_eq!(sp_class_measure_in(&a, 2).unwrap(), sp_class_measure_in(&b, 2).unwrap());
    }
}
