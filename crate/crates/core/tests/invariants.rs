use proptest::prelude::*;

use affine_shuffles::closed_forms::{x_k_type_a, x_k_type_c, TypeAMethod};
use affine_shuffles::fq::{conjugate_poly, factor, field_of_order, FqPoly};
use affine_shuffles::numth::{q_binomial, von_sterneck};
use affine_shuffles::perm::{Permutation, SignedPermutation};
use affine_shuffles::rational::{ratio, Rational};
use affine_shuffles::series::{Monomial, TruncatedSeries, Var};
use affine_shuffles::shuffles::{riffle_distribution, total_variation, uniform};

fn perm(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn perm_pair(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1..=max_n).prop_flat_map(|n| {
        let one = || {
            Just((1..=n).collect::<Vec<usize>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::new(v).unwrap())
        };
        (one(), one(), one())
    })
}

fn signed_of(n: usize) -> impl Strategy<Value = SignedPermutation> {
    (
        Just((1..=n as i64).collect::<Vec<i64>>()).prop_shuffle(),
        prop::collection::vec(any::<bool>(), n),
    )
        .prop_map(|(v, s)| {
            let images = v.into_iter().zip(s).map(|(x, neg)| if neg { -x } else { x }).collect();
            SignedPermutation::new(images).unwrap()
        })
}

fn signed_triple(max_n: usize) -> impl Strategy<Value = (SignedPermutation, SignedPermutation, SignedPermutation)> {
    (1..=max_n).prop_flat_map(|n| (signed_of(n), signed_of(n), signed_of(n)))
}

const ORDERS: [u32; 7] = [2, 3, 4, 5, 7, 8, 9];

fn field_and_poly(max_deg: usize) -> impl Strategy<Value = (u32, Vec<u32>)> {
    prop::sample::select(ORDERS.to_vec())
        .prop_flat_map(move |q| (Just(q), prop::collection::vec(0..q, 1..=max_deg + 1)))
}

fn small_series() -> impl Strategy<Value = TruncatedSeries> {
    let term = (0u32..3, 0u32..3, 0u32..2, -3i64..4, 1i64..4);
    prop::collection::vec(term, 0..5).prop_map(|ts| {
        TruncatedSeries::from_terms(
            ts.into_iter().map(|(u, x1, x2, a, b)| {
                (
                    Monomial::from_pairs([(Var::U, u), (Var::X(1), x1), (Var::X(2), x2)]),
                    ratio(a, b),
                )
            }),
            4,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn permutation_group_laws((a, b, c) in perm_pair(8)) {
        let n = a.degree();
        prop_assert_eq!(a.compose(&a.inverse()), Permutation::identity(n));
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert_eq!(a.compose(&b).inverse(), b.inverse().compose(&a.inverse()));
        prop_assert_eq!(a.conjugate_by(&b).cycle_type(), a.cycle_type());
    }

    #[test]
    fn permutation_statistics(w in perm(9)) {
        let n = w.degree();
        let d = w.descent_set();
        prop_assert_eq!(d.len(), w.descents());
        prop_assert_eq!(d.iter().sum::<usize>(), w.major_index());
        prop_assert_eq!(w.cycle_type().size(), n);
        if n >= 2 {
            prop_assert!((1..n).contains(&w.cyclic_descents()));
        }
        let text = w.to_string();
        prop_assert_eq!(text.parse::<Permutation>().unwrap(), w);
    }

    #[test]
    fn signed_group_laws((a, b, c) in signed_triple(7)) {
        let n = a.degree();
        prop_assert_eq!(a.compose(&a.inverse()), SignedPermutation::identity(n));
        prop_assert_eq!(a.compose(&b).compose(&c), a.compose(&b.compose(&c)));
        prop_assert_eq!(a.compose(&b).unsigned(), a.unsigned().compose(&b.unsigned()));
        prop_assert_eq!(a.conjugate_by(&b).cycle_type(), a.cycle_type());
        for i in 1..=n as i64 {
            prop_assert_eq!(a.apply(-i), -a.apply(i));
        }
        prop_assert_eq!(a.to_string().parse::<SignedPermutation>().unwrap(), a);
    }

    #[test]
    fn signed_cyclic_descents_bounded(w in (1usize..=8).prop_flat_map(signed_of)) {
        let s = w.stats();
        prop_assert!((1..=w.degree()).contains(&s.cd));
        prop_assert_eq!(w.cycle_type().size(), w.degree());
    }

    #[test]
    fn closed_forms_agree_beyond_exhaustive_range(w in perm(9), k in 1u32..12) {
        let reference = x_k_type_a(&w, k, TypeAMethod::ALL[0]);
        for m in TypeAMethod::ALL {
            prop_assert_eq!(x_k_type_a(&w, k, m), reference.clone());
        }
    }

    #[test]
    fn closed_form_c_in_unit_interval(w in (1usize..=6).prop_flat_map(signed_of), k in 1u32..9) {
        let x = x_k_type_c(&w, k);
        prop_assert!(x >= Rational::from_integer(0.into()));
        prop_assert!(x <= Rational::from_integer(1.into()));
    }

    #[test]
    fn factorization_reconstructs((q, coeffs) in field_and_poly(7)) {
        let field = field_of_order(q).unwrap();
        let f = FqPoly::new(coeffs);
        prop_assume!(!f.is_zero());
        let fac = factor(&field, &f).unwrap();
        prop_assert_eq!(fac.reconstruct(&field), f.clone());
        for (g, _) in &fac.factors {
            prop_assert!(g.is_monic());
            prop_assert!(factor(&field, g).unwrap().is_irreducible());
        }
        prop_assert_eq!(fac.degree_type().size(), f.degree().unwrap());
    }

    #[test]
    fn conjugation_is_multiplicative_involution((q, a) in field_and_poly(5), b in prop::collection::vec(0u32..2, 1..5)) {
        let field = field_of_order(q).unwrap();
        let f = field.monic(&FqPoly::new(a));
        let g = field.monic(&FqPoly::new(b.iter().map(|&x| x % q).collect()));
        prop_assume!(!f.is_zero() && !g.is_zero() && f.coeff(0) != 0 && g.coeff(0) != 0);
        let cf = conjugate_poly(&field, &f).unwrap();
        prop_assert_eq!(conjugate_poly(&field, &cf).unwrap(), f.clone());
        let prod = field.poly_mul(&f, &g);
        prop_assert_eq!(
            conjugate_poly(&field, &prod).unwrap(),
            field.poly_mul(&cf, &conjugate_poly(&field, &g).unwrap())
        );
    }

    #[test]
    fn series_ring_laws(a in small_series(), b in small_series(), c in small_series()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn series_inverse(a in small_series()) {
        let shifted = a.mul(&TruncatedSeries::term(Monomial::var(Var::U), ratio(1, 1), 4)).unwrap();
        let s = TruncatedSeries::one(4).add(&shifted).unwrap();
        prop_assert_eq!(s.mul(&s.inverse().unwrap()).unwrap(), TruncatedSeries::one(4));
    }

    #[test]
    fn von_sterneck_reciprocity(m in 1u64..25, k in 1u64..25) {
        prop_assert_eq!(von_sterneck(m, k, 0), von_sterneck(k, m, 0));
    }

    #[test]
    fn q_binomial_symmetry(a in 0usize..14, b in 0usize..14) {
        prop_assume!(b <= a);
        let p = q_binomial(a, b).unwrap();
        prop_assert_eq!(&p, &q_binomial(a, a - b).unwrap());
        let c = p.coeffs();
        let rev: Vec<_> = c.iter().rev().cloned().collect();
        prop_assert_eq!(c, &rev[..]);
    }

    #[test]
    fn total_variation_is_a_metric(n in 1usize..5, k1 in 1u32..5, k2 in 1u32..5) {
        let (a, b, u) = (riffle_distribution(n, k1), riffle_distribution(n, k2), uniform::<Permutation>(n));
        let ab = total_variation(&a, &b).unwrap();
        prop_assert_eq!(&ab, &total_variation(&b, &a).unwrap());
        prop_assert!(ab <= total_variation(&a, &u).unwrap() + total_variation(&u, &b).unwrap());
        prop_assert!(ab <= Rational::from_integer(1.into()));
    }
}
