//! Parameter sweeps that compare every pair of independently computed
//! quantities and report the outcome.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cellini::{affine_shuffle, verify_cellini_properties, x_k_type_a_lattice, Family};
use crate::closed_forms::{x_k_type_a, x_k_type_c, TypeAMethod};
use crate::error::Error;
use crate::fq::{
    count_irreducibles, field_of_order, sl_class_measure, sp_class_measure, Factorizer, FieldContext, FqPoly,
};
use crate::numth::{aperiodic_necklaces, aperiodic_necklaces_with_sum, von_sterneck};
use crate::perm::{descent_histograms, ClassMeasure, CycleType, Permutation, SignedCycleType, SignedPermutation};
use crate::rational::{binomial, to_decimal_string, to_f64, to_fraction_string, Rational};
use crate::report::VerificationReport;
use crate::series::{
    reiner_identity_check, rhs_shape_product, rhs_type_c_product, rhs_unimodal_product, Monomial, Var,
};
use crate::shuffles::{
    affine_a_2shuffle_distribution, affine_c_shuffle_distribution, affine_c_shuffle_outcomes, affine_c_shuffle_sample,
    tv_identity_check,
};
use crate::unimodal::{
    distinct_shapes, enumerate_unimodal, eta_map, gannon_histogram, transitive_unimodal_count,
    transitive_unimodal_shapes, CycleShape,
};

type Check = Result<Vec<String>, Value>;

fn error_witness(e: Error) -> Value {
    json!({ "error": e.to_string() })
}

fn frac(r: &Rational) -> String {
    to_fraction_string(r)
}

fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn list<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn run(name: &str, parameters: BTreeMap<String, String>, body: impl FnOnce() -> Check) -> VerificationReport {
    let start = Instant::now();
    let report = match body() {
        Ok(notes) => VerificationReport::pass(name, parameters).with_notes(notes),
        Err(witness) => VerificationReport::fail(name, parameters, witness),
    };
    report.with_elapsed(start.elapsed())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            other => Err(Error::Domain(format!("unknown profile {other:?}"))),
        }
    }
}

/// Parameter table for one profile.
#[derive(Clone, Debug)]
pub struct Sizes {
    pub cellini_a_max_n: usize,
    pub cellini_c_max_n: usize,
    pub cellini_max_k: u32,
    pub convolution_a_n: usize,
    pub convolution_c_n: usize,
    pub closed_forms_max_n: usize,
    pub closed_forms_max_k: u32,
    pub dmp_a_max_n: usize,
    pub dmp_a_qs: Vec<u32>,
    pub dmp_c_max_n: usize,
    pub dmp_c_qs: Vec<u32>,
    pub model_a_max_n: usize,
    pub model_c_max_n: usize,
    pub model_c_max_k: u32,
    pub doubling_max_n: usize,
    pub tv_max_n: usize,
    pub tv_ks: Vec<u32>,
    pub gannon_max_n: usize,
    pub unimodal_count_max_n: usize,
    pub transitive_max_n: usize,
    pub eta_max_n: usize,
    pub palindromic_product_max_n: usize,
    pub palindromic_product_qs: Vec<u32>,
    pub unimodal_product_max_n: usize,
    pub shape_marginal_degree: usize,
    pub reiner_max_n: usize,
    pub reiner_max_k: u32,
    pub reciprocity_max: u64,
    pub reciprocity_brute_max: u64,
    pub limit_n: usize,
    pub limit_q: u32,
    pub necklace_ks: Vec<u32>,
    pub necklace_max_i: usize,
    pub sampler_draws: usize,
}

impl Profile {
    pub fn sizes(self) -> Sizes {
        match self {
            Profile::Quick => Sizes {
                cellini_a_max_n: 4,
                cellini_c_max_n: 2,
                cellini_max_k: 5,
                convolution_a_n: 3,
                convolution_c_n: 2,
                closed_forms_max_n: 5,
                closed_forms_max_k: 6,
                dmp_a_max_n: 4,
                dmp_a_qs: vec![2, 3, 4, 5],
                dmp_c_max_n: 2,
                dmp_c_qs: vec![2, 3, 5],
                model_a_max_n: 5,
                model_c_max_n: 2,
                model_c_max_k: 5,
                doubling_max_n: 5,
                tv_max_n: 4,
                tv_ks: vec![2, 4],
                gannon_max_n: 8,
                unimodal_count_max_n: 10,
                transitive_max_n: 10,
                eta_max_n: 6,
                palindromic_product_max_n: 2,
                palindromic_product_qs: vec![2, 3, 4, 5],
                unimodal_product_max_n: 6,
                shape_marginal_degree: 8,
                reiner_max_n: 2,
                reiner_max_k: 3,
                reciprocity_max: 12,
                reciprocity_brute_max: 6,
                limit_n: 8,
                limit_q: 2,
                necklace_ks: vec![2, 3, 4],
                necklace_max_i: 4,
                sampler_draws: 20_000,
            },
            Profile::Full => Sizes {
                cellini_a_max_n: 5,
                cellini_c_max_n: 3,
                cellini_max_k: 8,
                convolution_a_n: 4,
                convolution_c_n: 3,
                closed_forms_max_n: 6,
                closed_forms_max_k: 8,
                dmp_a_max_n: 6,
                dmp_a_qs: vec![2, 3, 4, 5],
                dmp_c_max_n: 4,
                dmp_c_qs: vec![2, 3, 5],
                model_a_max_n: 6,
                model_c_max_n: 3,
                model_c_max_k: 6,
                doubling_max_n: 6,
                tv_max_n: 6,
                tv_ks: vec![2, 4, 6, 8],
                gannon_max_n: 10,
                unimodal_count_max_n: 14,
                transitive_max_n: 14,
                eta_max_n: 10,
                palindromic_product_max_n: 3,
                palindromic_product_qs: vec![2, 3, 4, 5],
                unimodal_product_max_n: 8,
                shape_marginal_degree: 10,
                reiner_max_n: 3,
                reiner_max_k: 4,
                reciprocity_max: 30,
                reciprocity_brute_max: 10,
                limit_n: 8,
                limit_q: 2,
                necklace_ks: vec![2, 3, 4, 5],
                necklace_max_i: 5,
                sampler_draws: 100_000,
            },
        }
    }
}

fn compare_measures<K: Ord + Clone + serde::Serialize + std::fmt::Display>(
    source: &str,
    polynomials: &ClassMeasure<K>,
    shuffle: &ClassMeasure<K>,
) -> Result<(), Value> {
    match polynomials.first_difference(shuffle) {
        None => Ok(()),
        Some((class, a, b)) => Err(json!({
            "source": source,
            "class": class.to_string(),
            "polynomials": frac(&a),
            "shuffle": frac(&b),
        })),
    }
}

fn mass_note<K: Ord + Clone + serde::Serialize + std::fmt::Display>(m: &ClassMeasure<K>) -> String {
    let parts: Vec<String> = m.masses().iter().map(|(k, v)| format!("{k}:{}", frac(v))).collect();
    format!("class masses {}", parts.join(" "))
}

fn measure_from<E, K>(
    elements: Vec<E>,
    class: impl Fn(&E) -> K,
    coef: impl Fn(&E) -> Rational,
) -> Result<ClassMeasure<K>, Value>
where
    K: Ord + Clone + serde::Serialize,
{
    let mut masses: BTreeMap<K, Rational> = BTreeMap::new();
    for w in &elements {
        *masses.entry(class(w)).or_insert_with(Rational::zero) += coef(w);
    }
    ClassMeasure::new(masses).map_err(error_witness)
}

/// Moves half the mass of the first class onto the last one.
fn inject_fault<K: Ord + Clone + serde::Serialize>(m: &ClassMeasure<K>) -> ClassMeasure<K> {
    let first = m.masses().keys().next().expect("nonempty").clone();
    let last = m.masses().keys().last().expect("nonempty").clone();
    let amount = m.mass(&first) / Rational::from_integer(2.into());
    m.perturbed(&first, &last, &amount)
}

fn dmp_type_a(n: usize, q: u32, fault: bool) -> Check {
    let mut poly = sl_class_measure(n, q).map_err(error_witness)?;
    if fault {
        poly = inject_fault(&poly);
    }
    let group = Permutation::all(n);
    for method in TypeAMethod::ALL {
        let m = measure_from(group.clone(), Permutation::cycle_type, |w| x_k_type_a(w, q, method))?;
        compare_measures(&format!("method {}", method as u8), &poly, &m)?;
    }
    let lattice = affine_shuffle::<Permutation>(n, q)
        .class_measure()
        .map_err(error_witness)?;
    compare_measures("lattice", &poly, &lattice)?;
    Ok(vec![mass_note(&poly)])
}

fn dmp_type_c(n: usize, q: u32, fault: bool) -> Check {
    let mut poly = sp_class_measure(n, q).map_err(error_witness)?;
    if fault {
        poly = inject_fault(&poly);
    }
    let closed = measure_from(SignedPermutation::all(n), SignedPermutation::cycle_type, |w| {
        x_k_type_c(w, q)
    })?;
    compare_measures("closed form", &poly, &closed)?;
    let lattice = affine_shuffle::<SignedPermutation>(n, q)
        .class_measure()
        .map_err(error_witness)?;
    compare_measures("lattice", &poly, &lattice)?;
    Ok(vec![mass_note(&poly)])
}

/// Factorization-type law of uniform semisimple classes against the
/// class sums of the affine `q`-shuffle.
pub fn verify_dmp(family: Family, n: usize, q: u32) -> VerificationReport {
    verify_dmp_inner(family, n, q, false)
}

/// As `verify_dmp`, with one class mass deliberately moved so the check
/// must fail.
pub fn verify_dmp_with_fault(family: Family, n: usize, q: u32) -> VerificationReport {
    verify_dmp_inner(family, n, q, true)
}

fn verify_dmp_inner(family: Family, n: usize, q: u32, fault: bool) -> VerificationReport {
    let mut p = params([
        ("family", family.to_string()),
        ("n", n.to_string()),
        ("q", q.to_string()),
    ]);
    if fault {
        p.insert("fault".into(), "injected".into());
    }
    run("dmp", p, || match family {
        Family::A => dmp_type_a(n, q, fault),
        Family::C => dmp_type_c(n, q, fault),
    })
}

pub fn verify_dmp_sweep(family: Family, max_n: usize, qs: &[u32]) -> VerificationReport {
    let name = match family {
        Family::A => "dmp-a",
        Family::C => "dmp-c",
    };
    let p = params([("max_n", max_n.to_string()), ("q", list(qs))]);
    run(name, p, || {
        let cases: Vec<(usize, u32)> = (1..=max_n).flat_map(|n| qs.iter().map(move |&q| (n, q))).collect();
        let failures: Vec<VerificationReport> = cases
            .par_iter()
            .map(|&(n, q)| verify_dmp(family, n, q))
            .filter(|r| !r.passed())
            .collect();
        match failures.first() {
            None => Ok(vec![format!("{} cases", cases.len())]),
            Some(r) => Err(json!({ "parameters": r.parameters(), "witness": r.witness() })),
        }
    })
}

/// `Σ_{j=0}^{q-2}` multisets of `len` residues mod `m` summing to 0.
pub fn multiset_residue_count(m: u64, len: u64) -> u64 {
    fn go(m: u64, left: u64, min: u64, sum: u64) -> u64 {
        if left == 0 {
            return u64::from(sum.is_multiple_of(m));
        }
        (min..m).map(|r| go(m, left - 1, r, sum + r)).sum()
    }
    go(m, len, 0, 0)
}

/// Multisets of `n` residues mod `q - 1` summing to 0, against multisets of
/// `q - 1` residues mod `n` summing to 0.
pub fn verify_reciprocity(n: u64, q: u64) -> VerificationReport {
    let p = params([("n", n.to_string()), ("q", q.to_string())]);
    run("reciprocity", p, || reciprocity_case(n, q, n <= 10 && q <= 10))
}

fn reciprocity_case(n: u64, q: u64, brute: bool) -> Check {
    if n < 2 || q < 2 {
        return Err(json!({ "error": "n and q must be at least 2" }));
    }
    let left = von_sterneck(q - 1, n, 0);
    let right = von_sterneck(n, q - 1, 0);
    if left != right {
        return Err(json!({ "n": n, "q": q, "mod_q_minus_1": left.to_string(), "mod_n": right.to_string() }));
    }
    if brute {
        let (bl, br) = (multiset_residue_count(q - 1, n), multiset_residue_count(n, q - 1));
        if BigInt::from(bl) != left || BigInt::from(br) != right {
            return Err(json!({
                "n": n, "q": q, "formula": left.to_string(),
                "brute_mod_q_minus_1": bl, "brute_mod_n": br,
            }));
        }
    }
    Ok(vec![
        format!("both sides {left}"),
        "summands are residues 0..q-2 mod q-1".into(),
    ])
}

pub fn verify_reciprocity_sweep(max: u64, brute_max: u64) -> VerificationReport {
    let p = params([("max", max.to_string()), ("brute_max", brute_max.to_string())]);
    run("reciprocity", p, || {
        let cases: Vec<(u64, u64)> = (2..=max).flat_map(|n| (2..=max).map(move |q| (n, q))).collect();
        let bad = cases
            .par_iter()
            .map(|&(n, q)| reciprocity_case(n, q, n <= brute_max && q <= brute_max))
            .find_first(|r| r.is_err());
        match bad {
            Some(Err(w)) => Err(w),
            _ => Ok(vec![
                format!("{} pairs", cases.len()),
                "summands are residues 0..q-2 mod q-1".into(),
            ]),
        }
    })
}

fn cellini_case<E: crate::perm::WeylElement>(n: usize, k: u32, h: u32) -> Result<(), Value> {
    verify_cellini_properties::<E>(n, k, h)
        .map(|_| ())
        .map_err(|f| json!({ "family": E::FAMILY.to_string(), "n": n, "k": k, "h": h, "failure": f }))
}

/// Coefficient sums, pair counts and `x_k x_h = x_{kh}`.
pub fn verify_cellini(sizes: &Sizes) -> VerificationReport {
    let p = params([
        ("a_max_n", sizes.cellini_a_max_n.to_string()),
        ("c_max_n", sizes.cellini_c_max_n.to_string()),
        ("max_k", sizes.cellini_max_k.to_string()),
        (
            "convolution",
            format!("A{} C{}", sizes.convolution_a_n - 1, sizes.convolution_c_n),
        ),
    ]);
    run("cellini", p, || {
        let mut jobs: Vec<(Family, usize, u32, u32)> = Vec::new();
        for k in 1..=sizes.cellini_max_k {
            jobs.extend((1..=sizes.cellini_a_max_n).map(|n| (Family::A, n, k, 1)));
            jobs.extend((1..=sizes.cellini_c_max_n).map(|n| (Family::C, n, k, 1)));
        }
        for k in [2, 3] {
            for h in [2, 3] {
                jobs.push((Family::A, sizes.convolution_a_n, k, h));
                jobs.push((Family::C, sizes.convolution_c_n, k, h));
            }
        }
        let bad = jobs
            .par_iter()
            .map(|&(fam, n, k, h)| match fam {
                Family::A => cellini_case::<Permutation>(n, k, h),
                Family::C => cellini_case::<SignedPermutation>(n, k, h),
            })
            .find_first(|r| r.is_err());
        match bad {
            Some(Err(w)) => Err(w),
            _ => Ok(vec![format!("{} cases", jobs.len())]),
        }
    })
}

/// The four type-A closed forms, the direct lattice count and the
/// wall-pattern definition agree on every permutation.
pub fn verify_closed_forms(max_n: usize, max_k: u32) -> VerificationReport {
    let p = params([("max_n", max_n.to_string()), ("max_k", max_k.to_string())]);
    run("closed-forms", p, || {
        let cases: Vec<(usize, u32)> = (1..=max_n).flat_map(|n| (1..=max_k).map(move |k| (n, k))).collect();
        let bad = cases
            .par_iter()
            .map(|&(n, k)| -> Result<(), Value> {
                let generic = affine_shuffle::<Permutation>(n, k);
                for w in Permutation::all(n) {
                    let reference = generic.coefficient(&w);
                    let mut values = vec![("lattice".to_string(), x_k_type_a_lattice(&w, k))];
                    values.extend(
                        TypeAMethod::ALL
                            .iter()
                            .map(|&m| (format!("method {}", m as u8), x_k_type_a(&w, k, m))),
                    );
                    if let Some((name, v)) = values.iter().find(|(_, v)| *v != reference) {
                        return Err(json!({
                            "w": w.to_string(), "k": k, "definition": frac(&reference),
                            "source": name, "value": frac(v),
                        }));
                    }
                }
                Ok(())
            })
            .find_first(|r| r.is_err());
        match bad {
            Some(Err(w)) => Err(w),
            _ => Ok(vec![format!("{} (n, k) pairs", cases.len())]),
        }
    })
}

/// The two-pile type-A model against `x_2`, both orientations.
pub fn verify_type_a_model(max_n: usize) -> VerificationReport {
    let p = params([("max_n", max_n.to_string()), ("k", "2".into())]);
    run("model-type-a", p, || {
        let mut direct = Vec::new();
        for n in 2..=max_n {
            let model = affine_a_2shuffle_distribution(n);
            let x2 = affine_shuffle::<Permutation>(n, 2);
            if let Some((w, a, b)) = model.first_difference(&x2.inverted()) {
                return Err(json!({
                    "n": n, "orientation": "inverse", "element": w.to_string(),
                    "model": frac(&a), "measure": frac(&b),
                }));
            }
            if model == x2 {
                direct.push(n);
            }
        }
        Ok(vec![
            "model law equals the inverted measure".into(),
            format!(
                "model law also equals the measure itself for n in {{{}}}",
                list(&direct)
            ),
        ])
    })
}

/// The `k`-stack type-C model against `x_k`, both orientations.
pub fn verify_type_c_model(max_n: usize, max_k: u32) -> VerificationReport {
    let p = params([("max_n", max_n.to_string()), ("max_k", max_k.to_string())]);
    run("model-type-c", p, || {
        let mut direct = Vec::new();
        for n in 1..=max_n {
            for k in 1..=max_k {
                let model = affine_c_shuffle_distribution(n, k);
                let xk = affine_shuffle::<SignedPermutation>(n, k);
                if let Some((w, a, b)) = model.first_difference(&xk.inverted()) {
                    return Err(json!({
                        "n": n, "k": k, "orientation": "inverse", "element": w.to_string(),
                        "model": frac(&a), "measure": frac(&b),
                    }));
                }
                if model == xk {
                    direct.push(format!("({n},{k})"));
                }
            }
        }
        Ok(vec![
            "model law equals the inverted measure".into(),
            format!(
                "model law also equals the measure itself for (n,k) in {{{}}}",
                direct.join(" ")
            ),
        ])
    })
}

/// `N_{r+1} = 2^n A_r`.
pub fn verify_doubling(max_n: usize) -> VerificationReport {
    let p = params([("max_n", max_n.to_string())]);
    run("doubling", p, || {
        for n in 1..=max_n {
            let h = descent_histograms(n);
            if !h.satisfies_doubling(n) {
                return Err(json!({ "n": n, "eulerian": h.eulerian, "signed_cyclic": h.signed_cyclic }));
            }
        }
        Ok(vec![])
    })
}

/// Total variation of the type-C `k`-shuffle against the `k/2` riffle.
pub fn verify_tv(max_n: usize, ks: &[u32]) -> VerificationReport {
    let p = params([("max_n", max_n.to_string()), ("k", list(ks))]);
    run("tv", p, || {
        let cases: Vec<(usize, u32)> = (1..=max_n).flat_map(|n| ks.iter().map(move |&k| (n, k))).collect();
        let results: Vec<Result<(usize, u32, Rational), Value>> = cases
            .par_iter()
            .map(|&(n, k)| {
                let c = tv_identity_check(n, k).map_err(error_witness)?;
                if c.holds() {
                    Ok((n, k, c.type_c_by_elements))
                } else {
                    Err(json!({
                        "n": n, "k": k,
                        "type_c_by_elements": frac(&c.type_c_by_elements),
                        "type_c_by_histogram": frac(&c.type_c_by_histogram),
                        "riffle_by_elements": frac(&c.riffle_by_elements),
                        "riffle_by_histogram": frac(&c.riffle_by_histogram),
                    }))
                }
            })
            .collect();
        let mut notes = Vec::new();
        for r in results {
            let (n, k, tv) = r?;
            notes.push(format!("n={n} k={k} tv={}", frac(&tv)));
        }
        Ok(notes)
    })
}

/// TV table rows `(n, k, tv)` for CSV output.
pub fn tv_table(max_n: usize, ks: &[u32]) -> crate::Result<Vec<(usize, u32, Rational)>> {
    let mut rows = Vec::new();
    for n in 1..=max_n {
        for &k in ks {
            let c = tv_identity_check(n, k)?;
            if !c.holds() {
                return Err(Error::Domain(format!("total variation identity fails at n={n}, k={k}")));
            }
            rows.push((n, k, c.type_c_by_elements));
        }
    }
    Ok(rows)
}

/// Every shape-multiset class of unimodal permutations has `2^{l-1}`
/// elements; there are `2^{n-1}` unimodal permutations.
pub fn verify_gannon(max_n: usize, count_max_n: usize) -> VerificationReport {
    let p = params([("max_n", max_n.to_string()), ("count_max_n", count_max_n.to_string())]);
    run("gannon", p, || {
        for n in 1..=count_max_n {
            let got = enumerate_unimodal(n).len();
            if got != 1 << (n - 1) {
                return Err(json!({ "n": n, "unimodal": got, "expected": 1u64 << (n - 1) }));
            }
        }
        let mut classes = 0;
        for n in 1..=max_n {
            for (ms, count) in gannon_histogram(n) {
                let expected = 1u64 << (distinct_shapes(&ms) - 1);
                if count != expected {
                    let shapes: Vec<String> = ms.iter().map(CycleShape::to_string).collect();
                    return Err(json!({ "n": n, "shapes": shapes, "count": count, "expected": expected }));
                }
                classes += 1;
            }
        }
        Ok(vec![format!("{classes} classes")])
    })
}

pub fn verify_transitive(max_n: usize) -> VerificationReport {
    let p = params([("max_n", max_n.to_string())]);
    run("transitive", p, || {
        let mut values = Vec::new();
        for n in 1..=max_n {
            let closed = transitive_unimodal_count(n as u64);
            let brute = transitive_unimodal_shapes(n).len() as u64;
            if closed != brute {
                return Err(json!({ "n": n, "closed_form": closed, "enumerated": brute }));
            }
            values.push(closed);
        }
        Ok(vec![format!("counts {}", list(&values))])
    })
}

/// The map from type-C 2-shuffle outcomes onto unimodal permutations.
pub fn verify_eta(max_n: usize) -> VerificationReport {
    let p = params([("max_n", max_n.to_string())]);
    run("eta", p, || {
        let example: SignedPermutation = "-6,-5,7,8,-4,9,-3,10,-2,11,-1,12".parse().map_err(error_witness)?;
        let intermediate = example.inverse().unsigned();
        let printed: Permutation = "11,9,7,5,2,1,3,4,6,8,10,12".parse().map_err(error_witness)?;
        if intermediate != printed {
            return Err(json!({ "example": example.to_string(), "intermediate": intermediate.to_string() }));
        }
        for n in 1..=max_n {
            let mut hits: BTreeMap<Permutation, usize> = BTreeMap::new();
            for o in affine_c_shuffle_outcomes(n, 2) {
                let v = eta_map(&o.element).map_err(error_witness)?;
                if v.cycle_type() != o.element.unsigned().cycle_type() {
                    return Err(json!({ "n": n, "outcome": o.element.to_string(), "image": v.to_string() }));
                }
                *hits.entry(v).or_insert(0) += 1;
            }
            let unimodal: BTreeSet<Permutation> = enumerate_unimodal(n).into_iter().collect();
            let image: BTreeSet<Permutation> = hits.keys().cloned().collect();
            if image != unimodal {
                return Err(json!({ "n": n, "image_size": image.len(), "unimodal": unimodal.len() }));
            }
            if let Some((v, c)) = hits.iter().find(|(_, &c)| c != 2) {
                return Err(json!({ "n": n, "image": v.to_string(), "preimages": c }));
            }
        }
        Ok(vec![format!("worked example intermediate {intermediate}")])
    })
}

fn monomial_masses(m: &ClassMeasure<SignedCycleType>, scale: &Rational) -> BTreeMap<Monomial, Rational> {
    m.masses()
        .iter()
        .map(|(t, v)| (Monomial::of_signed_type(t), v * scale))
        .collect()
}

fn compare_coefficients(
    expected: &BTreeMap<Monomial, Rational>,
    series: &BTreeMap<Monomial, Rational>,
) -> Option<(Monomial, Rational, Rational)> {
    let keys: BTreeSet<&Monomial> = expected.keys().chain(series.keys()).collect();
    keys.into_iter().find_map(|m| {
        let a = expected.get(m).cloned().unwrap_or_else(Rational::zero);
        let b = series.get(m).cloned().unwrap_or_else(Rational::zero);
        (a != b).then(|| (m.clone(), a, b))
    })
}

/// Coefficients of the type-C product formula against palindromic
/// polynomial counts.
pub fn verify_palindromic_product(max_n: usize, qs: &[u32]) -> VerificationReport {
    let p = params([("max_n", max_n.to_string()), ("q", list(qs))]);
    run("palindromic-product", p, || {
        for &q in qs {
            let rhs = rhs_type_c_product(q as i64, max_n as u32).map_err(error_witness)?;
            for n in 1..=max_n {
                let measure = sp_class_measure(n, q).map_err(error_witness)?;
                let qn = Rational::from_integer(BigInt::from(q).pow(n as u32));
                let expected = monomial_masses(&measure, &qn);
                if let Some((m, a, b)) = compare_coefficients(&expected, &rhs.u_coefficient(n as u32)) {
                    return Err(json!({
                        "q": q, "n": n, "monomial": m.to_string(),
                        "polynomial_count": frac(&a), "product": frac(&b),
                    }));
                }
            }
        }
        Ok(vec![])
    })
}

fn cycle_monomial(t: &CycleType) -> Monomial {
    Monomial::from_pairs(t.parts().iter().map(|&p| (Var::X(p as u32), 1)))
}

/// Cycle-type and cycle-shape product formulas against enumeration of
/// unimodal permutations.
pub fn verify_unimodal_product(max_n: usize, marginal_degree: usize) -> VerificationReport {
    let p = params([
        ("max_n", max_n.to_string()),
        ("marginal_degree", marginal_degree.to_string()),
    ]);
    run("unimodal-product", p, || {
        let by_type = rhs_unimodal_product(max_n as u32).map_err(error_witness)?;
        let shapes: Vec<CycleShape> = (1..=marginal_degree.max(max_n))
            .flat_map(transitive_unimodal_shapes)
            .collect();
        let index: BTreeMap<&CycleShape, u32> = shapes.iter().enumerate().map(|(i, s)| (s, i as u32)).collect();
        let sizes: Vec<usize> = shapes.iter().map(CycleShape::len).collect();
        let by_shape = rhs_shape_product(&sizes, max_n as u32).map_err(error_witness)?;
        for n in 1..=max_n {
            let weight = Rational::new(BigInt::one(), BigInt::from(2).pow(n as u32 - 1));
            let mut types: BTreeMap<Monomial, Rational> = BTreeMap::new();
            let mut shape_terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
            for w in enumerate_unimodal(n) {
                *types
                    .entry(cycle_monomial(&w.cycle_type()))
                    .or_insert_with(Rational::zero) += &weight;
                let m = Monomial::from_pairs(
                    crate::unimodal::shape_multiset(&w)
                        .iter()
                        .map(|s| (Var::Shape(index[s]), 1)),
                );
                *shape_terms.entry(m).or_insert_with(Rational::zero) += &weight;
            }
            if let Some((m, a, b)) = compare_coefficients(&types, &by_type.u_coefficient(n as u32)) {
                return Err(
                    json!({ "form": "cycle type", "n": n, "monomial": m.to_string(), "enumeration": frac(&a), "product": frac(&b) }),
                );
            }
            if let Some((m, a, b)) = compare_coefficients(&shape_terms, &by_shape.u_coefficient(n as u32)) {
                return Err(
                    json!({ "form": "cycle shape", "n": n, "monomial": m.to_string(), "enumeration": frac(&a), "product": frac(&b) }),
                );
            }
        }
        // all shape variables at 1 must leave 1/(1-u)
        let mut marginal = rhs_shape_product(&sizes, marginal_degree as u32).map_err(error_witness)?;
        for j in 0..shapes.len() {
            marginal = marginal.substitute(Var::Shape(j as u32), &Rational::one());
        }
        for e in 0..=marginal_degree as u32 {
            let c = marginal.coefficient(&Monomial::from_pairs([(Var::U, e)]));
            if c != Rational::one() {
                return Err(json!({ "form": "marginal", "degree": e, "coefficient": frac(&c) }));
            }
        }
        Ok(vec![format!("{} shapes tracked", shapes.len())])
    })
}

pub fn verify_reiner(max_n: usize, max_k: u32) -> VerificationReport {
    let p = params([("max_n", max_n.to_string()), ("max_k", max_k.to_string())]);
    run("reiner", p, || match reiner_identity_check(max_n as u32, max_k) {
        Err(e) => Err(error_witness(e)),
        Ok(Err(m)) => Err(json!({
            "k": m.k, "n": m.n, "monomial": m.monomial.to_string(),
            "descent_side": frac(&m.left), "product_side": frac(&m.right),
        })),
        Ok(Ok(count)) => Ok(vec![
            format!("{count} coefficients compared"),
            "k ranges over 1..max_k".into(),
        ]),
    })
}

/// Exact law of the number of positive 1-cycles under the type-C
/// `q`-shuffle on `n` cards.
pub fn fixed_point_marginal(n: usize, q: u32) -> crate::Result<Vec<Rational>> {
    let m = sp_class_measure(n, q)?;
    let mut out = vec![Rational::zero(); n + 1];
    for (t, v) in m.masses() {
        out[t.positive_multiplicity(1)] += v;
    }
    Ok(out)
}

/// `P(j) = C(c+j-1, j) (1-1/q)^c q^{-j}` with `c = (q+e-1)/2`.
pub fn limiting_fixed_point_law(q: u32, j: usize) -> Rational {
    let e = if q.is_multiple_of(2) { 1 } else { 2 };
    let c = ((q + e - 1) / 2) as i64;
    let p = Rational::new(BigInt::from(q - 1), BigInt::from(q));
    let qj = Rational::new(BigInt::one(), BigInt::from(q).pow(j as u32));
    Rational::from_integer(binomial(c + j as i64 - 1, j as i64)) * num_traits::pow(p, c as usize) * qj
}

/// Sup-norm distance between the exact marginal and the limit law, over all
/// `j >= 0`.
pub fn limit_law_distance(n: usize, q: u32) -> crate::Result<Rational> {
    let exact = fixed_point_marginal(n, q)?;
    let mut sup = Rational::zero();
    for (j, p) in exact.iter().enumerate() {
        sup = sup.max((p - limiting_fixed_point_law(q, j)).abs());
    }
    // past n the exact law is 0; the limit law is unimodal in j
    let mut j = n + 1;
    let mut prev = limiting_fixed_point_law(q, j);
    loop {
        let next = limiting_fixed_point_law(q, j + 1);
        if next <= prev {
            break;
        }
        prev = next;
        j += 1;
    }
    Ok(sup.max(prev))
}

pub const LIMIT_LAW_TOLERANCE: (i64, i64) = (1, 20);

pub fn verify_limit_law(n: usize, q: u32) -> VerificationReport {
    let tol = Rational::new(LIMIT_LAW_TOLERANCE.0.into(), LIMIT_LAW_TOLERANCE.1.into());
    let p = params([("n", n.to_string()), ("q", q.to_string()), ("tolerance", frac(&tol))]);
    run("limit-law", p, || {
        let d = limit_law_distance(n, q).map_err(error_witness)?;
        let note = format!("sup distance {} ~ {}", frac(&d), to_decimal_string(&d, 6));
        if d <= tol {
            Ok(vec![note])
        } else {
            Err(json!({ "distance": frac(&d), "tolerance": frac(&tol) }))
        }
    })
}

/// Irreducible counts by norm class against aperiodic necklace counts by
/// digit sum.
fn necklace_case(field: &FieldContext, max_i: usize) -> Result<(), Value> {
    let k = field.order();
    let modulus = (k - 1) as usize;
    let logs = field.discrete_logs();
    let fz = Factorizer::new(field, 2 * max_i);
    for i in 1..=max_i {
        let total = aperiodic_necklaces(k as usize, i);
        let by_sum: BigInt = (0..=i * (k as usize - 1))
            .map(|m| aperiodic_necklaces_with_sum(k as usize, i, m))
            .sum();
        if total != count_irreducibles(i as u64, k as u64) || by_sum != total {
            return Err(json!({ "k": k, "i": i, "necklaces": total.to_string(), "by_sum": by_sum.to_string() }));
        }
        let mut poly_counts = vec![0u64; modulus];
        let z = FqPoly::new(vec![0, 1]);
        for g in fz.irreducibles_of_degree(i).into_iter().filter(|g| *g != z) {
            let c0 = g.coeff(0);
            let norm = if i % 2 == 1 { field.neg(c0) } else { c0 };
            poly_counts[logs[norm as usize] as usize % modulus] += 1;
        }
        let mut neck_counts = vec![BigInt::zero(); modulus];
        for m in 1..=i * (k as usize - 1) {
            neck_counts[m % modulus] += aperiodic_necklaces_with_sum(k as usize, i, m);
        }
        let poly_big: Vec<BigInt> = poly_counts.iter().map(|&c| BigInt::from(c)).collect();
        if poly_big != neck_counts {
            return Err(json!({
                "k": k, "i": i,
                "polynomials_by_norm": poly_counts,
                "necklaces_by_sum": neck_counts.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }));
        }
    }
    Ok(())
}

/// Stands in for the unsimplified bivariate generating-function statement:
/// its content is the type-A class equality (checked by `dmp-a`) plus the
/// necklace counts checked here.
pub fn verify_necklaces(ks: &[u32], max_i: usize) -> VerificationReport {
    let p = params([("k", list(ks)), ("max_i", max_i.to_string())]);
    run("necklaces", p, || {
        for &k in ks {
            let field = field_of_order(k).map_err(error_witness)?;
            necklace_case(&field, max_i)?;
        }
        Ok(vec![
            "bivariate statement verified through its constituents: dmp-a and these counts".into(),
        ])
    })
}

pub const SAMPLER_TOLERANCE: f64 = 0.02;

/// Empirical frequencies of seeded type-C 2-shuffles on 3 cards.
pub fn verify_sampler(draws: usize, seed: u64) -> VerificationReport {
    let (n, k) = (3, 2);
    let p = params([
        ("n", n.to_string()),
        ("k", k.to_string()),
        ("draws", draws.to_string()),
        ("seed", seed.to_string()),
        ("tolerance", SAMPLER_TOLERANCE.to_string()),
    ]);
    run("sampler", p, || {
        let exact = affine_c_shuffle_distribution(n, k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts: BTreeMap<SignedPermutation, usize> = BTreeMap::new();
        for _ in 0..draws {
            *counts.entry(affine_c_shuffle_sample(n, k, &mut rng)).or_insert(0) += 1;
        }
        let mut worst = (0.0f64, String::new());
        for w in SignedPermutation::all(n) {
            let freq = counts.get(&w).copied().unwrap_or(0) as f64 / draws as f64;
            let diff = (freq - to_f64(&exact.coefficient(&w))).abs();
            if diff > worst.0 {
                worst = (diff, w.to_string());
            }
        }
        if worst.0 <= SAMPLER_TOLERANCE {
            Ok(vec![format!("sup distance {:.5}", worst.0)])
        } else {
            Err(json!({ "element": worst.1, "distance": worst.0 }))
        }
    })
}

/// The checks selected by a `verify` subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Dmp,
    Cellini,
    Tv,
    Gannon,
    Reciprocity,
    Reiner,
    All,
}

impl FromStr for Group {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "dmp" => Group::Dmp,
            "cellini" => Group::Cellini,
            "tv" => Group::Tv,
            "gannon" => Group::Gannon,
            "reciprocity" => Group::Reciprocity,
            "reiner" => Group::Reiner,
            "all" => Group::All,
            other => return Err(Error::Domain(format!("unknown check group {other:?}"))),
        })
    }
}

type Job<'a> = Box<dyn Fn() -> VerificationReport + Send + Sync + 'a>;

fn jobs(group: Group, s: &Sizes) -> Vec<Job<'_>> {
    let mut out: Vec<Job<'_>> = Vec::new();
    let all = group == Group::All;
    if all || group == Group::Dmp {
        out.push(Box::new(|| verify_dmp_sweep(Family::A, s.dmp_a_max_n, &s.dmp_a_qs)));
        out.push(Box::new(|| verify_dmp_sweep(Family::C, s.dmp_c_max_n, &s.dmp_c_qs)));
    }
    if all || group == Group::Cellini {
        out.push(Box::new(|| verify_cellini(s)));
        out.push(Box::new(|| {
            verify_closed_forms(s.closed_forms_max_n, s.closed_forms_max_k)
        }));
    }
    if all || group == Group::Tv {
        out.push(Box::new(|| verify_tv(s.tv_max_n, &s.tv_ks)));
        out.push(Box::new(|| verify_doubling(s.doubling_max_n)));
    }
    if all || group == Group::Gannon {
        out.push(Box::new(|| verify_gannon(s.gannon_max_n, s.unimodal_count_max_n)));
        out.push(Box::new(|| verify_transitive(s.transitive_max_n)));
    }
    if all || group == Group::Reciprocity {
        out.push(Box::new(|| {
            verify_reciprocity_sweep(s.reciprocity_max, s.reciprocity_brute_max)
        }));
    }
    if all || group == Group::Reiner {
        out.push(Box::new(|| verify_reiner(s.reiner_max_n, s.reiner_max_k)));
        out.push(Box::new(|| {
            verify_palindromic_product(s.palindromic_product_max_n, &s.palindromic_product_qs)
        }));
    }
    if all {
        out.push(Box::new(|| verify_type_a_model(s.model_a_max_n)));
        out.push(Box::new(|| verify_type_c_model(s.model_c_max_n, s.model_c_max_k)));
        out.push(Box::new(|| verify_eta(s.eta_max_n)));
        out.push(Box::new(|| {
            verify_unimodal_product(s.unimodal_product_max_n, s.shape_marginal_degree)
        }));
        out.push(Box::new(|| verify_limit_law(s.limit_n, s.limit_q)));
        out.push(Box::new(|| verify_necklaces(&s.necklace_ks, s.necklace_max_i)));
        out.push(Box::new(|| verify_sampler(s.sampler_draws, 2024)));
    }
    out
}

/// Runs a group of checks concurrently; reports are ordered by name.
pub fn verify_group(group: Group, profile: Profile) -> Vec<VerificationReport> {
    let sizes = profile.sizes();
    let mut reports: Vec<VerificationReport> = jobs(group, &sizes).par_iter().map(|job| job()).collect();
    reports.sort_by(|a, b| a.check_name().cmp(b.check_name()));
    reports
}

pub fn verify_all(profile: Profile) -> Vec<VerificationReport> {
    verify_group(Group::All, profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn dmp_examples() {
        let r = verify_dmp(Family::A, 3, 3);
        assert!(r.passed(), "{r}");
        assert!(r.notes()[0].contains("(1,1,1):2/9"), "{r}");
        assert!(r.notes()[0].contains("(3):4/9"), "{r}");
        assert!(verify_dmp(Family::A, 3, 2).passed());
        let r = verify_dmp(Family::C, 2, 2);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn fault_injection_fails_with_witness() {
        let r = verify_dmp_with_fault(Family::A, 3, 3);
        assert!(!r.passed());
        let w = r.witness().unwrap();
        assert_eq!(w["source"], "method 1");
        assert!(w["class"].is_string());
        let r = verify_dmp_with_fault(Family::C, 2, 3);
        assert!(!r.passed());
        assert_eq!(r.witness().unwrap()["source"], "closed form");
    }

    #[test]
    fn reciprocity_examples() {
        let r = verify_reciprocity(3, 3);
        assert!(r.passed());
        assert!(r.notes()[0].ends_with(" 2"));
        assert!(verify_reciprocity(4, 2).notes()[0].ends_with(" 1"));
        assert!(verify_reciprocity(2, 5).notes()[0].ends_with(" 3"));
        assert_eq!(multiset_residue_count(4, 2), 3);
    }

    #[test]
    fn limit_law_value() {
        assert_eq!(limiting_fixed_point_law(2, 0), Rational::new(1.into(), 2.into()));
        assert_eq!(limiting_fixed_point_law(2, 3), Rational::new(1.into(), 16.into()));
        let total: Rational = (0..60).map(|j| limiting_fixed_point_law(3, j)).sum();
        assert!(to_f64(&total) > 0.999_999);
        let d = limit_law_distance(4, 2).unwrap();
        assert!(d.is_positive());
    }

    #[test]
    fn reports_are_reproducible() {
        let a = verify_group(Group::Reciprocity, Profile::Quick);
        let b = verify_group(Group::Reciprocity, Profile::Quick);
        assert_eq!(a.len(), b.len());
        assert!(a.iter().zip(&b).all(|(x, y)| x.same_content(y)));
    }

    #[test]
    fn necklace_small() {
        for k in [2, 3, 4] {
            necklace_case(&field_of_order(k).unwrap(), 3).unwrap();
        }
    }

    #[test]
    fn tv_rows() {
        let rows = tv_table(2, &[2]).unwrap();
        assert_eq!(rows.last().unwrap().2, Rational::new(1.into(), 2.into()));
        assert!(rows.iter().all(|r| r.2.to_f64().is_some()));
    }
}
