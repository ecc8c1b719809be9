//! Sparse multivariate power series truncated in the degree of `u`, and the
//! product formulas compared against enumerations.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::numth::{divisors, mu};
use crate::perm::{SignedCycleType, SignedPermutation};
use crate::rational::{binomial, Rational};
use crate::unimodal::transitive_unimodal_count;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    U,
    T,
    /// Positive `i`-cycles, or `i`-cycles in type A.
    X(u32),
    /// Negative `i`-cycles.
    Y(u32),
    /// Cycles of the `i`-th tracked cycle shape.
    Shape(u32),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::U => f.write_str("u"),
            Var::T => f.write_str("t"),
            Var::X(i) => write!(f, "x{i}"),
            Var::Y(i) => write!(f, "y{i}"),
            Var::Shape(i) => write!(f, "s{i}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Var, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial::from_pairs([(v, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m = m.times_var(v, e);
        }
        m
    }

    pub fn times_var(mut self, v: Var, e: u32) -> Self {
        if e > 0 {
            *self.0.entry(v).or_insert(0) += e;
        }
        self
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (&v, &e) in &other.0 {
            out = out.times_var(v, e);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|(&v, &d)| (v, d * e))
                .filter(|(_, d)| *d > 0)
                .collect(),
        )
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn without(&self, v: Var) -> Monomial {
        let mut out = self.clone();
        out.0.remove(&v);
        out
    }

    pub fn exponents(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().map(|(&v, &e)| (v, e))
    }

    /// `Π x_i^{λ_i} y_i^{μ_i}` for a signed cycle type.
    pub fn of_signed_type(t: &SignedCycleType) -> Monomial {
        let xs = t.lambda().iter().map(|&p| (Var::X(p as u32), 1));
        let ys = t.mu().iter().map(|&p| (Var::Y(p as u32), 1));
        Monomial::from_pairs(xs.chain(ys))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Power series in which every term of `u`-degree above `truncation` is
/// dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    terms: BTreeMap<Monomial, Rational>,
    truncation: u32,
}

impl TruncatedSeries {
    pub fn zero(truncation: u32) -> Self {
        TruncatedSeries {
            terms: BTreeMap::new(),
            truncation,
        }
    }

    pub fn one(truncation: u32) -> Self {
        Self::constant(Rational::one(), truncation)
    }

    pub fn constant(c: Rational, truncation: u32) -> Self {
        Self::term(Monomial::one(), c, truncation)
    }

    pub fn term(m: Monomial, c: Rational, truncation: u32) -> Self {
        Self::from_terms([(m, c)], truncation)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>, truncation: u32) -> Self {
        let mut s = Self::zero(truncation);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if m.degree_in(Var::U) > self.truncation || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of `u^n`, as a series in the remaining variables.
    pub fn u_coefficient(&self, n: u32) -> BTreeMap<Monomial, Rational> {
        self.terms
            .iter()
            .filter(|(m, _)| m.degree_in(Var::U) == n)
            .map(|(m, c)| (m.without(Var::U), c.clone()))
            .collect()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.truncation != other.truncation {
            return Err(Error::TruncationMismatch {
                left: self.truncation,
                right: other.truncation,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, v)| (m.clone(), v * c)), self.truncation)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let du = ma.degree_in(Var::U);
            for (mb, cb) in &other.terms {
                if du + mb.degree_in(Var::U) > self.truncation {
                    continue;
                }
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(TruncatedSeries {
            terms: acc,
            truncation: self.truncation,
        })
    }

    fn is_u_nilpotent(&self) -> bool {
        self.terms.keys().all(|m| m.degree_in(Var::U) >= 1)
    }

    /// `g^j` for `j = 0..=N`, enough to expand any power series in a
    /// nilpotent `g`.
    fn powers(&self) -> Result<Vec<Self>> {
        if !self.is_u_nilpotent() {
            return Err(Error::NotNilpotent);
        }
        let mut out = vec![Self::one(self.truncation)];
        for _ in 0..self.truncation {
            let next = out.last().expect("nonempty").mul(self)?;
            if next.terms.is_empty() {
                break;
            }
            out.push(next);
        }
        Ok(out)
    }

    /// `(1/(1-g))^c = Σ_j C(c+j-1, j) g^j`.
    pub fn geometric_power(g: &Self, c: u64) -> Result<Self> {
        let mut out = Self::zero(g.truncation);
        for (j, gj) in g.powers()?.iter().enumerate() {
            // multiset coefficient; the j = 0 term is 1 even when c = 0
            let coef = if j == 0 {
                BigInt::one()
            } else {
                binomial(c as i64 + j as i64 - 1, j as i64)
            };
            out = out.add(&gj.scale(&Rational::from_integer(coef)))?;
        }
        Ok(out)
    }

    /// `(1+g)^c = Σ_j C(c, j) g^j`.
    pub fn one_plus_power(g: &Self, c: u64) -> Result<Self> {
        let mut out = Self::zero(g.truncation);
        for (j, gj) in g.powers()?.iter().enumerate() {
            let coef = binomial(c as i64, j as i64);
            out = out.add(&gj.scale(&Rational::from_integer(coef)))?;
        }
        Ok(out)
    }

    /// Multiplicative inverse; the `u`-free part must be a nonzero constant.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.coefficient(&Monomial::one());
        let rest = self.add(&Self::constant(-c.clone(), self.truncation))?;
        if c.is_zero() || !rest.is_u_nilpotent() {
            return Err(Error::NotNilpotent);
        }
        // 1/(c + r) = (1/c) · 1/(1 - (-r/c))
        let g = rest.scale(&(-c.recip()));
        Ok(Self::geometric_power(&g, 1)?.scale(&c.recip()))
    }

    /// Evaluates one variable at a rational value.
    pub fn substitute(&self, v: Var, value: &Rational) -> Self {
        Self::from_terms(
            self.terms.iter().map(|(m, c)| {
                let e = m.degree_in(v);
                (m.without(v), c * num_traits::pow(value.clone(), e as usize))
            }),
            self.truncation,
        )
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{}*{m}", crate::rational::to_fraction_string(c)))
            .collect();
        write!(f, "{} + O(u^{})", parts.join(" + "), self.truncation + 1)
    }
}

fn exact_quotient(num: BigInt, den: u64, what: impl Fn() -> String) -> Result<u64> {
    let (q, r) = num.div_rem(&BigInt::from(den));
    if !r.is_zero() || q.is_negative() {
        return Err(Error::NonIntegralExponent(what()));
    }
    q.to_u64().ok_or_else(|| Error::NonIntegralExponent(what()))
}

/// `(1/2m) Σ_{d|m, d odd} μ(d) (q^{m/d} + 1 - e)`, with `e = 1` for even `q`
/// and `e = 2` for odd `q`.
pub fn type_c_exponent(m: u64, q: i64) -> Result<u64> {
    let e = if q % 2 == 0 { 1 } else { 2 };
    let num: BigInt = divisors(m)
        .into_iter()
        .filter(|d| d % 2 == 1)
        .map(|d| BigInt::from(mu(d)) * (BigInt::from(q).pow((m / d) as u32) + 1 - e))
        .sum();
    exact_quotient(num, 2 * m, || format!("m={m}, q={q}"))
}

fn monomial_series(m: Monomial, c: Rational, n: u32) -> TruncatedSeries {
    TruncatedSeries::term(m, c, n)
}

/// `(1/(1-x_1 u))^{e-1} Π_m ((1 + y_m u^m)/(1 - x_m u^m))^{E_m}` through
/// `u^n`.
pub fn rhs_type_c_product(q: i64, n: u32) -> Result<TruncatedSeries> {
    if q < 1 {
        return Err(Error::Domain(format!("q must be positive, got {q}")));
    }
    let e = if q % 2 == 0 { 1 } else { 2 };
    let x1u = monomial_series(Monomial::from_pairs([(Var::X(1), 1), (Var::U, 1)]), Rational::one(), n);
    let mut out = TruncatedSeries::geometric_power(&x1u, e - 1)?;
    for m in 1..=n {
        let em = type_c_exponent(m as u64, q)?;
        if em == 0 {
            continue;
        }
        let xm = monomial_series(Monomial::from_pairs([(Var::X(m), 1), (Var::U, m)]), Rational::one(), n);
        let ym = monomial_series(Monomial::from_pairs([(Var::Y(m), 1), (Var::U, m)]), Rational::one(), n);
        out = out.mul(&TruncatedSeries::one_plus_power(&ym, em)?)?;
        out = out.mul(&TruncatedSeries::geometric_power(&xm, em)?)?;
    }
    Ok(out)
}

/// `((2^i + v u^i)/(2^i - v u^i))^c`.
fn unimodal_factor(v: Var, size: u32, c: u64, n: u32) -> Result<TruncatedSeries> {
    let g = monomial_series(
        Monomial::from_pairs([(v, 1), (Var::U, size)]),
        Rational::new(BigInt::one(), BigInt::from(2).pow(size)),
        n,
    );
    TruncatedSeries::one_plus_power(&g, c)?.mul(&TruncatedSeries::geometric_power(&g, c)?)
}

/// `Π_i ((2^i + x_i u^i)/(2^i - x_i u^i))^{T_i}` through `u^n`, `T_i` the
/// transitive unimodal counts.
pub fn rhs_unimodal_product(n: u32) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::one(n);
    for i in 1..=n {
        out = out.mul(&unimodal_factor(Var::X(i), i, transitive_unimodal_count(i as u64), n)?)?;
    }
    Ok(out)
}

/// `Π_s (2^{|s|} + x_s u^{|s|})/(2^{|s|} - x_s u^{|s|})` over the given
/// shape sizes; shape `j` is tracked by `Var::Shape(j)`.
pub fn rhs_shape_product(shape_sizes: &[usize], n: u32) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::one(n);
    for (j, &size) in shape_sizes.iter().enumerate() {
        if size as u32 <= n {
            out = out.mul(&unimodal_factor(Var::Shape(j as u32), size as u32, 1, n)?)?;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesMismatch {
    pub k: u32,
    pub n: u32,
    pub monomial: Monomial,
    pub left: Rational,
    pub right: Rational,
}

/// Left side of the `t^k` coefficient in the descent/cycle identity for
/// hyperoctahedral groups: `Σ_n u^n Σ_w C(k-1+n-d(w), n) Π x^λ y^μ`.
pub fn reiner_left(k: u32, n_max: u32) -> TruncatedSeries {
    let mut out = TruncatedSeries::one(n_max);
    for n in 1..=n_max {
        for w in SignedPermutation::all(n as usize) {
            let c = binomial(k as i64 - 1 + n as i64 - w.stats().d as i64, n as i64);
            let m = Monomial::of_signed_type(&w.cycle_type()).times_var(Var::U, n);
            out.add_term(m, Rational::from_integer(c));
        }
    }
    out
}

/// Compares both sides for `k = 1..=k_max` through `u^{n_max}`; returns the
/// number of coefficients compared or the first disagreement.
pub fn reiner_identity_check(n_max: u32, k_max: u32) -> Result<std::result::Result<usize, SeriesMismatch>> {
    let mut compared = 0;
    for k in 1..=k_max {
        let left = reiner_left(k, n_max);
        let right = rhs_type_c_product(2 * k as i64 - 1, n_max)?;
        let monomials: std::collections::BTreeSet<&Monomial> = left.terms.keys().chain(right.terms.keys()).collect();
        for m in monomials {
            let (l, r) = (left.coefficient(m), right.coefficient(m));
            if l != r {
                return Ok(Err(SeriesMismatch {
                    k,
                    n: m.degree_in(Var::U),
                    monomial: m.without(Var::U),
                    left: l,
                    right: r,
                }));
            }
            compared += 1;
        }
    }
    Ok(Ok(compared))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn u() -> Monomial {
        Monomial::var(Var::U)
    }

    fn upow(e: u32) -> Monomial {
        Monomial::from_pairs([(Var::U, e)])
    }

    #[test]
    fn geometric_series() {
        let g = TruncatedSeries::term(u(), int(1), 3);
        let s = TruncatedSeries::geometric_power(&g, 1).unwrap();
        for e in 0..=3 {
            assert_eq!(s.coefficient(&upow(e)), int(1));
        }
        assert_eq!(s.terms().len(), 4);
    }

    #[test]
    fn rational_function() {
        let num = TruncatedSeries::from_terms([(Monomial::one(), int(2)), (u(), int(1))], 2);
        let den = TruncatedSeries::from_terms([(Monomial::one(), int(2)), (u(), int(-1))], 2);
        let s = num.mul(&den.inverse().unwrap()).unwrap();
        assert_eq!(s.coefficient(&Monomial::one()), int(1));
        assert_eq!(s.coefficient(&u()), int(1));
        assert_eq!(s.coefficient(&upow(2)), ratio(1, 2));
    }

    #[test]
    fn difference_of_squares() {
        let a = TruncatedSeries::from_terms([(Monomial::one(), int(1)), (u(), int(1))], 4);
        let b = TruncatedSeries::from_terms([(Monomial::one(), int(1)), (u(), int(-1))], 4);
        let p = a.mul(&b).unwrap();
        assert_eq!(
            p,
            TruncatedSeries::from_terms([(Monomial::one(), int(1)), (upow(2), int(-1))], 4)
        );
    }

    #[test]
    fn errors() {
        let a = TruncatedSeries::one(2);
        let b = TruncatedSeries::one(3);
        assert_eq!(a.mul(&b), Err(Error::TruncationMismatch { left: 2, right: 3 }));
        let t = TruncatedSeries::term(Monomial::var(Var::T), int(1), 2);
        assert_eq!(TruncatedSeries::geometric_power(&t, 1), Err(Error::NotNilpotent));
        assert_eq!(TruncatedSeries::zero(2).inverse(), Err(Error::NotNilpotent));
    }

    #[test]
    fn type_c_product_examples() {
        let r = rhs_type_c_product(2, 2).unwrap();
        let mon = |pairs: &[(Var, u32)]| Monomial::from_pairs(pairs.iter().copied());
        assert_eq!(r.coefficient(&mon(&[(Var::U, 1), (Var::X(1), 1)])), int(1));
        assert_eq!(r.coefficient(&mon(&[(Var::U, 2), (Var::Y(2), 1)])), int(1));
        let r = rhs_type_c_product(3, 1).unwrap();
        assert_eq!(r.coefficient(&mon(&[(Var::U, 1), (Var::Y(1), 1)])), int(1));
        assert_eq!(r.coefficient(&mon(&[(Var::U, 1), (Var::X(1), 1)])), int(2));
    }

    #[test]
    fn exponents() {
        assert_eq!(type_c_exponent(1, 2).unwrap(), 1);
        assert_eq!(type_c_exponent(2, 2).unwrap(), 1);
        assert_eq!(type_c_exponent(1, 3).unwrap(), 1);
        assert_eq!(type_c_exponent(1, 1).unwrap(), 0);
    }

    #[test]
    fn unimodal_product_examples() {
        let r = rhs_unimodal_product(3).unwrap();
        let mon = |pairs: &[(Var, u32)]| Monomial::from_pairs(pairs.iter().copied());
        assert_eq!(r.coefficient(&mon(&[(Var::U, 3), (Var::X(3), 1)])), ratio(1, 4));
        assert_eq!(r.coefficient(&mon(&[(Var::U, 3), (Var::X(1), 3)])), ratio(1, 4));
        assert_eq!(
            r.coefficient(&mon(&[(Var::U, 3), (Var::X(1), 1), (Var::X(2), 1)])),
            ratio(1, 2)
        );
    }

    #[test]
    fn unimodal_product_marginal_is_geometric() {
        // all shape variables at 1 leaves 1/(1-u)
        let sizes: Vec<usize> = (1..=10u64)
            .flat_map(|i| std::iter::repeat_n(i as usize, transitive_unimodal_count(i) as usize))
            .collect();
        let r = rhs_shape_product(&sizes, 10).unwrap();
        let mut s = r;
        for j in 0..sizes.len() {
            s = s.substitute(Var::Shape(j as u32), &int(1));
        }
        for e in 0..=10 {
            assert_eq!(s.coefficient(&upow(e)), int(1), "u^{e}");
        }
    }

    #[test]
    fn reiner_small() {
        assert!(reiner_identity_check(2, 3).unwrap().is_ok());
    }

    #[test]
    fn reiner_fails_at_k_zero() {
        // the identity is only claimed for k >= 1
        let left = reiner_left(0, 1);
        assert!(rhs_type_c_product(-1, 1).is_err());
        assert_eq!(left.coefficient(&upow(1).times_var(Var::X(1), 1)), int(0));
    }
}
