//! Finite fields `F_{p^e}`, polynomials over them, and the factorization
//! statistics that play the role of semisimple classes.
//!
//! Field elements are integers `0..q`; the base-`p` digits of an element are
//! its coordinates in the power basis of the field's modulus.

mod classes;
mod factor;

use std::fmt;

use crate::error::{Error, Result};
use crate::numth::is_prime;

pub use classes::{
    monic_with_unit_constant, palindromic, signed_type_of_factorization, sl_class_measure, sl_class_measure_in,
    sl_type_counts, sp_class_measure, sp_class_measure_in, sp_type_counts,
};
pub use factor::{count_irreducibles, count_self_conjugate_irreducibles, factor, Factorization, Factorizer};

/// `F_q` with `q = p^e`, represented by a monic irreducible modulus of
/// degree `e` over `F_p` and precomputed operation tables.
#[derive(Clone)]
pub struct FieldContext {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Largest field order for which operation tables are built.
pub const MAX_FIELD_ORDER: u32 = 1 << 12;

/// The field of order `p^e` whose modulus is the lexicographically smallest
/// monic irreducible of degree `e` (coefficients compared from `z^0` up).
pub fn make_field(p: u32, e: u32) -> Result<FieldContext> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if e == 0 {
        return Err(Error::Domain("extension degree must be at least 1".into()));
    }
    (p as u64)
        .checked_pow(e)
        .filter(|&q| q <= MAX_FIELD_ORDER as u64)
        .ok_or_else(|| Error::Domain(format!("field of order {p}^{e} exceeds {MAX_FIELD_ORDER}")))?;
    if e == 1 {
        return Ok(FieldContext::build(p, 1, vec![0, 1]));
    }
    let prime = FieldContext::build(p, 1, vec![0, 1]);
    // odometer over (c_0, .., c_{e-1}) with c_0 most significant
    let mut digits = vec![0u32; e as usize];
    loop {
        let mut coeffs = digits.clone();
        coeffs.push(1);
        let candidate = FqPoly::new(coeffs.clone());
        if Factorizer::new(&prime, e as usize).is_irreducible(&candidate) {
            return Ok(FieldContext::build(p, e, coeffs));
        }
        let mut i = e as usize;
        loop {
            if i == 0 {
                unreachable!("an irreducible polynomial of every degree exists");
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// `F_q` for a prime power `q`.
pub fn field_of_order(q: u32) -> Result<FieldContext> {
    let (p, e) = prime_power(q).ok_or(Error::Domain(format!("{q} is not a prime power")))?;
    make_field(p, e)
}

pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

impl FieldContext {
    /// Field with an explicitly chosen modulus; the modulus is checked for
    /// irreducibility over `F_p`.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<FieldContext> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        let poly = FqPoly::new(modulus.clone());
        let e = poly.degree().ok_or(Error::ZeroPolynomial)? as u32;
        if e == 0 || poly.leading() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::Domain(format!(
                "modulus {modulus:?} must be monic of positive degree"
            )));
        }
        let prime = FieldContext::build(p, 1, vec![0, 1]);
        if e > 1 && !Factorizer::new(&prime, e as usize).is_irreducible(&poly) {
            return Err(Error::Domain(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        Ok(FieldContext::build(p, e, modulus))
    }

    fn build(p: u32, e: u32, modulus: Vec<u32>) -> FieldContext {
        let q = p.pow(e);
        let to_vec = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(e as usize);
            let mut t = x;
            for _ in 0..e {
                v.push(t % p);
                t /= p;
            }
            v
        };
        let from_vec = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let qs = q as usize;
        let mut add = vec![0; qs * qs];
        let mut mul = vec![0; qs * qs];
        for a in 0..q {
            let va = to_vec(a);
            for b in 0..q {
                let vb = to_vec(b);
                let sum: Vec<u32> = va.iter().zip(&vb).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = from_vec(&sum);
                // schoolbook product then reduction by the monic modulus
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in va.iter().enumerate() {
                    for (j, y) in vb.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for top in (e as usize..prod.len()).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    prod[top] = 0;
                    for (i, &m) in modulus[..e as usize].iter().enumerate() {
                        let idx = top - e as usize + i;
                        prod[idx] = (prod[idx] + p - (c * m) % p) % p;
                    }
                }
                mul[(a * q + b) as usize] = from_vec(&prod[..e as usize]);
            }
        }
        let neg = (0..q)
            .map(|a| {
                (0..q)
                    .find(|&b| add[(a * q + b) as usize] == 0)
                    .expect("additive inverse")
            })
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[(a * q + b) as usize] == 1).expect("field")
                }
            })
            .collect();
        FieldContext {
            p,
            e,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> FqPoly {
        FqPoly::new(self.modulus.clone())
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    /// Embedding of the integer `n` (mod `p`).
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn poly_add(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let len = a.coeffs.len().max(b.coeffs.len());
        FqPoly::new((0..len).map(|i| self.add(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn poly_sub(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let len = a.coeffs.len().max(b.coeffs.len());
        FqPoly::new((0..len).map(|i| self.sub(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn poly_mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if a.is_zero() || b.is_zero() {
            return FqPoly::zero();
        }
        let mut out = vec![0u32; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        FqPoly::new(out)
    }

    pub fn poly_pow(&self, a: &FqPoly, e: u32) -> FqPoly {
        (0..e).fold(FqPoly::one(), |acc, _| self.poly_mul(&acc, a))
    }

    pub fn scale(&self, a: &FqPoly, c: u32) -> FqPoly {
        FqPoly::new(a.coeffs.iter().map(|&x| self.mul(x, c)).collect())
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn poly_divrem(&self, a: &FqPoly, b: &FqPoly) -> (FqPoly, FqPoly) {
        let db = b.degree().expect("division by the zero polynomial");
        let lead_inv = self.inv(b.leading());
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return (FqPoly::zero(), a.clone());
        }
        let mut quot = vec![0u32; rem.len() - db];
        for top in (db..rem.len()).rev() {
            let c = self.mul(rem[top], lead_inv);
            if c == 0 {
                continue;
            }
            quot[top - db] = c;
            for (i, &bc) in b.coeffs.iter().enumerate() {
                let idx = top - db + i;
                rem[idx] = self.sub(rem[idx], self.mul(c, bc));
            }
        }
        rem.truncate(db);
        (FqPoly::new(quot), FqPoly::new(rem))
    }

    /// Exact quotient when `b | a`.
    pub fn poly_div_exact(&self, a: &FqPoly, b: &FqPoly) -> Option<FqPoly> {
        let (q, r) = self.poly_divrem(a, b);
        r.is_zero().then_some(q)
    }

    pub fn monic(&self, a: &FqPoly) -> FqPoly {
        if a.is_zero() {
            return FqPoly::zero();
        }
        self.scale(a, self.inv(a.leading()))
    }

    pub fn eval(&self, a: &FqPoly, x: u32) -> u32 {
        a.coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// All monic polynomials of degree `d`.
    pub fn monic_polys(&self, d: usize) -> impl Iterator<Item = FqPoly> + '_ {
        let q = self.q as u64;
        let count = q.pow(d as u32);
        (0..count).map(move |mut idx| {
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push((idx % q) as u32);
                idx /= q;
            }
            coeffs.push(1);
            FqPoly { coeffs }
        })
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        (1..self.q)
            .find(|&g| {
                let mut x = g;
                let mut order = 1;
                while x != 1 {
                    x = self.mul(x, g);
                    order += 1;
                }
                order == self.q - 1
            })
            .expect("the multiplicative group is cyclic")
    }

    /// `logs[a]` is the exponent of `a` in base `primitive_element()`;
    /// `logs[0]` is unused.
    pub fn discrete_logs(&self) -> Vec<u32> {
        let g = self.primitive_element();
        let mut logs = vec![0; self.q as usize];
        let mut x = 1;
        for e in 0..self.q - 1 {
            logs[x as usize] = e;
            x = self.mul(x, g);
        }
        logs
    }

    pub fn parse_poly(&self, s: &str) -> Result<FqPoly> {
        let vals = crate::perm::parse_one_line(s)?;
        let coeffs = vals
            .into_iter()
            .map(|v| {
                if (0..self.q as i64).contains(&v) {
                    Ok(v as u32)
                } else {
                    Err(Error::ParseElement {
                        input: s.to_string(),
                        reason: format!("{v} is not in F_{}", self.q),
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FqPoly::new(coeffs))
    }
}

/// Root-inversion involution `f ↦ f(0)^{-1} z^{deg f} f(1/z)`.
pub fn conjugate_poly(field: &FieldContext, f: &FqPoly) -> Result<FqPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let c0 = f.coeff(0);
    if c0 == 0 {
        return Err(Error::ZeroConstantTerm);
    }
    let reversed = FqPoly::new(f.coeffs.iter().rev().copied().collect());
    Ok(field.scale(&reversed, field.inv(c0)))
}

/// Polynomial over a finite field, coefficients low-to-high, trailing zeros
/// trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqPoly {
    coeffs: Vec<u32>,
}

impl FqPoly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }

    pub fn zero() -> Self {
        FqPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        FqPoly { coeffs: vec![1] }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Coefficient of `z^i` equals that of `z^{deg - i}` for every `i`.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_moduli() {
        assert_eq!(make_field(2, 2).unwrap().modulus(), FqPoly::new(vec![1, 1, 1]));
        assert_eq!(make_field(3, 2).unwrap().modulus(), FqPoly::new(vec![1, 0, 1]));
        assert_eq!(make_field(5, 1).unwrap().modulus(), FqPoly::new(vec![0, 1]));
        assert_eq!(make_field(2, 3).unwrap().modulus(), FqPoly::new(vec![1, 0, 1, 1]));
        assert!(matches!(make_field(4, 1), Err(Error::NotPrime(4))));
    }

    #[test]
    fn field_axioms_small() {
        for (p, e) in [(2, 1), (2, 2), (3, 2), (2, 3), (5, 1), (7, 1)] {
            let f = make_field(p, e).unwrap();
            let q = f.order();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn discrete_logs_invert_powers() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = field_of_order(q).unwrap();
            let g = f.primitive_element();
            let logs = f.discrete_logs();
            let mut x = 1;
            for e in 0..q - 1 {
                assert_eq!(logs[x as usize], e);
                x = f.mul(x, g);
            }
            assert_eq!(x, 1);
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert!(field_of_order(12).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let f5 = make_field(5, 1).unwrap();
        // z - 1 -> z - 1
        assert_eq!(
            conjugate_poly(&f5, &FqPoly::new(vec![4, 1])).unwrap(),
            FqPoly::new(vec![4, 1])
        );
        // z - 2 -> z - 3
        assert_eq!(
            conjugate_poly(&f5, &FqPoly::new(vec![3, 1])).unwrap(),
            FqPoly::new(vec![2, 1])
        );
        let f2 = make_field(2, 1).unwrap();
        let cyc = FqPoly::new(vec![1, 1, 1]);
        assert_eq!(conjugate_poly(&f2, &cyc).unwrap(), cyc);
        assert_eq!(
            conjugate_poly(&f2, &FqPoly::new(vec![0, 1])),
            Err(Error::ZeroConstantTerm)
        );
    }

    #[test]
    fn divrem_reconstructs() {
        let f = make_field(3, 2).unwrap();
        let a = FqPoly::new(vec![1, 2, 3, 4, 5, 6, 7, 8]);
        let b = FqPoly::new(vec![2, 0, 5]);
        let (q, r) = f.poly_divrem(&a, &b);
        assert!(r.degree().is_none_or(|d| d < 2));
        assert_eq!(f.poly_add(&f.poly_mul(&q, &b), &r), a);
    }

    #[test]
    fn text_form() {
        let f = make_field(2, 1).unwrap();
        let p = f.parse_poly("1,1,0,1").unwrap();
        assert_eq!(p.to_string(), "1,1,0,1");
        assert_eq!(p.degree(), Some(3));
        assert!(f.parse_poly("1,2").is_err());
    }

    #[test]
    fn alternative_modulus() {
        let f = FieldContext::with_modulus(3, vec![2, 1, 1]).unwrap();
        assert_eq!(f.order(), 9);
        assert!(FieldContext::with_modulus(3, vec![1, 2, 1]).is_err());
    }
}
