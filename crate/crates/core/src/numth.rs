//! Number-theoretic kernels: Möbius function, Ramanujan sums, the Von
//! Sterneck multiset count, Gaussian binomials, and necklace counts with a
//! prescribed symbol sum. Everything is exact integer arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::binomial;

/// Polynomial in one variable with integer coefficients, indexed by
/// exponent. Trailing zeros are trimmed, so the zero polynomial is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `z^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPolynomial { coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::default();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sum of the coefficients of `z^e` over all `e ≡ r (mod n)`.
    pub fn residue_class_sum(&self, n: usize, r: i64) -> BigInt {
        let r = r.rem_euclid(n as i64) as usize;
        self.coeffs.iter().skip(r).step_by(n).sum()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}q"),
                _ => format!("{c}q^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

pub fn mobius(n: i64) -> Result<i64> {
    if n <= 0 {
        return Err(Error::Domain(format!("Möbius function needs n >= 1, got {n}")));
    }
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    Ok(sign)
}

pub(crate) fn mu(n: u64) -> i64 {
    mobius(n as i64).expect("positive argument")
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `C_m(n) = Σ_{d | gcd(m, n)} d μ(m/d)`.
pub fn ramanujan_sum(m: u64, n: i64) -> i64 {
    assert!(m >= 1, "Ramanujan sum needs m >= 1");
    let g = m.gcd(&n.unsigned_abs());
    divisors(g).into_iter().map(|d| d as i64 * mu(m / d)).sum()
}

/// Number of multisets of `k` residues mod `m` summing to `n` mod `m`.
pub fn von_sterneck(m: u64, k: u64, n: i64) -> BigInt {
    assert!(m >= 1 && k >= 1, "Von Sterneck count needs m, k >= 1");
    let g = m.gcd(&k);
    let total: BigInt = divisors(g)
        .into_iter()
        .map(|d| {
            let top = ((m + k - d) / d) as i64;
            binomial(top, (k / d) as i64) * ramanujan_sum(d, n)
        })
        .sum();
    let (q, r) = total.div_rem(&BigInt::from(m));
    debug_assert!(r.is_zero(), "Von Sterneck sum not divisible by m");
    q
}

/// Gaussian binomial `[a choose b]_q` via `[a, b] = [a-1, b-1] + q^b [a-1, b]`.
pub fn q_binomial(a: usize, b: usize) -> Result<IntPolynomial> {
    if b > a {
        return Err(Error::Domain(format!("q-binomial needs b <= a, got ({a}, {b})")));
    }
    // row[j] = [i choose j]_q for the current i
    let mut row = vec![IntPolynomial::one()];
    for i in 1..=a {
        let mut next = Vec::with_capacity(i + 1);
        for j in 0..=i.min(b) {
            let left = if j >= 1 {
                row[j - 1].clone()
            } else {
                IntPolynomial::default()
            };
            let right = if j < row.len() {
                row[j].shift(j)
            } else {
                IntPolynomial::default()
            };
            next.push(left.add(&right));
        }
        row = next;
    }
    Ok(row.swap_remove(b))
}

/// Partitions with at most `max_parts` parts, each at most `max_part`, whose
/// size is congruent to `residue` mod `modulus`.
pub fn bounded_partition_count(max_parts: usize, max_part: usize, modulus: usize, residue: i64) -> BigInt {
    assert!(modulus >= 1, "modulus must be positive");
    q_binomial(max_parts + max_part, max_parts)
        .expect("a <= a + b")
        .residue_class_sum(modulus, residue)
}

/// Coefficient of `z^m` in `((z^{kd} - 1)/(z^d - 1))^{i/d}`.
fn necklace_weight(m: usize, k: usize, i: usize, d: usize) -> BigInt {
    let mut base = vec![BigInt::zero(); (k - 1) * d + 1];
    for j in 0..k {
        base[j * d] = BigInt::one();
    }
    IntPolynomial::new(base).pow((i / d) as u32).coeff(m)
}

/// Aperiodic necklaces of length `i` over `{0, .., k-1}` with symbol sum `m`.
pub fn aperiodic_necklaces_with_sum(k: usize, i: usize, m: usize) -> BigInt {
    assert!(k >= 1 && i >= 1, "necklace count needs k, i >= 1");
    let total: BigInt = divisors(i as u64)
        .into_iter()
        .map(|d| necklace_weight(m, k, i, d as usize) * mu(d))
        .sum();
    let (q, r) = total.div_rem(&BigInt::from(i));
    debug_assert!(r.is_zero());
    q
}

/// Total number of aperiodic necklaces: `(1/i) Σ_{d|i} μ(d) k^{i/d}`.
pub fn aperiodic_necklaces(k: usize, i: usize) -> BigInt {
    let total: BigInt = divisors(i as u64)
        .into_iter()
        .map(|d| BigInt::from(k).pow((i as u64 / d) as u32) * mu(d))
        .sum();
    total / BigInt::from(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(2).unwrap(), -1);
        assert_eq!(mobius(4).unwrap(), 0);
        assert_eq!(mobius(30).unwrap(), -1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert!(mobius(0).is_err());
        assert!(mobius(-3).is_err());
    }

    #[test]
    fn ramanujan_examples() {
        assert_eq!(ramanujan_sum(1, 0), 1);
        assert_eq!(ramanujan_sum(2, 1), -1);
        assert_eq!(ramanujan_sum(3, 0), 2);
        assert_eq!(ramanujan_sum(3, -1), -1);
    }

    #[test]
    fn von_sterneck_examples() {
        assert_eq!(von_sterneck(2, 3, 0), BigInt::from(2));
        assert_eq!(von_sterneck(2, 2, 1), BigInt::from(1));
        assert_eq!(von_sterneck(3, 2, 0), BigInt::from(2));
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(q_binomial(2, 1).unwrap(), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(q_binomial(4, 2).unwrap(), IntPolynomial::from_i64(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(4, 2).unwrap(), q_binomial(4, 4 - 2).unwrap());
        assert_eq!(q_binomial(0, 0).unwrap(), IntPolynomial::one());
        assert!(q_binomial(1, 2).is_err());
    }

    #[test]
    fn q_binomial_at_one_is_binomial() {
        for a in 0..12 {
            for b in 0..=a {
                let p = q_binomial(a, b).unwrap();
                assert_eq!(p.eval(&BigInt::one()), binomial(a as i64, b as i64));
                assert_eq!(p.degree(), Some(b * (a - b)));
                assert!(p.coeffs().iter().all(|c| !c.is_negative()));
            }
        }
    }

    #[test]
    fn bounded_partition_examples() {
        assert_eq!(bounded_partition_count(2, 2, 3, 0), BigInt::from(2));
        assert_eq!(bounded_partition_count(0, 0, 1, 0), BigInt::from(1));
        assert_eq!(bounded_partition_count(2, 2, 1, 0), BigInt::from(6));
    }

    #[test]
    fn necklace_examples() {
        assert_eq!(aperiodic_necklaces_with_sum(2, 3, 1), BigInt::from(1));
        assert_eq!(aperiodic_necklaces_with_sum(2, 3, 0), BigInt::from(0));
        let total: BigInt = (0..=3).map(|m| aperiodic_necklaces_with_sum(2, 3, m)).sum();
        assert_eq!(total, BigInt::from(2));
    }

    #[test]
    fn int_polynomial_display() {
        assert_eq!(IntPolynomial::from_i64(&[1, 0, 2]).to_string(), "1 + 2q^2");
        assert_eq!(IntPolynomial::default().to_string(), "0");
    }
}
