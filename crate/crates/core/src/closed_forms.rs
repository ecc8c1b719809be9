//! Closed forms for the coefficient `x_k(w)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::numth::{bounded_partition_count, divisors, q_binomial, ramanujan_sum};
use crate::perm::{Permutation, SignedPermutation};
use crate::rational::{binomial, Rational};

/// The four equivalent type-A expressions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeAMethod {
    /// Partitions with `<= n-1` parts of size `<= k - cd(w)`, size `≡ -maj(w)`.
    BoundedParts = 1,
    /// The transposed count: `<= k - cd(w)` parts of size `<= n-1`.
    BoundedSize = 2,
    /// Coefficients of `q^{rn}` in `q^{maj(w)} [k+n-cd(w)-1 choose n-1]_q`.
    GaussianResidues = 3,
    /// Von Sterneck / Ramanujan-sum expression.
    RamanujanSums = 4,
}

impl TypeAMethod {
    pub const ALL: [TypeAMethod; 4] = [
        TypeAMethod::BoundedParts,
        TypeAMethod::BoundedSize,
        TypeAMethod::GaussianResidues,
        TypeAMethod::RamanujanSums,
    ];
}

impl TryFrom<u8> for TypeAMethod {
    type Error = Error;

    fn try_from(id: u8) -> Result<Self> {
        match id {
            1 => Ok(TypeAMethod::BoundedParts),
            2 => Ok(TypeAMethod::BoundedSize),
            3 => Ok(TypeAMethod::GaussianResidues),
            4 => Ok(TypeAMethod::RamanujanSums),
            other => Err(Error::InvalidMethod(other)),
        }
    }
}

pub fn x_k_type_a(w: &Permutation, k: u32, method: TypeAMethod) -> Rational {
    let n = w.degree();
    if n <= 1 {
        return Rational::from_integer(1.into());
    }
    let stats = w.stats();
    let slack = k as i64 - stats.cd as i64;
    let maj = stats.maj as i64;
    let denom = BigInt::from(k).pow((n - 1) as u32);
    if slack < 0 {
        return Rational::zero();
    }
    let slack_u = slack as usize;
    let count = match method {
        TypeAMethod::BoundedParts => bounded_partition_count(n - 1, slack_u, n, -maj),
        TypeAMethod::BoundedSize => bounded_partition_count(slack_u, n - 1, n, -maj),
        TypeAMethod::GaussianResidues => q_binomial(slack_u + n - 1, n - 1)
            .expect("n - 1 <= slack + n - 1")
            .shift(stats.maj)
            .residue_class_sum(n, 0),
        TypeAMethod::RamanujanSums => return ramanujan_form(n as u64, slack as u64, maj, denom),
    };
    Rational::new(count, denom)
}

fn ramanujan_form(n: u64, slack: u64, maj: i64, denom: BigInt) -> Rational {
    if slack == 0 {
        return if maj.rem_euclid(n as i64) == 0 {
            Rational::new(1.into(), denom)
        } else {
            Rational::zero()
        };
    }
    let total: BigInt = divisors(n.gcd(&slack))
        .into_iter()
        .map(|d| binomial(((n + slack - d) / d) as i64, (slack / d) as i64) * ramanujan_sum(d, -maj))
        .sum();
    Rational::new(total, denom * BigInt::from(n))
}

/// `k^{-n} C((k-1)/2 + n - d(w), n)` for odd `k`,
/// `k^{-n} C(k/2 + n - cd(w), n)` for even `k`.
pub fn x_k_type_c(w: &SignedPermutation, k: u32) -> Rational {
    let n = w.degree() as i64;
    let stats = w.stats();
    let k_i = k as i64;
    let top = if k % 2 == 1 {
        (k_i - 1) / 2 + n - stats.d as i64
    } else {
        k_i / 2 + n - stats.cd as i64
    };
    Rational::new(binomial(top, n), BigInt::from(k).pow(n as u32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn identity_s3_k3() {
        for m in TypeAMethod::ALL {
            assert_eq!(x_k_type_a(&perm("1,2,3"), 3, m), ratio(2, 9), "{m:?}");
        }
    }

    #[test]
    fn special_branches() {
        assert_eq!(x_k_type_a(&perm("3,2,1"), 2, TypeAMethod::RamanujanSums), ratio(1, 4));
        for m in TypeAMethod::ALL {
            assert_eq!(x_k_type_a(&perm("1,3,2"), 2, m), ratio(0, 1), "{m:?}");
        }
    }

    #[test]
    fn method_ids() {
        assert_eq!(TypeAMethod::try_from(3).unwrap(), TypeAMethod::GaussianResidues);
        assert!(matches!(TypeAMethod::try_from(5), Err(Error::InvalidMethod(5))));
        assert!(TypeAMethod::try_from(0).is_err());
    }

    #[test]
    fn type_c_examples() {
        let id = SignedPermutation::identity(2);
        assert_eq!(x_k_type_c(&id, 3), ratio(1, 3));
        assert_eq!(x_k_type_c(&id, 2), ratio(1, 4));
        assert_eq!(x_k_type_c(&"-2,-1".parse().unwrap(), 2), ratio(1, 4));
    }

    #[test]
    fn methods_agree_and_sum_to_one() {
        for n in 1..=6 {
            for k in 1..=8 {
                let mut total = Rational::zero();
                for w in Permutation::all(n) {
                    let v = x_k_type_a(&w, k, TypeAMethod::BoundedParts);
                    for m in &TypeAMethod::ALL[1..] {
                        assert_eq!(x_k_type_a(&w, k, *m), v, "w={w} k={k} {m:?}");
                    }
                    total += v;
                }
                assert_eq!(total, ratio(1, 1), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn type_c_sums_to_one() {
        for n in 1..=4 {
            for k in 1..=7 {
                let total: Rational = SignedPermutation::all(n).iter().map(|w| x_k_type_c(w, k)).sum();
                assert_eq!(total, ratio(1, 1), "n={n} k={k}");
            }
        }
    }
}
