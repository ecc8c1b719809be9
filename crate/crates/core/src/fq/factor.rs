use num_bigint::BigInt;
use num_traits::Zero;

use super::{FieldContext, FqPoly};
use crate::error::{Error, Result};
use crate::numth::{divisors, mu};
use crate::perm::CycleType;

/// Monic irreducible factors with multiplicity, sorted, together with the
/// leading coefficient of the factored polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: u32,
    pub factors: Vec<(FqPoly, u32)>,
}

impl Factorization {
    pub fn reconstruct(&self, field: &FieldContext) -> FqPoly {
        let prod = self.factors.iter().fold(FqPoly::one(), |acc, (f, m)| {
            field.poly_mul(&acc, &field.poly_pow(f, *m))
        });
        field.scale(&prod, self.unit)
    }

    /// Partition of the factor degrees, counted with multiplicity.
    pub fn degree_type(&self) -> CycleType {
        CycleType::from_parts(
            self.factors
                .iter()
                .flat_map(|(f, m)| std::iter::repeat_n(f.degree().unwrap_or(0), *m as usize))
                .collect(),
        )
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Sieved table of monic irreducibles up to half a maximal degree; factors
/// polynomials of degree up to that maximum by trial division.
#[derive(Clone, Debug)]
pub struct Factorizer {
    field: FieldContext,
    max_degree: usize,
    irreducibles: Vec<Vec<FqPoly>>,
}

impl Factorizer {
    pub fn new(field: &FieldContext, max_degree: usize) -> Self {
        let bound = max_degree / 2;
        let mut this = Factorizer {
            field: field.clone(),
            max_degree,
            irreducibles: vec![Vec::new()],
        };
        for d in 1..=bound {
            let found: Vec<FqPoly> = field.monic_polys(d).filter(|g| this.sieve_irreducible(g)).collect();
            this.irreducibles.push(found);
        }
        this
    }

    pub fn field(&self) -> &FieldContext {
        &self.field
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    fn sieve_irreducible(&self, g: &FqPoly) -> bool {
        let d = g.degree().unwrap_or(0);
        d >= 1
            && (1..=d / 2).all(|j| {
                self.irreducibles[j]
                    .iter()
                    .all(|h| !self.field.poly_divrem(g, h).1.is_zero())
            })
    }

    pub fn is_irreducible(&self, g: &FqPoly) -> bool {
        let d = g.degree().unwrap_or(0);
        assert!(
            d <= self.max_degree,
            "degree {d} exceeds factorizer bound {}",
            self.max_degree
        );
        self.sieve_irreducible(g)
    }

    /// All monic irreducibles of degree `d`, by exhaustive scan when beyond
    /// the sieved range.
    pub fn irreducibles_of_degree(&self, d: usize) -> Vec<FqPoly> {
        if d < self.irreducibles.len() {
            return self.irreducibles[d].clone();
        }
        self.field.monic_polys(d).filter(|g| self.is_irreducible(g)).collect()
    }

    pub fn factor(&self, f: &FqPoly) -> Result<Factorization> {
        let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
        if deg > self.max_degree {
            return Err(Error::Domain(format!(
                "degree {deg} exceeds factorizer bound {}",
                self.max_degree
            )));
        }
        let unit = f.leading();
        let mut rest = self.field.monic(f);
        let mut factors = Vec::new();
        let mut d = 1;
        while 2 * d <= rest.degree().unwrap_or(0) {
            for g in &self.irreducibles[d] {
                let mut m = 0;
                while let Some(q) = self.field.poly_div_exact(&rest, g) {
                    rest = q;
                    m += 1;
                }
                if m > 0 {
                    factors.push((g.clone(), m));
                }
            }
            d += 1;
        }
        if rest.degree().unwrap_or(0) >= 1 {
            match factors.iter_mut().find(|(g, _)| *g == rest) {
                Some((_, m)) => *m += 1,
                None => factors.push((rest, 1)),
            }
        }
        factors.sort();
        Ok(Factorization { unit, factors })
    }
}

pub fn factor(field: &FieldContext, f: &FqPoly) -> Result<Factorization> {
    let deg = f.degree().ok_or(Error::ZeroPolynomial)?;
    Factorizer::new(field, deg).factor(f)
}

/// `(1/n) Σ_{d|n} μ(d) q^{n/d}`.
pub fn count_irreducibles(n: u64, q: u64) -> BigInt {
    assert!(n >= 1);
    let total: BigInt = divisors(n)
        .into_iter()
        .map(|d| BigInt::from(mu(d)) * BigInt::from(q).pow((n / d) as u32))
        .sum();
    total / BigInt::from(n)
}

/// Number of monic irreducibles of degree `n` fixed by root inversion.
pub fn count_self_conjugate_irreducibles(n: u64, q: u64) -> BigInt {
    assert!(n >= 1);
    let e: i64 = if q.is_multiple_of(2) { 1 } else { 2 };
    if n == 1 {
        return BigInt::from(e);
    }
    if n % 2 == 1 {
        return BigInt::zero();
    }
    let total: BigInt = divisors(n)
        .into_iter()
        .filter(|d| d % 2 == 1)
        .map(|d| BigInt::from(mu(d)) * (BigInt::from(q).pow((n / (2 * d)) as u32) + 1 - e))
        .sum();
    total / BigInt::from(n)
}
