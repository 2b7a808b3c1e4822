//! Alternating sums over partitions with bounded parts.
//!
//! A partition `λ = 1^{m_1} 2^{m_2} ... (2a)^{m_{2a}}` is handled through its
//! multiplicity vector. The sums here evaluate to `a^{n-1}` or `0`; the
//! constant-term route in [`claim2_ct`] computes the second family without
//! enumerating partitions at all.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::combinat::{binomial, binomial_poly, multinomial, sign, Compositions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("sum did not clear to an integer: {0}")]
    NonIntegral(BigRational),
    #[error("parameter out of range: {0}")]
    BadParameter(&'static str),
}

/// Part multiplicities `(m_1, ..., m_K)` of a partition with parts `<= K`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultVector {
    mult: Vec<u32>,
}

impl MultVector {
    pub fn new(mult: Vec<u32>) -> Self {
        MultVector { mult }
    }

    pub fn mult(&self) -> &[u32] {
        &self.mult
    }

    /// `|λ| = Σ k m_k`.
    pub fn size(&self) -> u64 {
        self.mult
            .iter()
            .enumerate()
            .map(|(k, &m)| (k as u64 + 1) * u64::from(m))
            .sum()
    }

    /// `ℓ(λ) = Σ m_k`.
    pub fn length(&self) -> u64 {
        self.mult.iter().map(|&m| u64::from(m)).sum()
    }

    pub fn multinomial(&self) -> BigInt {
        multinomial(&self.mult)
    }
}

/// Every partition of length `length` with parts `<= max_part`, as
/// multiplicity vectors in ascending lexicographic order.
pub fn enumerate_mult_vectors(length: u32, max_part: u32) -> impl Iterator<Item = MultVector> {
    Compositions::new(max_part as usize, length).map(MultVector::new)
}

fn check_positive(n: u32, a: u32) -> Result<(), IdentityError> {
    if n == 0 {
        return Err(IdentityError::BadParameter("n must be positive"));
    }
    if a == 0 {
        return Err(IdentityError::BadParameter("a must be positive"));
    }
    Ok(())
}

/// `Σ_{ℓ(λ)=n, λ_1<=2a} (-1)^{1+|λ|} (n - m_{2a}) binom(n; m) binom(|λ|+n+1, |λ|+1) / (|λ|+n+1)`,
/// expected to equal `a^{n-1}`.
pub fn partition_sum_main(n: u32, a: u32) -> Result<BigInt, IdentityError> {
    check_positive(n, a)?;
    let nn = i64::from(n);
    let mut total = BigRational::zero();
    for lam in enumerate_mult_vectors(n, 2 * a) {
        let size = lam.size() as i64;
        let top = i64::from(lam.mult()[2 * a as usize - 1]);
        let num = sign(1 + size)
            * BigInt::from(nn - top)
            * lam.multinomial()
            * binomial(size + nn + 1, size + 1);
        total += BigRational::new(num, BigInt::from(size + nn + 1));
    }
    if total.is_integer() {
        Ok(total.to_integer())
    } else {
        Err(IdentityError::NonIntegral(total))
    }
}

fn signed_sum(length: u32, n: u32, a: u32, x: i64) -> BigInt {
    let mut total = BigInt::zero();
    for lam in enumerate_mult_vectors(length, 2 * a) {
        let size = lam.size() as i64;
        total += sign(size) * lam.multinomial() * binomial_poly(size + i64::from(n) + x, n - 1);
    }
    total
}

/// `Σ_{ℓ(λ)=n, λ_1<=2a} (-1)^{|λ|} binom(n; m) binom(|λ|+n+x, n-1)`; expected 0.
pub fn claim1_sum(n: u32, a: u32, x: i64) -> Result<BigInt, IdentityError> {
    check_positive(n, a)?;
    Ok(signed_sum(n, n, a, x))
}

/// `Σ_{ℓ(λ)=n-1, λ_1<=2a} (-1)^{|λ|} binom(n-1; m) binom(|λ|+n+x, n-1)`;
/// expected `a^{n-1}`.
pub fn claim2_sum(n: u32, a: u32, x: i64) -> Result<BigInt, IdentityError> {
    check_positive(n, a)?;
    Ok(signed_sum(n - 1, n, a, x))
}

/// Finite Laurent polynomial in `z` with big-integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    /// `c z^e`.
    pub fn monomial(c: BigInt, e: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(e, c);
        p
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// `1 + z`.
    pub fn one_plus_z() -> Self {
        Self::one().add(&Self::monomial(BigInt::one(), 1))
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigInt::zero)
    }

    /// `CT_z`, the coefficient of `z^0`.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &other.coeffs {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = LaurentPoly::zero();
        for (&e, c) in &self.coeffs {
            out.add_term(e, c * k);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &other.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Claim-2 sum via the constant term of
/// `(1+z)^{n+x} (Σ_{k=1}^{2a} (-1)^k (1+z)^k)^{n-1} / z^{n-1}`.
pub fn claim2_ct(n: u32, a: u32, x: u32) -> Result<BigInt, IdentityError> {
    check_positive(n, a)?;
    let opz = LaurentPoly::one_plus_z();
    let mut inner = LaurentPoly::zero();
    let mut power = LaurentPoly::one();
    for k in 1..=2 * a {
        power = power.mul(&opz);
        inner = inner.add(&power.scale(&sign(i64::from(k))));
    }
    let expr = opz
        .pow(n + x)
        .mul(&inner.pow(n - 1))
        .shift(-(i64::from(n) - 1));
    Ok(expr.constant_term())
}
