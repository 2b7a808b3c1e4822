//! Hyper-Catalan numbers, the coefficients of the series root `S` of
//! `0 = 1 - α + Σ_{k=1}^{r} t_k α^{k+1}`.
//!
//! [`solve_s`] builds `S` by fixed-point iteration and is the ground truth
//! for every closed form in the crate. [`hyper_catalan`] is the Lagrange
//! inversion closed form for a single coefficient.

use num_bigint::BigInt;

use crate::combinat::{exact_div, factorial};
use crate::mpoly::{ExpVec, SeriesError, TruncatedSeries};

/// A multi-index together with its weighted degree `w = Σ (k+1) m_k` and
/// length `ℓ = Σ m_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperCatalanQuery {
    pub m: ExpVec,
    pub weighted_degree: u64,
    pub length: u64,
}

impl HyperCatalanQuery {
    pub fn new(m: ExpVec) -> Self {
        let weighted_degree = m
            .exps()
            .iter()
            .enumerate()
            .map(|(k, &e)| (k as u64 + 2) * u64::from(e))
            .sum();
        let length = m.exps().iter().map(|&e| u64::from(e)).sum();
        HyperCatalanQuery {
            m,
            weighted_degree,
            length,
        }
    }

    /// `C[m] = w! / ((1 + w - ℓ)! Π m_k!)`.
    pub fn value(&self) -> BigInt {
        let denom = self.m.exps().iter().fold(
            factorial(1 + self.weighted_degree - self.length),
            |acc, &e| acc * factorial(u64::from(e)),
        );
        exact_div(&factorial(self.weighted_degree), &denom, "hyper-Catalan")
    }
}

pub fn hyper_catalan(m: &ExpVec) -> BigInt {
    HyperCatalanQuery::new(m.clone()).value()
}

/// The series root `S` in `r` variables through total degree `trunc`.
///
/// Pass `j` recomputes `α ← 1 + Σ t_k α^{k+1}` with truncation `j`, using the
/// previous pass's `α`, which is already exact through degree `j - 1`.
pub fn solve_s(r: usize, trunc: u32) -> TruncatedSeries {
    assert!(r >= 1, "solve_s needs at least one variable");
    let mut alpha = TruncatedSeries::one(r, 0);
    for j in 1..=trunc {
        let mut next = TruncatedSeries::one(r, j);
        let mut power = alpha.clone();
        for k in 0..r {
            power = power.mul(&alpha).expect("same variable count");
            let shifted = power.shift_by_var(k, j);
            next = next.add(&shifted).expect("same variable count");
        }
        alpha = next;
    }
    alpha
}

/// `1 - α + Σ t_k α^{k+1}` at `α`'s own truncation; zero for the true root.
pub fn functional_residual(alpha: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    let r = alpha.nvars();
    let n = alpha.trunc();
    let mut out = TruncatedSeries::one(r, n).sub(alpha)?;
    let mut power = alpha.clone();
    for k in 0..r {
        power = power.mul(alpha)?;
        let term = TruncatedSeries::variable(r, n, k).mul(&power)?;
        out = out.add(&term)?;
    }
    Ok(out)
}
