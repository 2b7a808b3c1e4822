//! The Geode series `G`, defined by `S - 1 = S_1 G` with `S_1 = t_1 + ... + t_r`,
//! and the closed forms and evaluations that describe it.
//!
//! All indices follow one convention: `t_k` multiplies `α^{k+1}`. Formulas
//! stated for a pair `(t_a, t_{a+1})` attached to `α^a, α^{a+1}` are mapped
//! onto canonical variables `a-1` and `a`, i.e. `a - 2` leading zeros.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::combinat::{binomial, exact_div, factorial, sign};
use crate::hypercat::{hyper_catalan, solve_s};
use crate::mpoly::{ExpVec, SeriesError, SeriesJson, TruncatedSeries, UnivariateSeries};

/// `G` in `r` variables through total degree `trunc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodeTable {
    series: TruncatedSeries,
}

impl GeodeTable {
    pub fn nvars(&self) -> usize {
        self.series.nvars()
    }

    pub fn trunc(&self) -> u32 {
        self.series.trunc()
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn coeff(&self, m: &ExpVec) -> Result<BigInt, SeriesError> {
        self.series.coeff(m)
    }

    /// Checks `S_1 G = S - 1` through degree `trunc + 1` against a fresh
    /// solve of `S`.
    pub fn factorization_holds(&self) -> bool {
        let r = self.nvars();
        let n = self.trunc() + 1;
        let s_minus_one = solve_s(r, n)
            .sub(&TruncatedSeries::one(r, n))
            .expect("same variable count");
        self.series.mul_by_linear_sum() == s_minus_one
    }

    /// `Σ_{k: m_k >= 1} G[m - e_k] == C[m]`.
    pub fn recurrence_holds(&self, m: &ExpVec) -> Result<bool, SeriesError> {
        if m.len() != self.nvars() {
            return Err(SeriesError::VarCountMismatch {
                left: self.nvars(),
                right: m.len(),
            });
        }
        let degree = m.total_degree();
        if degree == 0 || degree > self.trunc() + 1 {
            return Err(SeriesError::OutOfRange {
                degree,
                trunc: self.trunc() + 1,
            });
        }
        let mut sum = BigInt::zero();
        for k in 0..m.len() {
            if let Some(prev) = m.minus_unit(k) {
                sum += self.coeff(&prev)?;
            }
        }
        Ok(sum == hyper_catalan(m))
    }

    pub fn to_json(&self) -> GeodeJson {
        GeodeJson {
            kind: "geode",
            r: self.nvars(),
            trunc: self.trunc(),
            series: self.series.to_json(),
        }
    }
}

/// Export form: a `{"kind","r","trunc"}` header plus the series fields.
#[derive(Debug, Clone, Serialize)]
pub struct GeodeJson {
    pub kind: &'static str,
    pub r: usize,
    pub trunc: u32,
    #[serde(flatten)]
    pub series: SeriesJson,
}

/// `G = (S - 1) / S_1` through degree `trunc`.
pub fn geode_series(r: usize, trunc: u32) -> Result<GeodeTable, SeriesError> {
    let s = solve_s(r, trunc + 1);
    let numerator = s.sub(&TruncatedSeries::one(r, trunc + 1))?;
    let series = numerator.divide_exact_by_s1()?;
    Ok(GeodeTable { series })
}

/// `G[m1, m2]` in two variables:
/// `(2m1+3m2+3)! / ((2m1+2m2+3)(m1+m2+1)(m1+2m2+2)! m1! m2!)`.
pub fn geode_closed_2var(m1: u32, m2: u32) -> BigInt {
    let (m1, m2) = (u64::from(m1), u64::from(m2));
    let den = BigInt::from((2 * m1 + 2 * m2 + 3) * (m1 + m2 + 1))
        * factorial(m1 + 2 * m2 + 2)
        * factorial(m1)
        * factorial(m2);
    exact_div(&factorial(2 * m1 + 3 * m2 + 3), &den, "geode_closed_2var")
}

/// `G[0, ..., 0, p, q]` with `p` on canonical variable `a - 1` and `q` on
/// variable `a` (1-based), for `a >= 2`.
pub fn geode_closed_shifted(a: u32, p: u32, q: u32) -> BigInt {
    assert!(a >= 2, "geode_closed_shifted needs a >= 2");
    let (a, p, q) = (u64::from(a), u64::from(p), u64::from(q));
    let m = p + q;
    let den = BigInt::from((a * (m + 1) + 1) * (m + 1))
        * factorial((a - 1) * p + a * (q + 1))
        * factorial(p)
        * factorial(q);
    exact_div(
        &factorial(a * p + (a + 1) * (q + 1)),
        &den,
        "geode_closed_shifted",
    )
}

/// Canonical exponent vector for [`geode_closed_shifted`]: length `a`,
/// `p` in slot `a - 2` and `q` in slot `a - 1` (0-based).
pub fn shifted_exps(a: u32, p: u32, q: u32) -> ExpVec {
    let a = a as usize;
    let mut v = vec![0; a];
    v[a - 2] = p;
    v[a - 1] = q;
    ExpVec::new(v)
}

/// `G` with `m_s = n - 1 - i`, `m_t = i` and all other exponents zero:
/// `(1/n) Σ_{j=0}^{i} (-1)^{i-j} binom(n, j) binom((s+1)n + (t-s)j, n-1)`.
pub fn geode_closed_two_nonzero(s: u32, t: u32, n: u32, i: u32) -> BigInt {
    assert!(1 <= s && s < t, "need 1 <= s < t");
    assert!(n >= 1 && i < n, "need 0 <= i <= n - 1");
    let (s, t, n, i) = (i64::from(s), i64::from(t), i64::from(n), i64::from(i));
    let mut sum = BigInt::zero();
    for j in 0..=i {
        sum += sign(i - j) * binomial(n, j) * binomial((s + 1) * n + (t - s) * j, n - 1);
    }
    exact_div(&sum, &BigInt::from(n), "geode_closed_two_nonzero")
}

/// Canonical exponent vector for [`geode_closed_two_nonzero`], of length `t`.
pub fn two_nonzero_exps(s: u32, t: u32, n: u32, i: u32) -> ExpVec {
    let mut v = vec![0; t as usize];
    v[s as usize - 1] = n - 1 - i;
    v[t as usize - 1] = i;
    ExpVec::new(v)
}

/// `G` in `2a` variables under `t_k -> (-1)^k f`; each coefficient of `f^n`
/// should be `a^n`.
pub fn eval_alternating(a: u32, trunc: u32) -> Result<UnivariateSeries, SeriesError> {
    let weights: Vec<i64> = (1..=2 * a)
        .map(|k| if k % 2 == 1 { -1 } else { 1 })
        .collect();
    geode_series(2 * a as usize, trunc)?
        .series()
        .substitute_signed(&weights)
}

/// Weight pattern `(-c_a, c_1, -c_1, ..., c_{a-1}, -c_{a-1}, c_a)`.
pub fn general_weights(c: &[i64]) -> Vec<i64> {
    let a = c.len();
    assert!(a >= 1, "need at least one parameter");
    let mut w = Vec::with_capacity(2 * a);
    w.push(-c[a - 1]);
    for &ci in &c[..a - 1] {
        w.push(ci);
        w.push(-ci);
    }
    w.push(c[a - 1]);
    w
}

/// `G` in `2a` variables under [`general_weights`]; each coefficient of
/// `f^n` should be `(2a c_a - c_1 - ... - c_a)^n`.
pub fn eval_general(a: u32, c: &[i64], trunc: u32) -> Result<UnivariateSeries, SeriesError> {
    if c.len() != a as usize {
        return Err(SeriesError::WeightLength {
            expected: a as usize,
            got: c.len(),
        });
    }
    geode_series(2 * a as usize, trunc)?
        .series()
        .substitute_signed(&general_weights(c))
}

/// The base `2a c_a - Σ c_i` predicted for [`eval_general`].
pub fn general_base(c: &[i64]) -> i64 {
    let a = c.len() as i64;
    2 * a * c[c.len() - 1] - c.iter().sum::<i64>()
}
