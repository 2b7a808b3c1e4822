//! Pointwise verification of WZ pairs over exact rationals.
//!
//! A pair `(F, H)` is checked by confirming `F(n,k) = H(n,k+1) - H(n,k)` at
//! every grid point together with the telescoped sum `Σ_k F(n,k) = 0`.
//! Nothing here uses a tolerance.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::combinat::{binomial, sign};

pub type ExactRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WzError {
    #[error("k = {k} outside 0..={n}")]
    KOutOfRange { n: u64, k: i64 },
}

fn ratio(num: BigInt, den: i64) -> BigRational {
    BigRational::new(num, BigInt::from(den))
}

fn f1_unchecked(n: u64, k: i64) -> BigRational {
    let n = n as i64;
    ratio(
        sign(k) * binomial(n, k) * binomial(2 * n + 1 + k, n + 1 + k),
        2 * n + 1 + k,
    )
}

/// `(-1)^k binom(n,k) binom(2n+1+k, n+1+k) / (2n+1+k)`.
pub fn f1(n: u64, k: i64) -> Result<ExactRational, WzError> {
    if k < 0 || k > n as i64 {
        return Err(WzError::KOutOfRange { n, k });
    }
    Ok(f1_unchecked(n, k))
}

/// `-F(n,k) k (n+1+k) / (n (2n+1))`, defined for `0 <= k <= n+1`.
pub fn h1(n: u64, k: i64) -> ExactRational {
    let ni = n as i64;
    -f1_unchecked(n, k) * ratio(BigInt::from(k * (ni + 1 + k)), ni * (2 * ni + 1))
}

/// `(-1)^k binom(n,k) binom(an+1+k, (a-1)n+1+k) / (an+1+k)`, zero outside `0..=n`.
pub fn f2(a: u64, n: u64, k: i64) -> ExactRational {
    let (a, n) = (a as i64, n as i64);
    ratio(
        sign(k) * binomial(n, k) * binomial(a * n + 1 + k, (a - 1) * n + 1 + k),
        a * n + 1 + k,
    )
}

/// `-F(n,k) k ((a-1)n+1+k) / (n (an+1))`.
pub fn h2(a: u64, n: u64, k: i64) -> ExactRational {
    let (ai, ni) = (a as i64, n as i64);
    -f2(a, n, k)
        * ratio(
            BigInt::from(k * ((ai - 1) * ni + 1 + k)),
            ni * (ai * ni + 1),
        )
}

/// Outcome of a grid verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WzReport {
    pub suite: String,
    pub points_checked: usize,
    pub passed: bool,
    pub first_failure: Option<String>,
    pub orientation: Option<String>,
}

impl WzReport {
    fn new(suite: impl Into<String>) -> Self {
        WzReport {
            suite: suite.into(),
            points_checked: 0,
            passed: true,
            first_failure: None,
            orientation: None,
        }
    }

    fn fail(&mut self, msg: String) {
        if self.passed {
            self.passed = false;
            self.first_failure = Some(msg);
        }
    }
}

impl fmt::Display for WzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        write!(
            f,
            "{}: {status} ({} points)",
            self.suite, self.points_checked
        )?;
        if let Some(o) = &self.orientation {
            write!(f, " orientation: {o}")?;
        }
        if let Some(msg) = &self.first_failure {
            write!(f, " first failure: {msg}")?;
        }
        Ok(())
    }
}

/// Checks `F(n,k) = H(n,k+1) - H(n,k)` for `1 <= n <= n_max`, `0 <= k <= n`,
/// and `Σ_{k=0}^{n} F(n,k) = 0`. Stops at the first failing `n`.
pub fn check_wz_pair<F, H>(suite: &str, n_max: u64, f: F, h: H) -> WzReport
where
    F: Fn(u64, i64) -> ExactRational,
    H: Fn(u64, i64) -> ExactRational,
{
    let mut report = WzReport::new(suite);
    for n in 1..=n_max {
        let mut total = BigRational::zero();
        let mut h_prev = h(n, 0);
        for k in 0..=n as i64 {
            let h_next = h(n, k + 1);
            let fv = f(n, k);
            report.points_checked += 1;
            if fv != &h_next - &h_prev {
                report.fail(format!(
                    "(n,k)=({n},{k}): F={fv} but H(n,k+1)-H(n,k)={}",
                    &h_next - &h_prev
                ));
                return report;
            }
            total += fv;
            h_prev = h_next;
        }
        if !total.is_zero() {
            report.fail(format!("n={n}: sum over k is {total}, not 0"));
            return report;
        }
    }
    report
}

pub fn check_wz1(n_max: u64) -> WzReport {
    check_wz_pair("wz1", n_max, f1_unchecked, h1)
}

/// The general pair at fixed `a`; for `a = 2` additionally confirms it
/// coincides with [`f1`]/[`h1`] on the whole grid.
pub fn check_wz2(a: u64, n_max: u64) -> WzReport {
    assert!(a >= 2, "check_wz2 needs a >= 2");
    let mut report = check_wz_pair(
        &format!("wz2(a={a})"),
        n_max,
        |n, k| f2(a, n, k),
        |n, k| h2(a, n, k),
    );
    if a == 2 && report.passed {
        'grid: for n in 1..=n_max {
            for k in 0..=n as i64 + 1 {
                if f2(2, n, k) != f1_unchecked(n, k) || h2(2, n, k) != h1(n, k) {
                    report.fail(format!("(n,k)=({n},{k}): a=2 pair differs from wz1"));
                    break 'grid;
                }
            }
        }
    }
    report
}

/// `R(n,m) = m(8mn + 10n^2 + 6m + 15n + 6) / (2(2n+3)(n+1)(n-m))`; `None` at `m = n`.
pub fn certificate_r(n: u64, m: i64) -> Option<ExactRational> {
    let n = n as i64;
    if m == n {
        return None;
    }
    Some(ratio(
        BigInt::from(m * (8 * m * n + 10 * n * n + 6 * m + 15 * n + 6)),
        2 * (2 * n + 3) * (n + 1) * (n - m),
    ))
}

/// `(n - m) R(n,m)`, the pole-free part of the certificate.
pub fn certificate_r_reduced(n: u64, m: i64) -> ExactRational {
    let n = n as i64;
    ratio(
        BigInt::from(m * (8 * m * n + 10 * n * n + 6 * m + 15 * n + 6)),
        2 * (2 * n + 3) * (n + 1),
    )
}

/// `(-1)^{n-1-m} binom(n-1,m) binom(2n+1+m, n+1+m) / (2n+1)`, zero outside `0..n`.
pub fn certificate_summand(n: u64, m: i64) -> ExactRational {
    let n = n as i64;
    ratio(
        sign(n - 1 - m) * binomial(n - 1, m) * binomial(2 * n + 1 + m, n + 1 + m),
        2 * n + 1,
    )
}

/// `summand(n,m) / (n - m)` without the pole: `binom(n-1,m)/(n-m) = binom(n,m)/n`.
fn summand_over_gap(n: u64, m: i64) -> ExactRational {
    let n = n as i64;
    ratio(
        sign(n - 1 - m) * binomial(n, m) * binomial(2 * n + 1 + m, n + 1 + m),
        n * (2 * n + 1),
    )
}

/// Companion `R(n,m) F(n,m)` built from a reduced certificate `(n-m) R(n,m)`.
/// At `m = n` this is the finite limit of the product.
fn companion<R>(reduced: &R, n: u64, m: i64) -> ExactRational
where
    R: Fn(u64, i64) -> ExactRational,
{
    if m < 0 || m > n as i64 {
        return BigRational::zero();
    }
    reduced(n, m) * summand_over_gap(n, m)
}

type Relation<'a> = dyn Fn(u64, i64) -> bool + 'a;

pub const ORIENTATION_F_IN_N: &str = "F(n+1,m) - F(n,m) = G(n,m+1) - G(n,m)";
pub const ORIENTATION_G_IN_N: &str = "G(n+1,m) - G(n,m) = F(n,m+1) - F(n,m)";

pub fn check_certificate_r(n_max: u64) -> WzReport {
    check_certificate_with(n_max, certificate_r_reduced)
}

/// Certificate check against an arbitrary reduced certificate `(n-m) R(n,m)`.
///
/// Confirms `Σ_{m=0}^{n-1} F(n,m) = 1` for every `n <= n_max`, then tries
/// both WZ orientations with `G = R F` over `0 <= m <= n` and records the
/// one that holds on the whole grid.
pub fn check_certificate_with<R>(n_max: u64, reduced: R) -> WzReport
where
    R: Fn(u64, i64) -> ExactRational,
{
    let mut report = WzReport::new("certificate");
    let one = BigRational::one();
    for n in 1..=n_max {
        let total: BigRational = (0..n as i64).map(|m| certificate_summand(n, m)).sum();
        report.points_checked += 1;
        if total != one {
            report.fail(format!("n={n}: sum is {total}, not 1"));
            return report;
        }
    }

    let f = certificate_summand;
    let g = |n: u64, m: i64| companion(&reduced, n, m);
    let orientations: [(&str, &Relation); 2] = [
        (ORIENTATION_F_IN_N, &|n, m| {
            f(n + 1, m) - f(n, m) == g(n, m + 1) - g(n, m)
        }),
        (ORIENTATION_G_IN_N, &|n, m| {
            g(n + 1, m) - g(n, m) == f(n, m + 1) - f(n, m)
        }),
    ];
    let mut failures = Vec::new();
    for (name, holds) in orientations {
        let mut bad = None;
        'grid: for n in 1..=n_max {
            for m in 0..=n as i64 {
                report.points_checked += 1;
                if !holds(n, m) {
                    bad = Some(format!("{name} fails at (n,m)=({n},{m})"));
                    break 'grid;
                }
            }
        }
        match bad {
            None => {
                report.orientation = Some(name.to_string());
                return report;
            }
            Some(msg) => failures.push(msg),
        }
    }
    report.fail(failures.join("; "));
    report
}
