//! Verification suites and the machine-readable report they produce.
//!
//! Every suite compares a closed form or identity against an independent
//! computation (usually the series oracle) and records one [`Case`] per
//! comparison. Default bounds are the acceptance bounds, so running
//! [`Suite::All`] with [`Bounds::default`] is the full acceptance run.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::combinat::pow_i64;
use crate::geode::{
    eval_alternating, eval_general, general_base, geode_closed_2var, geode_closed_shifted,
    geode_closed_two_nonzero, geode_series, shifted_exps, two_nonzero_exps, GeodeTable,
};
use crate::hypercat::{functional_residual, solve_s};
use crate::identities::{claim1_sum, claim2_ct, claim2_sum, partition_sum_main};
use crate::mpoly::{ExpVec, UnivariateSeries};
use crate::wz::{
    certificate_r_reduced, check_certificate_r, check_certificate_with, check_wz1, check_wz2,
    check_wz_pair, f1, h1, WzReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Thm1,
    Thm2,
    Thm3,
    Eq31,
    Claims,
    Wz1,
    Wz2,
    Certificate,
    Recurrence,
    TwoNonzero,
    GeneralEval,
    Oracle,
    All,
}

impl Suite {
    /// Every concrete suite, in the order `all` runs them.
    pub const CONCRETE: [Suite; 12] = [
        Suite::Thm1,
        Suite::Thm2,
        Suite::Thm3,
        Suite::Eq31,
        Suite::Claims,
        Suite::Wz1,
        Suite::Wz2,
        Suite::Certificate,
        Suite::Recurrence,
        Suite::TwoNonzero,
        Suite::GeneralEval,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm1 => "thm1",
            Suite::Thm2 => "thm2",
            Suite::Thm3 => "thm3",
            Suite::Eq31 => "eq31",
            Suite::Claims => "claims",
            Suite::Wz1 => "wz1",
            Suite::Wz2 => "wz2",
            Suite::Certificate => "certificate",
            Suite::Recurrence => "recurrence",
            Suite::TwoNonzero => "two-nonzero",
            Suite::GeneralEval => "general-eval",
            Suite::Oracle => "oracle",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::CONCRETE
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

/// Optional overrides of the per-suite default bounds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bounds {
    /// Largest total degree of checked coefficients (thm1, thm2, recurrence, oracle).
    pub max_degree: Option<u32>,
    /// Restrict thm2/thm3/eq31/claims/wz2 to a single `a`.
    pub a: Option<u32>,
    /// Largest power of `f` (thm3, general-eval).
    pub max_order: Option<u32>,
    /// Largest `n` (eq31, claims, wz1, wz2, certificate, two-nonzero).
    pub n_max: Option<u32>,
    /// Largest variable count (recurrence, oracle).
    pub r_max: Option<u32>,
}

impl Bounds {
    fn a_range(&self, lo: u32, hi: u32) -> Vec<u32> {
        match self.a {
            Some(a) => vec![a],
            None => (lo..=hi).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Case {
    pub id: String,
    pub params: Value,
    pub expected: String,
    pub actual: String,
    pub status: Status,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl VerifyReport {
    fn new(suite: &str, mut cases: Vec<Case>) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = cases.iter().filter(|c| c.status == Status::Pass).count();
        VerifyReport {
            suite: suite.to_string(),
            summary: Summary {
                total: cases.len(),
                passed,
                failed: cases.len() - passed,
            },
            cases,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// 0 when every case passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| c.status != Status::Pass)
    }
}

struct Recorder {
    suite: &'static str,
    cases: Vec<Case>,
}

impl Recorder {
    fn new(suite: Suite) -> Self {
        Recorder {
            suite: suite.name(),
            cases: Vec::new(),
        }
    }

    /// Times `actual`, then compares its result with `expected`.
    fn compare<T, E, F>(&mut self, id: String, params: Value, expected: T, actual: F)
    where
        T: PartialEq + fmt::Display,
        E: fmt::Display,
        F: FnOnce() -> Result<T, E>,
    {
        let start = Instant::now();
        let result = actual();
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        let (actual, status) = match result {
            Ok(v) if v == expected => (v.to_string(), Status::Pass),
            Ok(v) => (v.to_string(), Status::Fail),
            Err(e) => (e.to_string(), Status::Error),
        };
        self.cases.push(Case {
            id: format!("{}/{id}", self.suite),
            params,
            expected: expected.to_string(),
            actual,
            status,
            elapsed_ms,
        });
    }

    fn wz(&mut self, id: String, params: Value, expect_pass: bool, run: impl FnOnce() -> WzReport) {
        let start = Instant::now();
        let report = run();
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        let status = if report.passed == expect_pass {
            Status::Pass
        } else {
            Status::Fail
        };
        self.cases.push(Case {
            id: format!("{}/{id}", self.suite),
            params,
            expected: if expect_pass { "pass" } else { "fail" }.to_string(),
            actual: report.to_string(),
            status,
            elapsed_ms,
        });
    }

    fn finish(self) -> VerifyReport {
        VerifyReport::new(self.suite, self.cases)
    }
}

/// Geode table or the error message explaining why it could not be built.
fn oracle_table(r: usize, trunc: u32) -> Result<GeodeTable, String> {
    geode_series(r, trunc).map_err(|e| e.to_string())
}

fn table_coeff(table: &Result<GeodeTable, String>, m: &ExpVec) -> Result<BigInt, String> {
    match table {
        Ok(t) => t.coeff(m).map_err(|e| e.to_string()),
        Err(e) => Err(e.clone()),
    }
}

fn series_text(u: &UnivariateSeries) -> String {
    let parts: Vec<String> = u.coeffs().iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(","))
}

#[derive(PartialEq)]
struct Coeffs(UnivariateSeries);

impl fmt::Display for Coeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&series_text(&self.0))
    }
}

pub fn run_suite(suite: Suite, bounds: &Bounds) -> VerifyReport {
    match suite {
        Suite::Thm1 => thm1(bounds),
        Suite::Thm2 => thm2(bounds),
        Suite::Thm3 => thm3(bounds),
        Suite::Eq31 => eq31(bounds),
        Suite::Claims => claims(bounds),
        Suite::Wz1 => wz1(bounds),
        Suite::Wz2 => wz2(bounds),
        Suite::Certificate => certificate(bounds),
        Suite::Recurrence => recurrence(bounds),
        Suite::TwoNonzero => two_nonzero(bounds),
        Suite::GeneralEval => general_eval(bounds),
        Suite::Oracle => oracle(bounds),
        Suite::All => {
            let cases = Suite::CONCRETE
                .iter()
                .flat_map(|&s| run_suite(s, bounds).cases)
                .collect();
            VerifyReport::new("all", cases)
        }
    }
}

/// Two-variable Geode closed form against the oracle for `m1 + m2 <= max_degree`.
fn thm1(b: &Bounds) -> VerifyReport {
    let n = b.max_degree.unwrap_or(12);
    let mut rec = Recorder::new(Suite::Thm1);
    let table = oracle_table(2, n);
    for d in 0..=n {
        for m1 in (0..=d).rev() {
            let m2 = d - m1;
            let m = ExpVec::new(vec![m1, m2]);
            rec.compare(
                format!("m1={m1:02},m2={m2:02}"),
                json!({"m1": m1, "m2": m2}),
                geode_closed_2var(m1, m2),
                || table_coeff(&table, &m),
            );
        }
    }
    rec.finish()
}

/// Shifted closed form against the oracle with `a - 2` leading zeros, plus
/// the `a = 2` specialization onto the two-variable formula.
fn thm2(b: &Bounds) -> VerifyReport {
    let n = b.max_degree.unwrap_or(8);
    let mut rec = Recorder::new(Suite::Thm2);
    for a in b.a_range(2, 5) {
        let table = oracle_table(a as usize, n);
        for d in 0..=n {
            for p in (0..=d).rev() {
                let q = d - p;
                let m = shifted_exps(a, p, q);
                rec.compare(
                    format!("a={a},p={p:02},q={q:02}"),
                    json!({"a": a, "m_a": p, "m_a1": q}),
                    geode_closed_shifted(a, p, q),
                    || table_coeff(&table, &m),
                );
                if a == 2 {
                    rec.compare(
                        format!("a=2-vs-thm1,p={p:02},q={q:02}"),
                        json!({"a": 2, "m_a": p, "m_a1": q}),
                        geode_closed_2var(p, q),
                        || Ok::<_, String>(geode_closed_shifted(2, p, q)),
                    );
                }
            }
        }
    }
    rec.finish()
}

/// Alternating substitution into `G` in `2a` variables gives `a^n`.
fn thm3(b: &Bounds) -> VerifyReport {
    let order = b.max_order.unwrap_or(8);
    let mut rec = Recorder::new(Suite::Thm3);
    for a in b.a_range(1, 3) {
        let series = eval_alternating(a, order).map_err(|e| e.to_string());
        for n in 0..=order {
            rec.compare(
                format!("a={a},n={n:02}"),
                json!({"a": a, "n": n}),
                pow_i64(i64::from(a), n),
                || match &series {
                    Ok(u) => Ok(u.coeffs()[n as usize].clone()),
                    Err(e) => Err(e.clone()),
                },
            );
        }
    }
    rec.finish()
}

fn eq31(b: &Bounds) -> VerifyReport {
    let n_max = b.n_max.unwrap_or(7);
    let mut rec = Recorder::new(Suite::Eq31);
    for a in b.a_range(1, 3) {
        for n in 1..=n_max {
            rec.compare(
                format!("a={a},n={n:02}"),
                json!({"a": a, "n": n}),
                pow_i64(i64::from(a), n - 1),
                || partition_sum_main(n, a),
            );
        }
    }
    rec.finish()
}

/// Both partition-sum families at `x = -2..=n` (at least `n` points, enough
/// for polynomials of degree `n - 1` in `x`), the constant-term route for
/// `x = 0..=n`, and the two named specializations.
fn claims(b: &Bounds) -> VerifyReport {
    let n_max = b.n_max.unwrap_or(7);
    let mut rec = Recorder::new(Suite::Claims);
    for a in b.a_range(1, 3) {
        for n in 1..=n_max {
            let target = pow_i64(i64::from(a), n - 1);
            let degree_note = n - 1;
            for x in -2..=i64::from(n) {
                let params = json!({"a": a, "n": n, "x": x, "degree_in_x_at_most": degree_note});
                rec.compare(
                    format!("claim1/a={a},n={n:02},x={x:+03}"),
                    params.clone(),
                    BigInt::from(0),
                    || claim1_sum(n, a, x),
                );
                rec.compare(
                    format!("claim2/a={a},n={n:02},x={x:+03}"),
                    params,
                    target.clone(),
                    || claim2_sum(n, a, x),
                );
            }
            for x in 0..=n {
                let by_sum = claim2_sum(n, a, i64::from(x));
                rec.compare(
                    format!("claim2-ct/a={a},n={n:02},x={x:+03}"),
                    json!({"a": a, "n": n, "x": x}),
                    by_sum
                        .map(|v| v.to_string())
                        .unwrap_or_else(|e| e.to_string()),
                    || claim2_ct(n, a, x).map(|v| v.to_string()),
                );
            }
            rec.compare(
                format!("eq32/a={a},n={n:02}"),
                json!({"a": a, "n": n, "x": 0}),
                BigInt::from(0),
                || claim1_sum(n, a, 0),
            );
            rec.compare(
                format!("eq33/a={a},n={n:02}"),
                json!({"a": a, "n": n, "x": 2 * a}),
                target.clone(),
                || claim2_sum(n, a, 2 * i64::from(a)),
            );
            // alternating shifts of the second family cancel
            rec.compare(
                format!("chain/a={a},n={n:02}"),
                json!({"a": a, "n": n, "x": 0}),
                BigInt::from(0),
                || -> Result<BigInt, crate::identities::IdentityError> {
                    let mut acc = BigInt::from(0);
                    for i in 1..=2 * a {
                        let v = claim2_sum(n, a, i64::from(i))?;
                        if i % 2 == 1 {
                            acc -= v;
                        } else {
                            acc += v;
                        }
                    }
                    Ok(acc)
                },
            );
        }
    }
    rec.finish()
}

fn wz1(b: &Bounds) -> VerifyReport {
    let n_max = b.n_max.unwrap_or(200);
    let mut rec = Recorder::new(Suite::Wz1);
    rec.wz(
        format!("pair,n_max={n_max}"),
        json!({"n_max": n_max}),
        true,
        || check_wz1(u64::from(n_max)),
    );
    rec.wz(
        "negative-control,sign-flipped-h".into(),
        json!({"n_max": 5}),
        false,
        || {
            check_wz_pair(
                "wz1-corrupted",
                5,
                |n, k| f1(n, k).expect("k within 0..=n"),
                |n, k| -h1(n, k),
            )
        },
    );
    rec.finish()
}

fn wz2(b: &Bounds) -> VerifyReport {
    let n_max = b.n_max.unwrap_or(100);
    let mut rec = Recorder::new(Suite::Wz2);
    for a in b.a_range(2, 5) {
        rec.wz(
            format!("pair,a={a},n_max={n_max}"),
            json!({"a": a, "n_max": n_max}),
            true,
            || check_wz2(u64::from(a), u64::from(n_max)),
        );
    }
    rec.finish()
}

fn certificate(b: &Bounds) -> VerifyReport {
    let n_max = b.n_max.unwrap_or(100);
    let mut rec = Recorder::new(Suite::Certificate);
    rec.wz(
        format!("r,n_max={n_max}"),
        json!({"n_max": n_max}),
        true,
        || check_certificate_r(u64::from(n_max)),
    );
    rec.wz(
        "negative-control,perturbed-r".into(),
        json!({"n_max": 10}),
        false,
        || {
            check_certificate_with(10, |n, m| {
                // 6m -> 7m in the numerator
                certificate_r_reduced(n, m)
                    + num_rational::BigRational::new(
                        BigInt::from(m * m),
                        BigInt::from(2 * (2 * n as i64 + 3) * (n as i64 + 1)),
                    )
            })
        },
    );
    rec.finish()
}

/// `Σ_k G[m - e_k] = C[m]` for every nonzero `m` in up to `r_max` variables.
fn recurrence(b: &Bounds) -> VerifyReport {
    let n = b.max_degree.unwrap_or(8);
    let r_max = b.r_max.unwrap_or(4);
    let mut rec = Recorder::new(Suite::Recurrence);
    for r in 1..=r_max as usize {
        let table = oracle_table(r, n.saturating_sub(1));
        for d in 1..=n {
            for m in ExpVec::layer(r, d) {
                rec.compare(
                    format!("r={r},m={m}"),
                    json!({"r": r, "m": m.exps()}),
                    true,
                    || match &table {
                        Ok(t) => t.recurrence_holds(&m).map_err(|e| e.to_string()),
                        Err(e) => Err(e.clone()),
                    },
                );
            }
        }
    }
    rec.finish()
}

fn two_nonzero(b: &Bounds) -> VerifyReport {
    let n_max = b.n_max.unwrap_or(7);
    let mut rec = Recorder::new(Suite::TwoNonzero);
    for (s, t) in [(1u32, 2u32), (1, 3), (2, 3), (2, 5)] {
        let table = oracle_table(t as usize, n_max - 1);
        for n in 1..=n_max {
            for i in 0..n {
                let m = two_nonzero_exps(s, t, n, i);
                let closed = geode_closed_two_nonzero(s, t, n, i);
                rec.compare(
                    format!("s={s},t={t},n={n:02},i={i:02}"),
                    json!({"s": s, "t": t, "n": n, "i": i}),
                    closed.clone(),
                    || table_coeff(&table, &m),
                );
                if (s, t) == (1, 2) {
                    rec.compare(
                        format!("s=1,t=2-vs-thm1,n={n:02},i={i:02}"),
                        json!({"s": 1, "t": 2, "n": n, "i": i}),
                        geode_closed_2var(n - 1 - i, i),
                        || Ok::<_, String>(closed),
                    );
                }
            }
        }
    }
    rec.finish()
}

fn general_eval(b: &Bounds) -> VerifyReport {
    let mut rec = Recorder::new(Suite::GeneralEval);
    let cases: [(u32, &[i64], u32); 2] = [(2, &[2, 3], 6), (1, &[3], 8)];
    for (a, c, order) in cases {
        let order = b.max_order.map_or(order, |o| o.min(order));
        let base = general_base(c);
        rec.compare(
            format!("a={a},c={c:?}"),
            json!({"a": a, "c": c, "max_order": order, "base": base}),
            Coeffs(UnivariateSeries::geometric(base, order)),
            || eval_general(a, c, order).map(Coeffs),
        );
    }
    let order = b.max_order.unwrap_or(8);
    rec.compare(
        "a=2,c=[1, 1]-vs-alternating".into(),
        json!({"a": 2, "c": [1, 1], "max_order": order}),
        Coeffs(UnivariateSeries::geometric(2, order)),
        || -> Result<Coeffs, String> {
            let general = eval_general(2, &[1, 1], order).map_err(|e| e.to_string())?;
            let alternating = eval_alternating(2, order).map_err(|e| e.to_string())?;
            if general == alternating {
                Ok(Coeffs(general))
            } else {
                Err(format!(
                    "general {} differs from alternating {}",
                    series_text(&general),
                    series_text(&alternating)
                ))
            }
        },
    );
    rec.finish()
}

/// Functional-equation residual of the solver and the factorization `S_1 G = S - 1`.
fn oracle(b: &Bounds) -> VerifyReport {
    let n = b.max_degree.unwrap_or(10);
    let r_max = b.r_max.unwrap_or(4);
    let mut rec = Recorder::new(Suite::Oracle);
    for r in 1..=r_max as usize {
        rec.compare(
            format!("residual,r={r}"),
            json!({"r": r, "trunc": n}),
            "0".to_string(),
            || -> Result<String, String> {
                let res = functional_residual(&solve_s(r, n)).map_err(|e| e.to_string())?;
                Ok(if res.is_zero() {
                    "0".into()
                } else {
                    res.to_string()
                })
            },
        );
        rec.compare(
            format!("factorization,r={r}"),
            json!({"r": r, "trunc": n}),
            true,
            || oracle_table(r, n).map(|t| t.factorization_holds()),
        );
    }
    rec.finish()
}
