//! Sparse multivariate power series over big integers, truncated by total degree.
//!
//! A [`TruncatedSeries`] in `r` variables keeps every coefficient of total
//! degree `<= trunc` and nothing above. Binary operations truncate to the
//! smaller of the two operands. Stored coefficients are never zero.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinat::{pow_i64, Compositions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },
    #[error("series is not divisible by t_1 + ... + t_r (first mismatch in degree {degree})")]
    NotDivisible { degree: u32 },
    #[error("series has a nonzero constant term and cannot be divided by t_1 + ... + t_r")]
    NonzeroConstant,
    #[error("degree {degree} is beyond the truncation order {trunc}")]
    OutOfRange { degree: u32, trunc: u32 },
    #[error("expected {expected} weights, got {got}")]
    WeightLength { expected: usize, got: usize },
    #[error("malformed series: {0}")]
    Malformed(String),
}

/// Exponent vector `(m_1, ..., m_r)` of a monomial `t_1^{m_1} ... t_r^{m_r}`.
///
/// Ordered by total degree first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExpVec(Vec<u32>);

impl ExpVec {
    pub fn new(exps: Vec<u32>) -> Self {
        ExpVec(exps)
    }

    pub fn zero(nvars: usize) -> Self {
        ExpVec(vec![0; nvars])
    }

    /// The unit vector `e_k` (0-based `k`).
    pub fn unit(nvars: usize, k: usize) -> Self {
        let mut v = vec![0; nvars];
        v[k] = 1;
        ExpVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `self - e_k`, or `None` when slot `k` is already zero.
    pub fn minus_unit(&self, k: usize) -> Option<ExpVec> {
        if self.0[k] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[k] -= 1;
        Some(ExpVec(v))
    }

    pub fn plus_unit(&self, k: usize) -> ExpVec {
        let mut v = self.0.clone();
        v[k] += 1;
        ExpVec(v)
    }

    fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Every exponent vector of `nvars` entries with total degree `degree`.
    pub fn layer(nvars: usize, degree: u32) -> impl Iterator<Item = ExpVec> {
        Compositions::new(nvars, degree).map(ExpVec)
    }
}

impl Ord for ExpVec {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExpVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for ExpVec {
    fn from(v: Vec<u32>) -> Self {
        ExpVec(v)
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    nvars: usize,
    trunc: u32,
    terms: BTreeMap<ExpVec, BigInt>,
}

impl TruncatedSeries {
    pub fn zero(nvars: usize, trunc: u32) -> Self {
        TruncatedSeries {
            nvars,
            trunc,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, trunc: u32) -> Self {
        Self::constant(nvars, trunc, BigInt::one())
    }

    pub fn constant(nvars: usize, trunc: u32, c: BigInt) -> Self {
        let mut s = Self::zero(nvars, trunc);
        s.insert(ExpVec::zero(nvars), c);
        s
    }

    /// The single variable `t_{k+1}` (0-based `k`).
    pub fn variable(nvars: usize, trunc: u32, k: usize) -> Self {
        let mut s = Self::zero(nvars, trunc);
        s.insert(ExpVec::unit(nvars, k), BigInt::one());
        s
    }

    /// `S_1 = t_1 + ... + t_r`.
    pub fn linear_sum(nvars: usize, trunc: u32) -> Self {
        let mut s = Self::zero(nvars, trunc);
        for k in 0..nvars {
            s.insert(ExpVec::unit(nvars, k), BigInt::one());
        }
        s
    }

    /// Builds a series from `(exponents, coefficient)` pairs, summing repeats
    /// and dropping terms above `trunc`.
    pub fn from_terms<I>(nvars: usize, trunc: u32, terms: I) -> Result<Self, SeriesError>
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut s = Self::zero(nvars, trunc);
        for (exps, c) in terms {
            if exps.len() != nvars {
                return Err(SeriesError::Malformed(format!(
                    "exponent vector of length {} in a {nvars}-variable series",
                    exps.len()
                )));
            }
            s.add_term(ExpVec(exps), c);
        }
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms, ordered by total degree then lexicographically.
    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &BigInt)> {
        self.terms.iter()
    }

    /// Nonzero terms of total degree exactly `degree`.
    pub fn layer(&self, degree: u32) -> impl Iterator<Item = (&ExpVec, &BigInt)> {
        self.terms
            .iter()
            .filter(move |(m, _)| m.total_degree() == degree)
    }

    pub fn coeff(&self, m: &ExpVec) -> Result<BigInt, SeriesError> {
        if m.len() != self.nvars {
            return Err(SeriesError::VarCountMismatch {
                left: self.nvars,
                right: m.len(),
            });
        }
        let degree = m.total_degree();
        if degree > self.trunc {
            return Err(SeriesError::OutOfRange {
                degree,
                trunc: self.trunc,
            });
        }
        Ok(self.get(m))
    }

    fn get(&self, m: &ExpVec) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    fn insert(&mut self, m: ExpVec, c: BigInt) {
        if m.total_degree() <= self.trunc && !c.is_zero() {
            self.terms.insert(m, c);
        }
    }

    fn add_term(&mut self, m: ExpVec, c: BigInt) {
        if m.total_degree() > self.trunc || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Same series with every term above `trunc` discarded.
    pub fn truncate(&self, trunc: u32) -> Self {
        let trunc = trunc.min(self.trunc);
        TruncatedSeries {
            nvars: self.nvars,
            trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() <= trunc)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_vars(&self, other: &Self) -> Result<(), SeriesError> {
        if self.nvars != other.nvars {
            return Err(SeriesError::VarCountMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_vars(other)?;
        let mut out = self.truncate(other.trunc);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            nvars: self.nvars,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.nvars, self.trunc);
        if k.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect();
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_vars(other)?;
        Ok(self.mul_truncated(other, self.trunc.min(other.trunc)))
    }

    /// Product keeping total degrees up to `trunc`; callers guarantee that
    /// both operands are exact through that degree.
    fn mul_truncated(&self, other: &Self, trunc: u32) -> Self {
        let mut by_degree: Vec<Vec<(&ExpVec, &BigInt)>> = vec![Vec::new(); trunc as usize + 1];
        for (m, c) in &other.terms {
            let d = m.total_degree();
            if d <= trunc {
                by_degree[d as usize].push((m, c));
            }
        }
        let mut acc: HashMap<ExpVec, BigInt> = HashMap::new();
        for (ma, ca) in &self.terms {
            let da = ma.total_degree();
            if da > trunc {
                break;
            }
            for bucket in &by_degree[..=(trunc - da) as usize] {
                for &(mb, cb) in bucket {
                    *acc.entry(ma.add(mb)).or_insert_with(BigInt::zero) += ca * cb;
                }
            }
        }
        TruncatedSeries {
            nvars: self.nvars,
            trunc,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// `t_{k+1} * self`, keeping degrees up to `trunc`.
    pub(crate) fn shift_by_var(&self, k: usize, trunc: u32) -> Self {
        TruncatedSeries {
            nvars: self.nvars,
            trunc,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() < trunc)
                .map(|(m, c)| (m.plus_unit(k), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient by `S_1 = t_1 + ... + t_r`.
    ///
    /// The result is truncated at `trunc - 1`. Each homogeneous layer is
    /// solved by the triangular recurrence
    /// `Q[m] = A[m + e_1] - sum_{k >= 2} Q[m + e_1 - e_k]`, visiting the
    /// layer in decreasing order of the first exponent. The quotient is then
    /// multiplied back by `S_1` and compared against `self`.
    pub fn divide_exact_by_s1(&self) -> Result<Self, SeriesError> {
        if !self.get(&ExpVec::zero(self.nvars)).is_zero() {
            return Err(SeriesError::NonzeroConstant);
        }
        if self.trunc == 0 {
            return Err(SeriesError::OutOfRange {
                degree: 1,
                trunc: 0,
            });
        }
        let r = self.nvars;
        let qtrunc = self.trunc - 1;
        let mut q = Self::zero(r, qtrunc);
        for d in 0..=qtrunc {
            let mut layer: Vec<ExpVec> = ExpVec::layer(r, d).collect();
            // ascending lex -> decreasing first exponent after reversal
            layer.reverse();
            for m in layer {
                let mut val = self.get(&m.plus_unit(0));
                for k in 1..r {
                    if let Some(prev) = m.plus_unit(0).minus_unit(k) {
                        val -= q.get(&prev);
                    }
                }
                q.insert(m, val);
            }
        }
        let back = q.mul_by_linear_sum();
        if back != *self {
            let degree = (1..=self.trunc)
                .find(|&d| self.layer(d).ne(back.layer(d)))
                .unwrap_or(0);
            return Err(SeriesError::NotDivisible { degree });
        }
        Ok(q)
    }

    /// `S_1 * self` with truncation raised by one, exact in every degree.
    pub fn mul_by_linear_sum(&self) -> Self {
        let trunc = self.trunc + 1;
        let mut out = Self::zero(self.nvars, trunc);
        for (m, c) in &self.terms {
            for k in 0..self.nvars {
                out.add_term(m.plus_unit(k), c.clone());
            }
        }
        out
    }

    /// Substitutes `t_k -> w_k f` and collects by powers of `f`.
    pub fn substitute_signed(&self, weights: &[i64]) -> Result<UnivariateSeries, SeriesError> {
        if weights.len() != self.nvars {
            return Err(SeriesError::WeightLength {
                expected: self.nvars,
                got: weights.len(),
            });
        }
        let mut coeffs = vec![BigInt::zero(); self.trunc as usize + 1];
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (&e, &w) in m.exps().iter().zip(weights) {
                if e > 0 {
                    term *= pow_i64(w, e);
                }
            }
            coeffs[m.total_degree() as usize] += term;
        }
        Ok(UnivariateSeries { coeffs })
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            nvars: self.nvars,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    exps: m.0.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &SeriesJson) -> Result<Self, SeriesError> {
        let mut terms = Vec::with_capacity(json.terms.len());
        for t in &json.terms {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| SeriesError::Malformed(format!("bad coefficient {:?}", t.coeff)))?;
            if c.is_zero() {
                return Err(SeriesError::Malformed("stored zero coefficient".into()));
            }
            let degree: u32 = t.exps.iter().sum();
            if degree > json.trunc {
                return Err(SeriesError::OutOfRange {
                    degree,
                    trunc: json.trunc,
                });
            }
            terms.push((t.exps.clone(), c));
        }
        Self::from_terms(json.nvars, json.trunc, terms)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O({})", self.trunc + 1);
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (k, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*t{}", k + 1)?,
                    _ => write!(f, "*t{}^{e}", k + 1)?,
                }
            }
        }
        write!(f, " + O({})", self.trunc + 1)
    }
}

/// Wire form of a [`TruncatedSeries`]; coefficients are decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub nvars: usize,
    pub trunc: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coeff: String,
}

/// Coefficients `c_0, c_1, ..., c_N` of a series in one variable `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariateSeries {
    coeffs: Vec<BigInt>,
}

impl UnivariateSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "univariate series needs at least c_0");
        UnivariateSeries { coeffs }
    }

    /// `sum_{n <= trunc} base^n f^n`.
    pub fn geometric(base: i64, trunc: u32) -> Self {
        UnivariateSeries {
            coeffs: (0..=trunc).map(|n| pow_i64(base, n)).collect(),
        }
    }

    pub fn trunc(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(nvars: usize, trunc: u32, terms: &[(&[u32], i64)]) -> TruncatedSeries {
        TruncatedSeries::from_terms(
            nvars,
            trunc,
            terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c))),
        )
        .unwrap()
    }

    #[test]
    fn add_cancels_to_zero() {
        let a = TruncatedSeries::variable(1, 3, 0);
        let z = a.add(&a.neg()).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.len(), 0);
    }

    #[test]
    fn add_disjoint_terms() {
        let a = series(2, 3, &[(&[0, 0], 1), (&[1, 0], 1)]);
        let b = series(2, 3, &[(&[0, 1], 1)]);
        let s = a.add(&b).unwrap();
        assert_eq!(s, series(2, 3, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]));
        assert_eq!(
            TruncatedSeries::linear_sum(2, 3),
            s.sub(&TruncatedSeries::one(2, 3)).unwrap()
        );
    }

    #[test]
    fn add_rejects_mismatched_vars() {
        let a = TruncatedSeries::one(2, 3);
        let b = TruncatedSeries::one(3, 3);
        assert_eq!(
            a.add(&b),
            Err(SeriesError::VarCountMismatch { left: 2, right: 3 })
        );
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn mul_reproduces_degree_three_layer() {
        let s1 = TruncatedSeries::linear_sum(2, 3);
        let q = series(2, 3, &[(&[2, 0], 5), (&[1, 1], 16), (&[0, 2], 12)]);
        let p = s1.mul(&q).unwrap();
        assert_eq!(
            p,
            series(
                2,
                3,
                &[(&[3, 0], 5), (&[2, 1], 21), (&[1, 2], 28), (&[0, 3], 12)]
            )
        );
    }

    #[test]
    fn mul_truncates() {
        let a = series(1, 2, &[(&[0], 1), (&[1], 1)]);
        let b = series(1, 2, &[(&[0], 1), (&[1], -1)]);
        assert_eq!(a.mul(&b).unwrap(), series(1, 2, &[(&[0], 1), (&[2], -1)]));

        let top = series(2, 2, &[(&[1, 1], 1)]);
        let lin = series(2, 2, &[(&[1, 0], 1)]);
        assert!(top.mul(&lin).unwrap().is_zero());
    }

    #[test]
    fn mul_takes_min_truncation() {
        let a = TruncatedSeries::one(2, 5);
        let b = TruncatedSeries::one(2, 2);
        assert_eq!(a.mul(&b).unwrap().trunc(), 2);
        assert_eq!(a.add(&b).unwrap().trunc(), 2);
    }

    #[test]
    fn divide_paper_layer() {
        let a = series(
            2,
            3,
            &[(&[3, 0], 5), (&[2, 1], 21), (&[1, 2], 28), (&[0, 3], 12)],
        );
        let q = a.divide_exact_by_s1().unwrap();
        assert_eq!(
            q,
            series(2, 2, &[(&[2, 0], 5), (&[1, 1], 16), (&[0, 2], 12)])
        );
    }

    #[test]
    fn divide_difference_of_squares() {
        let a = series(2, 2, &[(&[2, 0], 1), (&[0, 2], -1)]);
        let q = a.divide_exact_by_s1().unwrap();
        assert_eq!(q, series(2, 1, &[(&[1, 0], 1), (&[0, 1], -1)]));
    }

    #[test]
    fn divide_rejects_non_multiple() {
        let a = series(2, 2, &[(&[1, 0], 1)]);
        assert_eq!(
            a.divide_exact_by_s1(),
            Err(SeriesError::NotDivisible { degree: 1 })
        );
    }

    #[test]
    fn divide_rejects_constant() {
        let a = TruncatedSeries::one(2, 2);
        assert_eq!(a.divide_exact_by_s1(), Err(SeriesError::NonzeroConstant));
    }

    #[test]
    fn substitute_sums_signed_layers() {
        let g2 = series(2, 2, &[(&[2, 0], 5), (&[1, 1], 16), (&[0, 2], 12)]);
        let u = g2.substitute_signed(&[-1, 1]).unwrap();
        assert_eq!(u.coeffs()[2], BigInt::from(1));

        let g3 = series(
            2,
            3,
            &[
                (&[0, 0], 7),
                (&[3, 0], 14),
                (&[2, 1], 70),
                (&[1, 2], 110),
                (&[0, 3], 55),
            ],
        );
        let u = g3.substitute_signed(&[-1, 1]).unwrap();
        assert_eq!(u.coeffs()[3], BigInt::from(1));

        let zeroed = g3.substitute_signed(&[0, 0]).unwrap();
        assert_eq!(
            zeroed.coeffs(),
            &[
                BigInt::from(7),
                BigInt::zero(),
                BigInt::zero(),
                BigInt::zero()
            ]
        );
        assert_eq!(
            g3.substitute_signed(&[1]),
            Err(SeriesError::WeightLength {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn coeff_distinguishes_out_of_range() {
        let a = series(2, 2, &[(&[1, 1], 16)]);
        assert_eq!(a.coeff(&ExpVec::new(vec![1, 1])).unwrap(), BigInt::from(16));
        assert_eq!(a.coeff(&ExpVec::new(vec![0, 1])).unwrap(), BigInt::zero());
        assert_eq!(
            a.coeff(&ExpVec::new(vec![2, 1])),
            Err(SeriesError::OutOfRange {
                degree: 3,
                trunc: 2
            })
        );
    }

    #[test]
    fn json_orders_by_degree_then_lex() {
        let a = series(
            2,
            2,
            &[(&[2, 0], 5), (&[0, 0], 1), (&[0, 2], 12), (&[1, 0], 2)],
        );
        let j = a.to_json();
        let order: Vec<Vec<u32>> = j.terms.iter().map(|t| t.exps.clone()).collect();
        assert_eq!(order, vec![vec![0, 0], vec![1, 0], vec![0, 2], vec![2, 0]]);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains(r#"{"exps":[1,0],"coeff":"2"}"#));
        let back: SeriesJson = serde_json::from_str(&text).unwrap();
        assert_eq!(TruncatedSeries::from_json(&back).unwrap(), a);
    }

    #[test]
    fn json_rejects_bad_input() {
        let bad = SeriesJson {
            nvars: 1,
            trunc: 1,
            terms: vec![TermJson {
                exps: vec![2],
                coeff: "3".into(),
            }],
        };
        assert!(TruncatedSeries::from_json(&bad).is_err());
        let bad = SeriesJson {
            nvars: 1,
            trunc: 1,
            terms: vec![TermJson {
                exps: vec![1],
                coeff: "x".into(),
            }],
        };
        assert!(matches!(
            TruncatedSeries::from_json(&bad),
            Err(SeriesError::Malformed(_))
        ));
    }
}
