//! Factorials, binomials and composition enumeration shared by every module.
//!
//! Factorials come from a process-wide memo table that only ever grows; reads
//! after the first extension to a given size take a shared lock.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

static FACTORIALS: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();

fn table() -> &'static RwLock<Vec<BigInt>> {
    FACTORIALS.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

/// `n!`, memoized.
pub fn factorial(n: u64) -> BigInt {
    let idx = n as usize;
    {
        let t = table().read().expect("factorial table poisoned");
        if let Some(v) = t.get(idx) {
            return v.clone();
        }
    }
    let mut t = table().write().expect("factorial table poisoned");
    while t.len() <= idx {
        let k = t.len();
        let next = &t[k - 1] * BigInt::from(k);
        t.push(next);
    }
    t[idx].clone()
}

/// `binom(n, k)` for nonnegative `n`; zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let (n, k) = (n as u64, k as u64);
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Polynomial binomial `y (y-1) ... (y-k+1) / k!`, valid for any integer `y`.
pub fn binomial_poly(y: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    for j in 0..i64::from(k) {
        num *= BigInt::from(y - j);
    }
    let (q, r) = num.div_rem(&factorial(u64::from(k)));
    debug_assert!(r.is_zero());
    q
}

/// Multinomial `(Σ parts)! / Π parts!`.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let total: u64 = parts.iter().map(|&p| u64::from(p)).sum();
    let denom = parts
        .iter()
        .fold(BigInt::one(), |acc, &p| acc * factorial(u64::from(p)));
    factorial(total) / denom
}

/// `(-1)^e` as a sign factor.
pub fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Exact integer division; panics if `den` does not divide `num`.
pub fn exact_div(num: &BigInt, den: &BigInt, what: &str) -> BigInt {
    let (q, r) = num.div_rem(den);
    assert!(
        r.is_zero(),
        "{what}: {num} is not divisible by {den} (remainder {r})"
    );
    q
}

/// Nonnegative integer power `base^exp` as a big integer.
pub fn pow_i64(base: i64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// All vectors of `parts` nonnegative integers summing to `total`, in
/// ascending lexicographic order.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<u32>>,
}

impl Compositions {
    pub fn new(parts: usize, total: u32) -> Self {
        let current = match parts {
            0 if total == 0 => Some(Vec::new()),
            0 => None,
            _ => {
                let mut v = vec![0; parts];
                v[parts - 1] = total;
                Some(v)
            }
        };
        Compositions { current }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let mut c = out.clone();
        let last = c.len().saturating_sub(1);
        // rightmost nonzero slot past the first; none means we were at (total, 0, ..., 0)
        if let Some(j) = (1..c.len()).rev().find(|&j| c[j] > 0) {
            let moved = c[j] - 1;
            c[j - 1] += 1;
            c[j] = 0;
            c[last] += moved;
            self.current = Some(c);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_small_values() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(20), BigInt::from(2_432_902_008_176_640_000u64));
    }

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn binomial_poly_handles_negative_top() {
        // binom(-1, k) = (-1)^k
        assert_eq!(binomial_poly(-1, 3), BigInt::from(-1));
        assert_eq!(binomial_poly(-2, 2), BigInt::from(3));
        assert_eq!(binomial_poly(7, 3), binomial(7, 3));
        assert_eq!(binomial_poly(2, 4), BigInt::zero());
        assert_eq!(binomial_poly(-5, 0), BigInt::one());
    }

    #[test]
    fn multinomial_matches_hand_values() {
        assert_eq!(multinomial(&[1, 1, 4]), BigInt::from(30));
        assert_eq!(multinomial(&[]), BigInt::one());
    }

    #[test]
    fn compositions_ascending_lex() {
        let all: Vec<_> = Compositions::new(3, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0, 2],
                vec![0, 1, 1],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![1, 1, 0],
                vec![2, 0, 0]
            ]
        );
        assert_eq!(Compositions::new(1, 4).collect::<Vec<_>>(), vec![vec![4]]);
        assert_eq!(Compositions::new(0, 0).count(), 1);
        assert_eq!(Compositions::new(0, 3).count(), 0);
        assert_eq!(Compositions::new(4, 0).count(), 1);
    }

    #[test]
    fn compositions_count_is_stars_and_bars() {
        for parts in 1..6usize {
            for total in 0..7u32 {
                let expected = binomial(i64::from(total) + parts as i64 - 1, parts as i64 - 1);
                assert_eq!(
                    BigInt::from(Compositions::new(parts, total).count()),
                    expected
                );
            }
        }
    }
}
