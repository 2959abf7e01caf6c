//! Exact linear recurrences for integer sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_ORDER_BUDGET: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RecurrenceError {
    #[error("series of length {0} is too short to fit a recurrence (need at least 4 terms)")]
    TooShort(usize),
}

/// `a_n = c_1 a_{n-1} + ... + c_k a_{n-k}` for every `n` in `k..horizon`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub coefficients: Vec<BigRational>,
    pub verified_horizon: usize,
}

impl Recurrence {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// Extends `prefix` (at least `order` terms) by `extra` terms.
    pub fn predict(&self, prefix: &[BigRational], extra: usize) -> Vec<BigRational> {
        let mut seq = prefix.to_vec();
        for _ in 0..extra {
            let n = seq.len();
            let next = self
                .coefficients
                .iter()
                .enumerate()
                .fold(BigRational::zero(), |acc, (i, c)| acc + c * &seq[n - 1 - i]);
            seq.push(next);
        }
        seq.split_off(prefix.len())
    }

    pub fn to_json(&self) -> String {
        let doc = RecurrenceJson {
            order: self.order(),
            coefficients: self
                .coefficients
                .iter()
                .map(|c| Fraction { num: c.numer().to_string(), den: c.denom().to_string() })
                .collect(),
            verified_horizon: self.verified_horizon,
        };
        serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
    }
}

#[derive(Serialize, Deserialize)]
struct Fraction {
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct RecurrenceJson {
    order: usize,
    coefficients: Vec<Fraction>,
    verified_horizon: usize,
}

pub fn to_rationals(values: &[u64]) -> Vec<BigRational> {
    values.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect()
}

/// Solves `h c = rhs` exactly; free unknowns are set to zero. `None` if the
/// system is inconsistent.
fn solve(mut h: Vec<Vec<BigRational>>, mut rhs: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let rows = h.len();
    let cols = h.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !h[i][c].is_zero()) else { continue };
        h.swap(r, p);
        rhs.swap(r, p);
        let inv = BigRational::one() / &h[r][c];
        for j in c..cols {
            h[r][j] = &h[r][j] * &inv;
        }
        rhs[r] = &rhs[r] * &inv;
        for i in 0..rows {
            if i != r && !h[i][c].is_zero() {
                let f = h[i][c].clone();
                for j in c..cols {
                    let t = &f * &h[r][j];
                    h[i][j] -= t;
                }
                let t = &f * &rhs[r];
                rhs[i] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rhs[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rhs[i].clone();
    }
    Some(x)
}

/// Minimal-order exact recurrence, trying orders `1..=budget`. The budget
/// is capped at `(len - 2) / 2` so that every candidate is checked on at
/// least two terms beyond the ones used to solve for it. `Ok(None)` means
/// no recurrence exists within the budget.
pub fn fit_recurrence(series: &[BigRational], budget: usize) -> Result<Option<Recurrence>, RecurrenceError> {
    let len = series.len();
    if len < 4 {
        return Err(RecurrenceError::TooShort(len));
    }
    let budget = budget.min((len - 2) / 2);
    for k in 1..=budget {
        let h: Vec<Vec<BigRational>> =
            (k..2 * k).map(|n| (1..=k).map(|i| series[n - i].clone()).collect()).collect();
        let rhs: Vec<BigRational> = (k..2 * k).map(|n| series[n].clone()).collect();
        let Some(c) = solve(h, rhs) else { continue };
        let holds = (k..len).all(|n| {
            let s = (1..=k).fold(BigRational::zero(), |acc, i| acc + &c[i - 1] * &series[n - i]);
            s == series[n]
        });
        if holds {
            return Ok(Some(Recurrence { coefficients: c, verified_horizon: len }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn constant_and_geometric() {
        let r = fit_recurrence(&to_rationals(&[2, 2, 2, 2]), 12).unwrap().unwrap();
        assert_eq!(r.coefficients, vec![int(1)]);
        let r = fit_recurrence(&to_rationals(&[1, 2, 4, 8, 16, 32]), 12).unwrap().unwrap();
        assert_eq!(r.coefficients, vec![int(2)]);
    }

    #[test]
    fn fibonacci_and_quadratic() {
        let fib = to_rationals(&[1, 1, 2, 3, 5, 8, 13, 21, 34]);
        let r = fit_recurrence(&fib, 12).unwrap().unwrap();
        assert_eq!(r.coefficients, vec![int(1), int(1)]);
        assert_eq!(r.predict(&fib, 2), vec![int(55), int(89)]);
        let sq: Vec<u64> = (0..10).map(|n| n * n + 1).collect();
        let r = fit_recurrence(&to_rationals(&sq), 12).unwrap().unwrap();
        assert_eq!(r.coefficients, vec![int(3), int(-3), int(1)]);
    }

    #[test]
    fn budget_and_length() {
        assert_eq!(fit_recurrence(&to_rationals(&[1, 2, 3]), 12), Err(RecurrenceError::TooShort(3)));
        // order 2 needs six terms; with five only order 1 is tried
        assert_eq!(fit_recurrence(&to_rationals(&[1, 1, 2, 3, 5]), 12), Ok(None));
        let zeros = to_rationals(&[0, 0, 0, 0]);
        assert_eq!(fit_recurrence(&zeros, 1).unwrap().unwrap().order(), 1);
    }

    #[test]
    fn json_has_exact_fractions() {
        let r = Recurrence { coefficients: vec![BigRational::new(BigInt::from(-3), BigInt::from(2))], verified_horizon: 6 };
        let j = r.to_json();
        assert!(j.contains("\"num\": \"-3\"") && j.contains("\"den\": \"2\""));
    }
}
