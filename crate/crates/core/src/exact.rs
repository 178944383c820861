//! Arbitrary-precision primitives: factorials, binomials, multinomials,
//! classical and r-Stirling numbers of the second kind, Bell numbers.
//!
//! Everything is exact. The Stirling and Bell numbers each have a second,
//! independent route (inclusion-exclusion, Howard's composition sum, the
//! Bell triangle) that exists to cross-check the memoized recurrence.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative integer used for every count.
pub type Nat = BigUint;

pub fn factorial(n: usize) -> Nat {
    (1..=n).fold(Nat::one(), |acc, i| acc * i)
}

/// `n` choose `k`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Nat {
    if k > n {
        return Nat::zero();
    }
    let k = k.min(n - k);
    let mut acc = Nat::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `n! / (p_1! ... p_j!)`, rejecting parts that do not sum to `n`.
pub fn multinomial(n: usize, parts: &[usize]) -> Result<Nat> {
    let sum: usize = parts.iter().sum();
    if sum != n {
        return Err(Error::PartsMismatch { n, sum });
    }
    let mut remaining = n;
    let mut acc = Nat::one();
    for &p in parts {
        acc *= binomial(remaining, p);
        remaining -= p;
    }
    Ok(acc)
}

/// Memoized triangle of Stirling numbers of the second kind.
///
/// Rows grow on demand through the recurrence
/// `{n, k} = {n-1, k-1} + k {n-1, k}`; a built table is a plain value and
/// can be cloned or shared read-only.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    rows: Vec<Vec<Nat>>,
}

impl Default for StirlingTable {
    fn default() -> Self {
        Self::new()
    }
}

impl StirlingTable {
    pub fn new() -> Self {
        StirlingTable {
            rows: vec![vec![Nat::one()]],
        }
    }

    pub fn with_max_n(max_n: usize) -> Self {
        let mut table = Self::new();
        table.grow(max_n);
        table
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn grow(&mut self, max_n: usize) {
        while self.rows.len() <= max_n {
            let prev = self.rows.last().expect("row 0 always present");
            let n = self.rows.len();
            let mut row = vec![Nat::zero(); n + 1];
            for (k, slot) in row.iter_mut().enumerate().skip(1) {
                let mut v = prev[k - 1].clone();
                if k < prev.len() {
                    v += &prev[k] * k;
                }
                *slot = v;
            }
            self.rows.push(row);
        }
    }

    /// Entry `{n, k}` if the table already covers row `n`.
    pub fn get(&self, n: usize, k: usize) -> Option<Nat> {
        let row = self.rows.get(n)?;
        Some(row.get(k).cloned().unwrap_or_default())
    }

    pub fn entry(&mut self, n: usize, k: usize) -> Nat {
        self.grow(n);
        self.get(n, k).expect("row grown above")
    }

    pub fn row(&mut self, n: usize) -> &[Nat] {
        self.grow(n);
        &self.rows[n]
    }
}

/// Partitions of `[n]` into `k` non-empty blocks.
pub fn stirling2(n: usize, k: usize) -> Nat {
    if k > n {
        return Nat::zero();
    }
    StirlingTable::with_max_n(n).entry(n, k)
}

/// Inclusion-exclusion: `(1/k!) sum_m (-1)^(k-m) C(k,m) m^n`.
pub fn stirling2_explicit(n: usize, k: usize) -> Result<Nat> {
    let mut sum = BigInt::zero();
    for m in 0..=k {
        let term = BigInt::from_biguint(Sign::Plus, binomial(k, m) * Nat::from(m).pow(n as u32));
        if (k - m).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let kf = BigInt::from_biguint(Sign::Plus, factorial(k));
    let (q, r) = sum.div_rem(&kf);
    if !r.is_zero() {
        return Err(Error::NotDivisible { n, k });
    }
    q.to_biguint().ok_or(Error::NotDivisible { n, k })
}

/// Howard's formula: `(n!/k!) sum 1/(i_1! ... i_k!)` over compositions of
/// `n` into `k` positive parts, evaluated over the rationals.
pub fn stirling2_howard(n: usize, k: usize) -> Result<Nat> {
    let inv_fact: Vec<BigRational> = (0..=n)
        .map(|i| BigRational::new(BigInt::one(), factorial(i).into()))
        .collect();
    let sum = composition_sum(n, k, &inv_fact);
    let value = sum * BigRational::new(factorial(n).into(), factorial(k).into());
    if !value.is_integer() {
        return Err(Error::NotIntegral("Howard composition sum"));
    }
    value
        .to_integer()
        .to_biguint()
        .ok_or(Error::NotIntegral("Howard composition sum"))
}

// Sum of prod 1/i_j! over compositions of `n` into `parts` positive parts.
fn composition_sum(n: usize, parts: usize, inv_fact: &[BigRational]) -> BigRational {
    if parts == 0 {
        return if n == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        };
    }
    if n < parts {
        return BigRational::zero();
    }
    let mut total = BigRational::zero();
    for first in 1..=n - (parts - 1) {
        let rest = composition_sum(n - first, parts - 1, inv_fact);
        if !rest.is_zero() {
            total += &inv_fact[first] * rest;
        }
    }
    total
}

/// Bell number as the row sum of the Stirling triangle.
pub fn bell(n: usize) -> Nat {
    let mut table = StirlingTable::with_max_n(n);
    table.row(n).iter().sum()
}

/// Bell number via the Bell (Aitken) triangle, independent of the Stirling
/// recurrence.
pub fn bell_triangle(n: usize) -> Nat {
    let mut row = vec![Nat::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(row.last().expect("non-empty row").clone());
        for v in &row {
            let prev = next.last().expect("seeded above").clone();
            next.push(prev + v);
        }
        row = next;
    }
    row[0].clone()
}

/// r-Stirling number: partitions of `[n]` into `k` blocks with `1..=r` in
/// distinct blocks. Computed by its own recurrence so it can check the
/// mixed-Stirling identity.
pub fn r_stirling(n: usize, k: usize, r: usize) -> Result<Nat> {
    if n < r {
        return Err(Error::PrefixTooLong { n, r });
    }
    if k > n || k < r {
        return Ok(Nat::zero());
    }
    // row[j] = {m, j}_r for the current m, starting from m = r.
    let mut row = vec![Nat::zero(); k + 1];
    row[r] = Nat::one();
    for _ in r..n {
        for j in (1..=k).rev() {
            let carried = row[j - 1].clone();
            row[j] = &row[j] * j + carried;
        }
        row[0] = Nat::zero();
    }
    Ok(row[k].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), nat(6));
        assert_eq!(binomial(9, 0), nat(1));
        assert_eq!(binomial(5, 7), nat(0));
        assert_eq!(binomial(0, 0), nat(1));
        for n in 0..30 {
            for k in 0..=n {
                assert_eq!(binomial(n, k), binomial(n, n - k));
                assert_eq!(
                    binomial(n, k),
                    factorial(n) / (factorial(k) * factorial(n - k))
                );
            }
        }
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(3, &[2, 1]).unwrap(), nat(3));
        assert_eq!(multinomial(4, &[2, 2]).unwrap(), nat(6));
        assert_eq!(multinomial(6, &[2, 2, 2]).unwrap(), nat(720 / 8));
        assert_eq!(multinomial(0, &[]).unwrap(), nat(1));
        assert_eq!(
            multinomial(5, &[2, 2]),
            Err(Error::PartsMismatch { n: 5, sum: 4 })
        );
        for n in 0..15 {
            for k in 0..=n {
                assert_eq!(multinomial(n, &[k, n - k]).unwrap(), binomial(n, k));
            }
        }
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(4, 2), nat(7));
        assert_eq!(stirling2(5, 3), nat(25));
        assert_eq!(stirling2(6, 3), nat(90));
        assert_eq!(stirling2(0, 0), nat(1));
        assert_eq!(stirling2(5, 0), nat(0));
        assert_eq!(stirling2(0, 3), nat(0));
        for n in 0..10 {
            assert_eq!(stirling2(n, n), nat(1));
        }
        assert_eq!(stirling2_explicit(4, 2).unwrap(), nat(7));
        assert_eq!(stirling2_explicit(0, 0).unwrap(), nat(1));
        assert_eq!(stirling2_explicit(6, 3).unwrap(), nat(90));
        assert_eq!(stirling2_howard(4, 2).unwrap(), nat(7));
        assert_eq!(stirling2_howard(3, 3).unwrap(), nat(1));
        assert_eq!(stirling2_howard(5, 2).unwrap(), nat(15));
    }

    #[test]
    fn three_routes_agree() {
        for n in 0..=14 {
            for k in 0..=n {
                let s = stirling2(n, k);
                assert_eq!(stirling2_explicit(n, k).unwrap(), s, "explicit {n} {k}");
                assert_eq!(stirling2_howard(n, k).unwrap(), s, "howard {n} {k}");
            }
        }
    }

    #[test]
    fn table_grows_consistently() {
        let mut t = StirlingTable::new();
        assert_eq!(t.entry(3, 2), nat(3));
        assert_eq!(t.max_n(), 3);
        assert_eq!(t.get(7, 1), None);
        assert_eq!(t.entry(10, 4), nat(34105));
        assert_eq!(t.get(3, 2), Some(nat(3)));
        assert_eq!(t.get(3, 9), Some(nat(0)));
    }

    #[test]
    fn bell_values() {
        assert_eq!(bell(0), nat(1));
        assert_eq!(bell(3), nat(5));
        assert_eq!(bell(4), nat(15));
        for n in 0..=14 {
            assert_eq!(bell(n), bell_triangle(n));
        }
    }

    #[test]
    fn r_stirling_values() {
        assert_eq!(r_stirling(4, 3, 2).unwrap(), nat(5));
        assert_eq!(r_stirling(3, 3, 3).unwrap(), nat(1));
        assert_eq!(r_stirling(3, 2, 3).unwrap(), nat(0));
        assert_eq!(
            r_stirling(2, 1, 3),
            Err(Error::PrefixTooLong { n: 2, r: 3 })
        );
        for n in 1..=12 {
            for k in 0..=n {
                assert_eq!(r_stirling(n, k, 1).unwrap(), stirling2(n, k));
                assert_eq!(r_stirling(n, k, 0).unwrap(), stirling2(n, k));
            }
        }
    }
}
