//! Stirling numbers of the second kind with block sizes confined to an
//! interval: restricted (`<= m`), associated (`>= l`) and doubly bounded.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, Nat};

/// Allowed block sizes `lo..=hi`, with `hi = None` meaning no upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SizeBand {
    lo: usize,
    hi: Option<usize>,
}

impl Default for SizeBand {
    fn default() -> Self {
        Self::UNBOUNDED
    }
}

impl SizeBand {
    pub const UNBOUNDED: SizeBand = SizeBand { lo: 1, hi: None };

    pub fn new(lo: usize, hi: Option<usize>) -> Result<Self> {
        if lo == 0 || hi.is_some_and(|h| h < lo) {
            return Err(Error::InvalidBand { lo, hi });
        }
        Ok(SizeBand { lo, hi })
    }

    pub fn at_most(m: usize) -> Result<Self> {
        Self::new(1, Some(m))
    }

    pub fn at_least(l: usize) -> Result<Self> {
        Self::new(l, None)
    }

    pub fn between(l: usize, m: usize) -> Result<Self> {
        Self::new(l, Some(m))
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> Option<usize> {
        self.hi
    }

    pub fn is_unbounded(&self) -> bool {
        self.lo == 1 && self.hi.is_none()
    }

    pub fn contains(&self, size: usize) -> bool {
        size >= self.lo && self.hi.is_none_or(|h| size <= h)
    }

    /// Largest admissible size among `0..=n`.
    pub fn hi_within(&self, n: usize) -> usize {
        self.hi.map_or(n, |h| h.min(n))
    }
}

impl fmt::Display for SizeBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lo, self.hi) {
            (1, None) => f.write_str("any"),
            (1, Some(m)) => write!(f, "<={m}"),
            (l, None) => write!(f, ">={l}"),
            (l, Some(m)) => write!(f, "[{l},{m}]"),
        }
    }
}

/// Memoized `{n, k}` restricted to one size band.
///
/// Built by the element-`n` recurrence: the block holding the largest
/// element takes `i` companions from the other `n - 1` elements,
/// `T(n, k) = sum_{i = lo-1}^{hi-1} C(n-1, i) T(n-1-i, k-1)`.
#[derive(Debug, Clone)]
pub struct BoundedStirlingTable {
    band: SizeBand,
    rows: Vec<Vec<Nat>>,
}

impl BoundedStirlingTable {
    pub fn new(band: SizeBand) -> Self {
        BoundedStirlingTable {
            band,
            rows: vec![vec![Nat::one()]],
        }
    }

    pub fn band(&self) -> SizeBand {
        self.band
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn grow(&mut self, max_n: usize) {
        while self.rows.len() <= max_n {
            let n = self.rows.len();
            let mut row = vec![Nat::zero(); n + 1];
            let lo = self.band.lo - 1;
            let hi = self.band.hi_within(n) - 1;
            for (k, slot) in row.iter_mut().enumerate().skip(1) {
                let mut acc = Nat::zero();
                for i in lo..=hi {
                    let rest = &self.rows[n - 1 - i];
                    if let Some(v) = rest.get(k - 1) {
                        if !v.is_zero() {
                            acc += binomial(n - 1, i) * v;
                        }
                    }
                }
                *slot = acc;
            }
            self.rows.push(row);
        }
    }

    pub fn entry(&mut self, n: usize, k: usize) -> Nat {
        if k > n {
            return Nat::zero();
        }
        self.grow(n);
        self.rows[n][k].clone()
    }

    pub fn row(&mut self, n: usize) -> &[Nat] {
        self.grow(n);
        &self.rows[n]
    }
}

/// Partitions of `[n]` into `k` blocks whose sizes lie in `band`.
pub fn stirling_bounded(n: usize, k: usize, band: SizeBand) -> Nat {
    if k > n {
        return Nat::zero();
    }
    BoundedStirlingTable::new(band).entry(n, k)
}

/// `{n, k}` with every block of size at most `m`.
pub fn stirling_le(n: usize, k: usize, m: usize) -> Nat {
    match SizeBand::at_most(m) {
        Ok(band) => stirling_bounded(n, k, band),
        // m = 0 admits no block at all.
        Err(_) => Nat::from((n == 0 && k == 0) as u8),
    }
}

/// `{n, k}` with every block of size at least `l`.
pub fn stirling_ge(n: usize, k: usize, l: usize) -> Nat {
    stirling_bounded(
        n,
        k,
        SizeBand {
            lo: l.max(1),
            hi: None,
        },
    )
}

/// `{n, k}` with block sizes in `l..=m`.
pub fn stirling_band(n: usize, k: usize, l: usize, m: usize) -> Result<Nat> {
    Ok(stirling_bounded(n, k, SizeBand::between(l, m)?))
}

/// Restricted Bell number: all partitions of `[n]` with blocks of size `<= m`.
pub fn bell_le(n: usize, m: usize) -> Nat {
    match SizeBand::at_most(m) {
        Ok(band) => BoundedStirlingTable::new(band).row(n).iter().sum(),
        Err(_) => Nat::from((n == 0) as u8),
    }
}

/// `sum_{i=1}^{k} {n, i}_{<= m}`.
pub fn stirling_le_cumulative(n: usize, k: usize, m: usize) -> Nat {
    (1..=k).map(|i| stirling_le(n, i, m)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{bell, stirling2};

    fn nat(v: u64) -> Nat {
        Nat::from(v)
    }

    #[test]
    fn band_validation() {
        assert!(SizeBand::new(0, None).is_err());
        assert_eq!(
            SizeBand::between(3, 2),
            Err(Error::InvalidBand { lo: 3, hi: Some(2) })
        );
        assert!(SizeBand::at_most(0).is_err());
        let b = SizeBand::between(2, 3).unwrap();
        assert!(b.contains(2) && b.contains(3));
        assert!(!b.contains(1) && !b.contains(4));
        assert!(SizeBand::UNBOUNDED.contains(1000));
        assert_eq!(alloc::format!("{b}"), "[2,3]");
    }

    #[test]
    fn restricted_values() {
        assert_eq!(stirling_le(4, 2, 2), nat(3));
        assert_eq!(stirling_le(6, 3, 2), nat(15));
        assert_eq!(stirling_le(4, 3, 2), nat(6));
        assert_eq!(stirling_le(0, 0, 3), nat(1));
        assert_eq!(stirling_le(3, 0, 3), nat(0));
        for n in 0..9 {
            for k in 0..=n {
                assert_eq!(stirling_le(n, k, n.max(1)), stirling2(n, k));
            }
        }
    }

    #[test]
    fn associated_values() {
        assert_eq!(stirling_ge(5, 2, 2), nat(10));
        assert_eq!(stirling_ge(4, 3, 2), nat(0));
        assert_eq!(stirling_ge(6, 2, 2), nat(25));
        for n in 0..9 {
            for k in 0..=n {
                assert_eq!(stirling_ge(n, k, 1), stirling2(n, k));
            }
        }
    }

    #[test]
    fn band_values() {
        assert_eq!(stirling_band(4, 2, 2, 2).unwrap(), nat(3));
        assert_eq!(stirling_band(6, 2, 2, 4).unwrap(), nat(25));
        assert_eq!(
            stirling_band(5, 2, 3, 2),
            Err(Error::InvalidBand { lo: 3, hi: Some(2) })
        );
        for n in 0..9 {
            for k in 0..=n {
                for m in 1..=n {
                    assert_eq!(stirling_band(n, k, 1, m).unwrap(), stirling_le(n, k, m));
                }
            }
        }
    }

    #[test]
    fn support_is_an_interval() {
        for l in 1..=3 {
            for m in l..=5 {
                let band = SizeBand::between(l, m).unwrap();
                let mut table = BoundedStirlingTable::new(band);
                for n in 0..=12 {
                    for k in 0..=n {
                        let v = table.entry(n, k);
                        let feasible = k * l <= n && n <= k * m;
                        assert_eq!(!v.is_zero(), feasible, "{band} n={n} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn bell_sums() {
        assert_eq!(bell_le(3, 2), nat(4));
        assert_eq!(bell_le(4, 1), nat(1));
        for n in 0..10 {
            assert_eq!(bell_le(n, n.max(1)), bell(n));
        }
        assert_eq!(stirling_le_cumulative(3, 3, 3), nat(5));
        assert_eq!(stirling_le_cumulative(3, 1, 2), nat(0));
        assert_eq!(stirling_le_cumulative(4, 2, 2), nat(3));
    }
}
