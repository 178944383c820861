//! Truncated exponential generating functions over exact rationals.
//!
//! A [`Series`] stores `[x^0] .. [x^N]`; coefficients above `N` are unknown
//! and never read. Counts are recovered with [`count_from_series`], which
//! refuses anything that is not a non-negative integer.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bounded::SizeBand;
use crate::error::{Error, Result};
use crate::exact::{factorial, Nat};

/// Exact rational coefficient.
pub type Rat = BigRational;

fn inv_factorial(j: usize) -> Rat {
    Rat::new(BigInt::one(), factorial(j).into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rat>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, Rat::one(), order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::monomial(1, Rat::one(), order)
    }

    /// `c x^j`, which is zero when `j` exceeds the order.
    pub fn monomial(j: usize, c: Rat, order: usize) -> Self {
        let mut s = Self::zero(order);
        if j <= order {
            s.coeffs[j] = c;
        }
        s
    }

    /// Builds a series from `[x^0], [x^1], ...`; an empty list is the zero
    /// series at order 0.
    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Rat::zero());
        }
        Series { coeffs }
    }

    /// `e^x` truncated at `order`.
    pub fn exp(order: usize) -> Self {
        Series {
            coeffs: (0..=order).map(inv_factorial).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> Option<&Rat> {
        self.coeffs.get(j)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        Series {
            coeffs: (0..=order)
                .map(|j| &self.coeffs[j] + &other.coeffs[j])
                .collect(),
        }
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let mut out = Series::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

/// One coefficient per line, as reduced fractions.
impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.coeffs {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// `sum_{a in A, a <= order} x^a / a!`: one block whose size lies in `A`.
pub fn series_block_class(sizes: impl IntoIterator<Item = usize>, order: usize) -> Result<Series> {
    let mut s = Series::zero(order);
    for a in sizes {
        if a == 0 {
            return Err(Error::EmptyBlockClass);
        }
        if a <= order {
            s.coeffs[a] = inv_factorial(a);
        }
    }
    Ok(s)
}

/// `e^x - sum_{j=0}^{upper} x^j / j!`.
pub fn exp_minus_partial(upper: usize, order: usize) -> Series {
    let mut s = Series::exp(order);
    for c in s.coeffs.iter_mut().take(upper + 1) {
        *c = Rat::zero();
    }
    s
}

/// Block class for a size band. An unbounded band is built in the
/// complement form `e^x - sum_{j < lo} x^j / j!`.
pub fn series_band_class(band: SizeBand, order: usize) -> Series {
    match band.hi() {
        None => exp_minus_partial(band.lo() - 1, order),
        Some(hi) => {
            series_block_class(band.lo()..=hi, order).expect("band lower bound is positive")
        }
    }
}

/// `beta(alpha(x))`, truncated at the smaller of the two orders.
pub fn series_compose(beta: &Series, alpha: &Series) -> Result<Series> {
    if !alpha.coeffs[0].is_zero() {
        return Err(Error::NonZeroConstant);
    }
    let order = beta.order().min(alpha.order());
    let alpha = alpha.truncate(order);
    let mut acc = Series::monomial(0, beta.coeffs[order].clone(), order);
    for j in (0..order).rev() {
        acc = &(&acc * &alpha) + &Series::monomial(0, beta.coeffs[j].clone(), order);
    }
    Ok(acc)
}

/// `n! [x^n] s`, which must be a non-negative integer.
pub fn count_from_series(s: &Series, n: usize) -> Result<Nat> {
    let c = s.coeff(n).ok_or(Error::BeyondOrder {
        n,
        order: s.order(),
    })?;
    let scaled = c * Rat::from_integer(factorial(n).into());
    if !scaled.is_integer() || scaled.is_negative() {
        return Err(Error::NotACount { n });
    }
    scaled
        .to_integer()
        .to_biguint()
        .ok_or(Error::NotACount { n })
}

/// Which counting family an assembled EGF enumerates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EgfFamily {
    /// Strict cells `(c_1, ..., c_k)`: `alpha^(sum c) / prod c_i!`.
    Cells(Vec<usize>),
    /// `S(n, k, r)`: `alpha^(r+k-1) / r!`.
    Mixed { k: usize, r: usize },
    /// `{n, k}` under the band, as `beta(alpha)` with `beta = x^k / k!`.
    Stirling { k: usize },
}

/// EGF of `family` with block sizes restricted to `band`.
pub fn egf_mixed(family: &EgfFamily, band: SizeBand, order: usize) -> Result<Series> {
    let alpha = series_band_class(band, order);
    match family {
        EgfFamily::Cells(counts) => {
            let total: usize = counts.iter().sum();
            let denom: Nat = counts.iter().map(|&c| factorial(c)).product();
            Ok(alpha
                .pow(total)
                .scale(&Rat::new(BigInt::one(), denom.into())))
        }
        EgfFamily::Mixed { k, r } => {
            if *k == 0 {
                return Err(Error::NoLabels);
            }
            Ok(alpha.pow(r + k - 1).scale(&inv_factorial(*r)))
        }
        EgfFamily::Stirling { k } => {
            let beta = Series::monomial(*k, inv_factorial(*k), order);
            series_compose(&beta, &alpha)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounded::stirling_bounded;

    fn rat(p: i64, q: i64) -> Rat {
        Rat::new(p.into(), q.into())
    }

    fn poly(cs: &[i64]) -> Series {
        Series::from_coeffs(cs.iter().map(|&c| rat(c, 1)).collect())
    }

    #[test]
    fn arithmetic() {
        let x = Series::x(4);
        assert_eq!(&x * &x, Series::monomial(2, Rat::one(), 4));
        let one_plus_x = &Series::one(4) + &x;
        assert_eq!(one_plus_x.pow(2), poly(&[1, 2, 1, 0, 0]));
        let e1 = exp_minus_partial(0, 4);
        assert_eq!(e1.pow(2).coeff(4), Some(&rat(7, 12)));
        assert_eq!((&poly(&[1, 1]) * &Series::exp(6)).order(), 1);
    }

    #[test]
    fn block_classes() {
        let s = series_block_class([1, 2], 4).unwrap();
        assert_eq!(
            s.coeffs(),
            &[rat(0, 1), rat(1, 1), rat(1, 2), rat(0, 1), rat(0, 1)]
        );
        assert_eq!(
            series_block_class(1..=6, 6).unwrap(),
            exp_minus_partial(0, 6)
        );
        assert_eq!(series_block_class([0, 1], 3), Err(Error::EmptyBlockClass));
        let ge3 = series_band_class(SizeBand::at_least(3).unwrap(), 8);
        assert_eq!(ge3, series_block_class(3..=8, 8).unwrap());
    }

    #[test]
    fn composition() {
        let half_sq = Series::monomial(2, rat(1, 2), 5);
        let e1 = exp_minus_partial(0, 5);
        assert_eq!(
            series_compose(&half_sq, &e1).unwrap().coeff(3),
            Some(&rat(1, 2))
        );
        assert_eq!(series_compose(&Series::x(5), &e1).unwrap(), e1);
        let cube = Series::monomial(3, rat(1, 6), 5);
        assert_eq!(series_compose(&cube, &Series::x(5)).unwrap(), cube);
        assert_eq!(
            series_compose(&cube, &Series::exp(5)),
            Err(Error::NonZeroConstant)
        );
    }

    #[test]
    fn extraction() {
        let s = exp_minus_partial(0, 6).pow(2).scale(&rat(1, 2));
        assert_eq!(count_from_series(&s, 4).unwrap(), Nat::from(7u32));
        let small = series_block_class([1, 2], 6)
            .unwrap()
            .pow(3)
            .scale(&rat(1, 2));
        assert_eq!(count_from_series(&small, 4).unwrap(), Nat::from(18u32));
        assert_eq!(count_from_series(&Series::exp(3), 0).unwrap(), Nat::one());
        assert_eq!(
            count_from_series(&Series::exp(3), 4),
            Err(Error::BeyondOrder { n: 4, order: 3 })
        );
        assert_eq!(
            count_from_series(&Series::monomial(2, rat(1, 3), 3), 2),
            Err(Error::NotACount { n: 2 })
        );
        assert_eq!(
            count_from_series(&Series::monomial(1, rat(-1, 1), 3), 1),
            Err(Error::NotACount { n: 1 })
        );
    }

    #[test]
    fn assembled_families() {
        let any = SizeBand::UNBOUNDED;
        let s = egf_mixed(&EgfFamily::Mixed { k: 2, r: 2 }, any, 6).unwrap();
        assert_eq!(count_from_series(&s, 4).unwrap(), Nat::from(18u32));
        let ge2 = SizeBand::at_least(2).unwrap();
        let s = egf_mixed(&EgfFamily::Mixed { k: 2, r: 2 }, ge2, 6).unwrap();
        assert_eq!(count_from_series(&s, 6).unwrap(), Nat::from(45u32));
        let s = egf_mixed(&EgfFamily::Cells(vec![2, 1]), any, 6).unwrap();
        assert_eq!(count_from_series(&s, 3).unwrap(), Nat::from(3u32));
        for band in [
            any,
            ge2,
            SizeBand::between(2, 3).unwrap(),
            SizeBand::at_most(2).unwrap(),
        ] {
            for k in 0..5 {
                let s = egf_mixed(&EgfFamily::Stirling { k }, band, 12).unwrap();
                for n in 0..=12 {
                    assert_eq!(
                        count_from_series(&s, n).unwrap(),
                        stirling_bounded(n, k, band)
                    );
                }
            }
        }
    }
}
