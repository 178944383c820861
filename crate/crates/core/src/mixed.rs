//! Mixed partition numbers: distinct balls `1..=n` distributed into cells
//! that carry labels, where cells sharing a label are interchangeable.
//!
//! The central family is `S_band(n, k, r)`: `r` cells labelled 1 plus one
//! cell for each of the labels `2..=k`. Several independent algorithms are
//! provided and are expected to agree exactly.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};

use crate::bounded::{BoundedStirlingTable, SizeBand};
use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, multinomial, Nat};

/// Cell multiset `(c_1, ..., c_k)` with a per-label emptiness policy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellSpec {
    counts: Vec<usize>,
    may_be_empty: Vec<bool>,
}

impl CellSpec {
    /// Every cell must be non-empty.
    pub fn strict(counts: impl Into<Vec<usize>>) -> Result<Self> {
        let counts = counts.into();
        let flags = vec![false; counts.len()];
        Self::with_policy(counts, flags)
    }

    /// Every cell may be empty.
    pub fn relaxed(counts: impl Into<Vec<usize>>) -> Result<Self> {
        let counts = counts.into();
        let flags = vec![true; counts.len()];
        Self::with_policy(counts, flags)
    }

    pub fn with_policy(counts: impl Into<Vec<usize>>, may_be_empty: Vec<bool>) -> Result<Self> {
        let counts = counts.into();
        if counts.is_empty() {
            return Err(Error::NoLabels);
        }
        if counts.len() != may_be_empty.len() {
            return Err(Error::PolicyLength {
                counts: counts.len(),
                flags: may_be_empty.len(),
            });
        }
        if may_be_empty.iter().all(|f| !f) && counts.iter().sum::<usize>() == 0 {
            return Err(Error::NoCells);
        }
        Ok(CellSpec {
            counts,
            may_be_empty,
        })
    }

    /// `r` cells labelled 1 and one cell for each label `2..=k`, all strict.
    pub fn mixed(k: usize, r: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::NoLabels);
        }
        let mut counts = vec![1; k];
        counts[0] = r;
        Self::strict(counts)
    }

    /// Returns a copy with label `label` (0-based) allowed to be empty.
    pub fn allow_empty(mut self, label: usize) -> Self {
        if let Some(flag) = self.may_be_empty.get_mut(label) {
            *flag = true;
        }
        self
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn may_be_empty(&self) -> &[bool] {
        &self.may_be_empty
    }

    pub fn labels(&self) -> usize {
        self.counts.len()
    }

    pub fn total_cells(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn is_strict(&self) -> bool {
        self.may_be_empty.iter().all(|f| !f)
    }
}

/// Parameters of `S_band(n, k, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MixedParams {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub band: SizeBand,
}

impl MixedParams {
    pub fn new(n: usize, k: usize, r: usize, band: SizeBand) -> Result<Self> {
        if k == 0 {
            return Err(Error::NoLabels);
        }
        Ok(MixedParams { n, k, r, band })
    }

    pub fn unbounded(n: usize, k: usize, r: usize) -> Result<Self> {
        Self::new(n, k, r, SizeBand::UNBOUNDED)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MixedAlgorithm {
    /// `(k-1)! C(k+r-1, k-1) {n, k+r-1}_band`.
    ClosedForm,
    /// Split off the elements of the label-1 cells, fill the rest.
    Convolution,
    /// Condition on the cell of element `n` and its companions.
    ElementRecurrence,
    /// Singleton / grow-an-existing-block recurrence with the overflow
    /// correction; see [`s_mixed_three_case`].
    ThreeCase,
}

impl MixedAlgorithm {
    pub const ALL: [MixedAlgorithm; 4] = [
        MixedAlgorithm::ClosedForm,
        MixedAlgorithm::Convolution,
        MixedAlgorithm::ElementRecurrence,
        MixedAlgorithm::ThreeCase,
    ];
}

/// Strict count by the multinomial convolution over label sizes
/// `(l_1, ..., l_k)`.
pub fn mixed_count_convolution(n: usize, counts: &[usize], band: SizeBand) -> Nat {
    let mut table = BoundedStirlingTable::new(band);
    table.grow(n);
    let mut sizes = Vec::with_capacity(counts.len());
    convolve(n, counts, &mut table, &mut sizes)
}

fn convolve(
    remaining: usize,
    counts: &[usize],
    table: &mut BoundedStirlingTable,
    sizes: &mut Vec<usize>,
) -> Nat {
    match counts.split_first() {
        None => {
            if remaining != 0 {
                return Nat::zero();
            }
            // Group sizes sum to the original n by construction.
            let n = sizes.iter().sum();
            multinomial(n, sizes).expect("sizes sum to n")
        }
        Some((&c, rest)) => {
            let mut acc = Nat::zero();
            for size in 0..=remaining {
                let ways = table.entry(size, c);
                if ways.is_zero() {
                    continue;
                }
                sizes.push(size);
                let tail = convolve(remaining - size, rest, table, sizes);
                sizes.pop();
                acc += ways * tail;
            }
            acc
        }
    }
}

/// Strict count by the collapsed form
/// `multinomial(sum c; c_1..c_k) {n, sum c}_band`.
pub fn mixed_count_collapsed(n: usize, counts: &[usize], band: SizeBand) -> Nat {
    let total: usize = counts.iter().sum();
    if total > n {
        return Nat::zero();
    }
    let mut table = BoundedStirlingTable::new(band);
    collapsed_with(n, counts, &mut table)
}

fn collapsed_with(n: usize, counts: &[usize], table: &mut BoundedStirlingTable) -> Nat {
    let total: usize = counts.iter().sum();
    if total > n {
        return Nat::zero();
    }
    let ways = table.entry(n, total);
    if ways.is_zero() {
        return ways;
    }
    multinomial(total, counts).expect("counts sum to total") * ways
}

/// Partitions of `[n]` into the cells of a strict `spec`, block sizes in
/// `band`. Computed by the convolution and the collapsed form; a mismatch
/// is reported as an error.
pub fn mixed_count(n: usize, spec: &CellSpec, band: SizeBand) -> Result<Nat> {
    if let Some(label) = spec.may_be_empty.iter().position(|&f| f) {
        return Err(Error::RelaxedLabel(label + 1));
    }
    let conv = mixed_count_convolution(n, &spec.counts, band);
    let collapsed = mixed_count_collapsed(n, &spec.counts, band);
    if conv != collapsed {
        return Err(Error::Disagreement(
            "mixed count: convolution vs collapsed form",
        ));
    }
    Ok(conv)
}

/// Count where labels flagged may-be-empty use any number `0..=c_i` of
/// their cells; strict labels use all of theirs.
pub fn mixed_count_relaxed(n: usize, spec: &CellSpec, band: SizeBand) -> Nat {
    let mut table = BoundedStirlingTable::new(band);
    table.grow(n);
    let mut used = spec.counts.clone();
    relaxed_sum(n, spec, 0, &mut used, &mut table)
}

fn relaxed_sum(
    n: usize,
    spec: &CellSpec,
    label: usize,
    used: &mut Vec<usize>,
    table: &mut BoundedStirlingTable,
) -> Nat {
    if label == spec.counts.len() {
        return collapsed_with(n, used, table);
    }
    if !spec.may_be_empty[label] {
        return relaxed_sum(n, spec, label + 1, used, table);
    }
    let mut acc = Nat::zero();
    for j in 0..=spec.counts[label] {
        used[label] = j;
        acc += relaxed_sum(n, spec, label + 1, used, table);
    }
    used[label] = spec.counts[label];
    acc
}

/// `S_band(n, k, r)` by the selected algorithm.
pub fn s_mixed(p: MixedParams, algorithm: MixedAlgorithm) -> Nat {
    match algorithm {
        MixedAlgorithm::ClosedForm => closed_form(p),
        MixedAlgorithm::Convolution => convolution(p),
        MixedAlgorithm::ElementRecurrence => MixedGrid::element_recurrence(p).value(p),
        MixedAlgorithm::ThreeCase => s_mixed_three_case(p),
    }
}

fn closed_form(p: MixedParams) -> Nat {
    let blocks = p.k + p.r - 1;
    if blocks > p.n {
        return Nat::zero();
    }
    let ways = BoundedStirlingTable::new(p.band).entry(p.n, blocks);
    factorial(p.k - 1) * binomial(blocks, p.k - 1) * ways
}

fn convolution(p: MixedParams) -> Nat {
    let mut table = BoundedStirlingTable::new(p.band);
    table.grow(p.n);
    let ordered = factorial(p.k - 1);
    let mut acc = Nat::zero();
    for i in 0..=p.n {
        let first = table.entry(i, p.r);
        if first.is_zero() {
            continue;
        }
        let rest = table.entry(p.n - i, p.k - 1);
        if rest.is_zero() {
            continue;
        }
        acc += binomial(p.n, i) * first * rest;
    }
    acc * ordered
}

/// `S_band(n, k, r)` by conditioning on the block of element `n`:
/// it is either a single-element block (labelled 1 or not), or it was
/// added to a block of a partition of `[n-1]`, minus the additions that
/// overflow a block of size `hi`. Valid for every band; reduces to the
/// restricted and associated three-case recurrences.
pub fn s_mixed_three_case(p: MixedParams) -> Nat {
    MixedGrid::three_case(p).value(p)
}

/// `S` values for all `n' <= n`, `1 <= k' <= k`, `r' <= r` under one band.
struct MixedGrid {
    k: usize,
    r: usize,
    values: Vec<Nat>,
}

impl MixedGrid {
    fn index(&self, n: usize, k: usize, r: usize) -> usize {
        (n * (self.k + 1) + k) * (self.r + 1) + r
    }

    fn at(&self, n: usize, k: usize, r: usize) -> &Nat {
        &self.values[self.index(n, k, r)]
    }

    fn value(&self, p: MixedParams) -> Nat {
        self.at(p.n, p.k, p.r).clone()
    }

    fn build(p: MixedParams, mut step: impl FnMut(&MixedGrid, usize, usize, usize) -> Nat) -> Self {
        let mut grid = MixedGrid {
            k: p.k,
            r: p.r,
            values: vec![Nat::zero(); (p.n + 1) * (p.k + 1) * (p.r + 1)],
        };
        let base = grid.index(0, 1, 0);
        grid.values[base] = Nat::one();
        for n in 1..=p.n {
            for k in 1..=p.k {
                for r in 0..=p.r {
                    let v = step(&grid, n, k, r);
                    let idx = grid.index(n, k, r);
                    grid.values[idx] = v;
                }
            }
        }
        grid
    }

    fn element_recurrence(p: MixedParams) -> Self {
        let band = p.band;
        Self::build(p, |g, n, k, r| {
            let mut acc = Nat::zero();
            for i in band.lo() - 1..band.hi_within(n) {
                let rest = n - 1 - i;
                let mut inner = Nat::zero();
                if k >= 2 {
                    inner += g.at(rest, k - 1, r) * (k - 1);
                }
                if r >= 1 {
                    inner += g.at(rest, k, r - 1);
                }
                if !inner.is_zero() {
                    acc += binomial(n - 1, i) * inner;
                }
            }
            acc
        })
    }

    fn three_case(p: MixedParams) -> Self {
        let band = p.band;
        let lo = band.lo();
        Self::build(p, |g, n, k, r| {
            // Removing n leaves a block of size in band, or n's block is
            // exactly of the minimum size.
            let through = |rest: usize| {
                let mut v = Nat::zero();
                if r >= 1 {
                    v += g.at(rest, k, r - 1);
                }
                if k >= 2 {
                    v += g.at(rest, k - 1, r) * (k - 1);
                }
                v
            };
            let mut total = BigInt::from_biguint(Sign::Plus, g.at(n - 1, k, r) * (k + r - 1));
            if n >= lo {
                total +=
                    BigInt::from_biguint(Sign::Plus, binomial(n - 1, lo - 1) * through(n - lo));
            }
            if let Some(hi) = band.hi() {
                if n > hi {
                    total -=
                        BigInt::from_biguint(Sign::Plus, binomial(n - 1, hi) * through(n - 1 - hi));
                }
            }
            total
                .to_biguint()
                .expect("overflow correction never exceeds the uncorrected count")
        })
    }
}

/// Relaxed count with `r` cells labelled 1 and one cell for each label
/// `2..=k`, every cell allowed to be empty, no size bound.
pub fn mixed_bell(n: usize, k: usize, r: usize) -> Result<Nat> {
    if k == 0 {
        return Err(Error::NoLabels);
    }
    let mut counts = vec![1; k];
    counts[0] = r;
    let spec = CellSpec::relaxed(counts)?;
    Ok(mixed_count_relaxed(n, &spec, SizeBand::UNBOUNDED))
}

/// r-Stirling number through mixed Stirling numbers:
/// `{n, k}_r = sum_{i=0}^{k} C(r, i) S(n-r, i+1, k-r)`.
pub fn r_stirling_via_mixed(n: usize, k: usize, r: usize) -> Result<Nat> {
    if r > k || k > n {
        return Err(Error::RStirlingRange { n, k, r });
    }
    let mut acc = Nat::zero();
    for i in 0..=k.min(r) {
        let p = MixedParams::unbounded(n - r, i + 1, k - r)?;
        acc += binomial(r, i) * closed_form(p);
    }
    Ok(acc)
}
