//! Brute-force enumeration of labelled-cell set partitions.
//!
//! Set partitions of `[n]` are generated as restricted growth strings
//! (blocks numbered by their minimum), pruned by the size band and the
//! number of available cells. Each partition is then labelled in every
//! admissible way. Cells sharing a label are unordered, so a labelling is
//! just a label per block; nothing needs deduplicating afterwards.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bounded::SizeBand;
use crate::error::{Error, Result};
use crate::exact::Nat;
use crate::mixed::CellSpec;

/// Largest `n` accepted without an explicit override.
pub const DEFAULT_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OracleQuery {
    pub n: usize,
    pub spec: CellSpec,
    pub band: SizeBand,
    /// Elements `1..=distinct_prefix` must lie in pairwise distinct cells.
    pub distinct_prefix: usize,
    pub cap: usize,
}

impl OracleQuery {
    pub fn new(n: usize, spec: CellSpec) -> Self {
        OracleQuery {
            n,
            spec,
            band: SizeBand::UNBOUNDED,
            distinct_prefix: 0,
            cap: DEFAULT_CAP,
        }
    }

    pub fn band(mut self, band: SizeBand) -> Self {
        self.band = band;
        self
    }

    pub fn distinct_prefix(mut self, prefix: usize) -> Self {
        self.distinct_prefix = prefix;
        self
    }

    /// Raises (or lowers) the size cap.
    pub fn cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.n > self.cap {
            return Err(Error::AboveCap {
                n: self.n,
                cap: self.cap,
            });
        }
        if self.distinct_prefix > self.n {
            return Err(Error::PrefixBeyondN {
                n: self.n,
                prefix: self.distinct_prefix,
            });
        }
        Ok(())
    }
}

/// A counted configuration. `cells[i]` lists the non-empty cells carrying
/// label `i + 1`, each as its sorted elements (1-based), cells ordered by
/// their minimum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub cells: Vec<Vec<Vec<usize>>>,
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, label) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            if label.is_empty() {
                f.write_str("-")?;
            }
            for cell in label {
                f.write_str("{")?;
                for (j, e) in cell.iter().enumerate() {
                    if j > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{e}")?;
                }
                f.write_str("}")?;
            }
        }
        Ok(())
    }
}

pub fn oracle_count(q: &OracleQuery) -> Result<Nat> {
    q.validate()?;
    let mut count: u64 = 0;
    Walker::new(q).run(&mut |_: &[usize], _: &[usize]| count += 1);
    Ok(Nat::from(count))
}

/// Every configuration, in canonical order: partitions in restricted
/// growth string order, then labellings in lexicographic order.
pub fn oracle_enumerate(q: &OracleQuery) -> Result<Vec<Configuration>> {
    let mut out = Vec::new();
    oracle_visit(q, |c| out.push(c.clone()))?;
    Ok(out)
}

/// Streams configurations to `visit` without storing them.
pub fn oracle_visit(q: &OracleQuery, mut visit: impl FnMut(&Configuration)) -> Result<()> {
    q.validate()?;
    let labels = q.spec.labels();
    Walker::new(q).run(&mut |block_of: &[usize], label_of: &[usize]| {
        let mut cells = vec![Vec::<Vec<usize>>::new(); labels];
        // Blocks are numbered by first appearance, so visiting blocks in
        // order keeps each label's cells sorted by minimum.
        let mut slot = vec![usize::MAX; label_of.len()];
        for (e, &b) in block_of.iter().enumerate() {
            let label = &mut cells[label_of[b]];
            if slot[b] == usize::MAX {
                slot[b] = label.len();
                label.push(Vec::new());
            }
            label[slot[b]].push(e + 1);
        }
        visit(&Configuration { cells });
    });
    Ok(())
}

struct Walker<'a> {
    n: usize,
    band: SizeBand,
    prefix: usize,
    counts: &'a [usize],
    empty_ok: &'a [bool],
    max_blocks: usize,
    min_blocks: usize,
    block_of: Vec<usize>,
    sizes: Vec<usize>,
    label_of: Vec<usize>,
    used: Vec<usize>,
}

impl<'a> Walker<'a> {
    fn new(q: &'a OracleQuery) -> Self {
        let counts = q.spec.counts();
        let empty_ok = q.spec.may_be_empty();
        let min_blocks = counts
            .iter()
            .zip(empty_ok)
            .filter(|(_, &empty_ok)| !empty_ok)
            .map(|(c, _)| c)
            .sum();
        Walker {
            n: q.n,
            band: q.band,
            prefix: q.distinct_prefix,
            counts,
            empty_ok,
            max_blocks: q.spec.total_cells(),
            min_blocks,
            block_of: vec![0; q.n],
            sizes: Vec::new(),
            label_of: Vec::new(),
            used: vec![0; counts.len()],
        }
    }

    fn run(mut self, emit: &mut dyn FnMut(&[usize], &[usize])) {
        self.place(0, emit);
    }

    // Lower bound on the elements still needed to satisfy the band and the
    // number of compulsory cells.
    fn still_needed(&self) -> usize {
        let lo = self.band.lo();
        let deficit: usize = self.sizes.iter().map(|&s| lo.saturating_sub(s)).sum();
        deficit + self.min_blocks.saturating_sub(self.sizes.len()) * lo
    }

    fn place(&mut self, e: usize, emit: &mut dyn FnMut(&[usize], &[usize])) {
        if e == self.n {
            if self.still_needed() == 0 {
                self.label(0, emit);
            }
            return;
        }
        let open = self.sizes.len();
        let first = if e < self.prefix { open } else { 0 };
        for b in first..=open {
            if b == open {
                if open == self.max_blocks {
                    break;
                }
                self.sizes.push(0);
            }
            if self.band.hi().is_some_and(|h| self.sizes[b] >= h) {
                continue;
            }
            self.sizes[b] += 1;
            self.block_of[e] = b;
            if self.still_needed() < self.n - e {
                self.place(e + 1, emit);
            }
            self.sizes[b] -= 1;
            if b == open {
                self.sizes.pop();
            }
        }
    }

    fn label(&mut self, b: usize, emit: &mut dyn FnMut(&[usize], &[usize])) {
        let blocks = self.sizes.len();
        if b == blocks {
            let complete =
                (0..self.counts.len()).all(|i| self.empty_ok[i] || self.used[i] == self.counts[i]);
            if complete {
                emit(&self.block_of, &self.label_of);
            }
            return;
        }
        let owed: usize = (0..self.counts.len())
            .filter(|&i| !self.empty_ok[i])
            .map(|i| self.counts[i] - self.used[i])
            .sum();
        if owed > blocks - b {
            return;
        }
        for i in 0..self.counts.len() {
            if self.used[i] == self.counts[i] {
                continue;
            }
            self.used[i] += 1;
            self.label_of.push(i);
            self.label(b + 1, emit);
            self.label_of.pop();
            self.used[i] -= 1;
        }
    }
}
