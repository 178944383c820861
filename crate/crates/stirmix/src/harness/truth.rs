//! Ground-truth counts from the brute-force oracle, memoized per run.

use std::collections::HashMap;
use std::sync::Mutex;

use stirmix_core::oracle::oracle_count;
use stirmix_core::{CellSpec, Nat, OracleQuery, SizeBand};

/// Shared oracle cache. Entries are inserted only once fully computed, so
/// concurrent readers never observe a partial value.
pub struct Truth {
    cap: usize,
    cache: Mutex<HashMap<OracleQuery, Nat>>,
}

pub type Eval<T> = Result<T, String>;

impl Truth {
    pub fn new(cap: usize) -> Self {
        Truth {
            cap,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn count(&self, q: OracleQuery) -> Eval<Nat> {
        let q = q.cap(self.cap);
        if let Some(v) = self.cache.lock().expect("oracle cache poisoned").get(&q) {
            return Ok(v.clone());
        }
        let v = oracle_count(&q).map_err(|e| e.to_string())?;
        self.cache
            .lock()
            .expect("oracle cache poisoned")
            .insert(q, v.clone());
        Ok(v)
    }

    /// `{n, k}` under `band`.
    pub fn stirling(&self, n: usize, k: usize, band: SizeBand) -> Eval<Nat> {
        if k == 0 || k > n {
            return Ok(empty(n, k));
        }
        self.count(OracleQuery::new(n, strict(vec![k])?).band(band))
    }

    /// `S_band(n, k, r)`.
    pub fn mixed(&self, n: usize, k: usize, r: usize, band: SizeBand) -> Eval<Nat> {
        if k == 0 {
            return Err("S(n, k, r) needs k >= 1".into());
        }
        if k + r - 1 == 0 || k + r - 1 > n {
            return Ok(empty(n, k + r - 1));
        }
        let spec = CellSpec::mixed(k, r).map_err(|e| e.to_string())?;
        self.count(OracleQuery::new(n, spec).band(band))
    }

    /// Strict count for an arbitrary cell multiset.
    pub fn cells(&self, n: usize, counts: &[usize], band: SizeBand) -> Eval<Nat> {
        let total: usize = counts.iter().sum();
        if total == 0 || total > n {
            return Ok(empty(n, total));
        }
        self.count(OracleQuery::new(n, strict(counts.to_vec())?).band(band))
    }

    pub fn relaxed(&self, n: usize, spec: CellSpec, band: SizeBand) -> Eval<Nat> {
        self.count(OracleQuery::new(n, spec).band(band))
    }

    /// Partitions of `[n]` into `k` blocks with `1..=r` separated.
    pub fn r_stirling(&self, n: usize, k: usize, r: usize) -> Eval<Nat> {
        if k == 0 || k > n {
            return Ok(empty(n, k));
        }
        self.count(OracleQuery::new(n, strict(vec![k])?).distinct_prefix(r))
    }
}

fn strict(counts: Vec<usize>) -> Eval<CellSpec> {
    CellSpec::strict(counts).map_err(|e| e.to_string())
}

// No cells: one (empty) partition of the empty set, nothing otherwise.
fn empty(n: usize, cells: usize) -> Nat {
    Nat::from((n == 0 && cells == 0) as u8)
}
