use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{domain, Result};

/// Which Stirling numbers a triangle holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Kind {
    /// Unsigned first kind: permutations of `n` elements with `k` cycles.
    First,
    /// Second kind: partitions of an `n`-set into `k` blocks.
    Second,
}

pub const DEFAULT_N_MAX: usize = 2000;

/// Rows kept permanently while rolling the recurrence forward.
const CHECKPOINT: usize = 128;

/// Lazily computed rows of a Stirling triangle.
///
/// Row `n` is stored as `c(n, 0..=n)`; `c(n, 0) = 0` for `n >= 1`. Rows are
/// shared through `Arc`, and requesting row `n` rolls the recurrence forward
/// from the nearest cached row below it.
pub struct StirlingTriangle {
    kind: Kind,
    n_max: AtomicUsize,
    rows: spin::RwLock<BTreeMap<usize, Arc<[BigUint]>>>,
}

impl StirlingTriangle {
    pub fn new(kind: Kind, n_max: usize) -> Self {
        let mut rows = BTreeMap::new();
        let zero_row: Arc<[BigUint]> = Arc::from(vec![BigUint::one()]);
        rows.insert(0, zero_row);
        StirlingTriangle {
            kind,
            n_max: AtomicUsize::new(n_max),
            rows: spin::RwLock::new(rows),
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n_max(&self) -> usize {
        self.n_max.load(Ordering::Relaxed)
    }

    pub fn set_n_max(&self, n_max: usize) {
        self.n_max.store(n_max, Ordering::Relaxed);
    }

    /// Row `n` as `c(n, 0..=n)`.
    pub fn row(&self, n: usize) -> Result<Arc<[BigUint]>> {
        if n > self.n_max() {
            return Err(domain!("row {n} exceeds the triangle bound {}", self.n_max()));
        }
        let (start, mut row) = {
            let rows = self.rows.read();
            if let Some(r) = rows.get(&n) {
                return Ok(r.clone());
            }
            let (&m, r) = rows.range(..n).next_back().expect("row 0 is always cached");
            (m, r.to_vec())
        };
        let mut fresh = Vec::new();
        for m in start..n {
            row = self.next_row(m, &row);
            if (m + 1) % CHECKPOINT == 0 && m + 1 != n {
                fresh.push((m + 1, Arc::<[BigUint]>::from(row.clone())));
            }
        }
        let row: Arc<[BigUint]> = Arc::from(row);
        let mut rows = self.rows.write();
        for (m, r) in fresh {
            rows.entry(m).or_insert(r);
        }
        Ok(rows.entry(n).or_insert(row).clone())
    }

    /// `c(m+1, .)` from `c(m, .)`.
    fn next_row(&self, m: usize, prev: &[BigUint]) -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); m + 2];
        for k in 1..=m + 1 {
            let left = &prev[k - 1];
            let mut v = left.clone();
            if k <= m {
                let mult = match self.kind {
                    Kind::First => m,
                    Kind::Second => k,
                };
                v += &prev[k] * BigUint::from(mult);
            }
            out[k] = v;
        }
        out
    }

    pub fn get(&self, n: usize, k: usize) -> Result<BigUint> {
        if n < 1 || k < 1 || k > n {
            return Err(domain!("stirling({n}, {k}) requires 1 <= k <= n"));
        }
        Ok(self.row(n)?[k].clone())
    }

    /// Drops every cached row except row 0.
    pub fn clear(&self) {
        self.rows.write().retain(|&k, _| k == 0);
    }
}

static FIRST: spin::Lazy<StirlingTriangle> =
    spin::Lazy::new(|| StirlingTriangle::new(Kind::First, DEFAULT_N_MAX));
static SECOND: spin::Lazy<StirlingTriangle> =
    spin::Lazy::new(|| StirlingTriangle::new(Kind::Second, DEFAULT_N_MAX));

/// The process-wide triangle of the given kind.
pub fn triangle(kind: Kind) -> &'static StirlingTriangle {
    match kind {
        Kind::First => &FIRST,
        Kind::Second => &SECOND,
    }
}

/// Changes the row bound of both shared triangles.
pub fn set_n_max(n_max: usize) {
    FIRST.set_n_max(n_max);
    SECOND.set_n_max(n_max);
}

pub fn stirling(kind: Kind, n: usize, k: usize) -> Result<BigUint> {
    triangle(kind).get(n, k)
}

pub fn bell(n: usize) -> Result<BigUint> {
    if n < 1 {
        return Err(domain!("bell({n}) requires n >= 1"));
    }
    Ok(triangle(Kind::Second).row(n)?.iter().sum())
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}
