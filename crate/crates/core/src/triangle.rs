//! Lower-triangular integer tables and factorials.

use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangleKind {
    Pascal,
    Stirling2,
    Stirling1Unsigned,
    Entringer,
}

/// Rows `0..=n`, row `i` holding entries `0..=i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleTable {
    kind: TriangleKind,
    rows: Vec<Vec<BigInt>>,
}

impl TriangleTable {
    pub fn kind(&self) -> TriangleKind {
        self.kind
    }

    /// Number of rows held.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Entry `(n, k)`; zero above the diagonal. Panics if `n` is past the
    /// last row.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.rows[n].get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn entry(&self, n: usize, k: usize) -> Option<&BigInt> {
        self.rows.get(n).and_then(|r| r.get(k))
    }
}

fn build(
    kind: TriangleKind,
    n: usize,
    mut next: impl FnMut(&[BigInt], usize) -> Vec<BigInt>,
) -> TriangleTable {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    rows.push(vec![BigInt::one()]);
    for i in 1..=n {
        let row = next(&rows[i - 1], i);
        rows.push(row);
    }
    TriangleTable { kind, rows }
}

/// Binomial coefficients `C(n, h)` for rows `0..=n`.
pub fn pascal_table(n: usize) -> TriangleTable {
    build(TriangleKind::Pascal, n, |prev, i| {
        (0..=i)
            .map(|h| {
                let left = if h > 0 { prev[h - 1].clone() } else { BigInt::zero() };
                let right = prev.get(h).cloned().unwrap_or_default();
                left + right
            })
            .collect()
    })
}

/// Stirling numbers of the second kind, `S2(n,k) = k S2(n-1,k) + S2(n-1,k-1)`.
pub fn stirling2_table(n: usize) -> TriangleTable {
    build(TriangleKind::Stirling2, n, |prev, i| {
        (0..=i)
            .map(|k| {
                let left = if k > 0 { prev[k - 1].clone() } else { BigInt::zero() };
                let right = prev.get(k).map(|v| v * k).unwrap_or_default();
                left + right
            })
            .collect()
    })
}

/// Unsigned Stirling numbers of the first kind,
/// `c(n,k) = (n-1) c(n-1,k) + c(n-1,k-1)`.
pub fn stirling1_unsigned_table(n: usize) -> TriangleTable {
    build(TriangleKind::Stirling1Unsigned, n, |prev, i| {
        (0..=i)
            .map(|k| {
                let left = if k > 0 { prev[k - 1].clone() } else { BigInt::zero() };
                let right = prev.get(k).map(|v| v * (i - 1)).unwrap_or_default();
                left + right
            })
            .collect()
    })
}

/// Entringer numbers filled in boustrophedon order:
/// `E(0,0) = 1`, `E(n,0) = 0`, `E(n,k) = E(n,k-1) + E(n-1,n-k)`.
pub fn entringer_table(n: usize) -> TriangleTable {
    build(TriangleKind::Entringer, n, |prev, i| {
        let mut row = Vec::with_capacity(i + 1);
        row.push(BigInt::zero());
        for k in 1..=i {
            let v = &row[k - 1] + &prev[i - k];
            row.push(v);
        }
        row
    })
}

fn pascal_cache() -> &'static RwLock<Arc<TriangleTable>> {
    static CACHE: OnceLock<RwLock<Arc<TriangleTable>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(Arc::new(pascal_table(64))))
}

/// Shared Pascal table with at least rows `0..=n`. Grows on demand.
pub fn pascal(n: usize) -> Arc<TriangleTable> {
    {
        let table = pascal_cache().read().expect("pascal cache poisoned");
        if table.len() > n {
            return Arc::clone(&table);
        }
    }
    let mut table = pascal_cache().write().expect("pascal cache poisoned");
    if table.len() <= n {
        *table = Arc::new(pascal_table((n + 1).next_power_of_two()));
    }
    Arc::clone(&table)
}

fn factorial_cache() -> &'static RwLock<Arc<Vec<BigInt>>> {
    static CACHE: OnceLock<RwLock<Arc<Vec<BigInt>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(Arc::new(factorial_list(64))))
}

fn factorial_list(n: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BigInt::one());
    for i in 1..=n {
        let v = &out[i - 1] * i;
        out.push(v);
    }
    out
}

/// Shared list of `0!, 1!, ..., n!` (possibly longer).
pub fn factorials(n: usize) -> Arc<Vec<BigInt>> {
    {
        let list = factorial_cache().read().expect("factorial cache poisoned");
        if list.len() > n {
            return Arc::clone(&list);
        }
    }
    let mut list = factorial_cache().write().expect("factorial cache poisoned");
    if list.len() <= n {
        *list = Arc::new(factorial_list((n + 1).next_power_of_two()));
    }
    Arc::clone(&list)
}
