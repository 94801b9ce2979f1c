//! Ordinary Bell polynomials and the Invert transform.
//!
//! Everything here uses *ordinary* generating function semantics: the Bell
//! input `x_1, x_2, ...` is the series `sum_{i>=1} x_i z^i`, and the partial
//! polynomial `B_{n,k}(x)` is the coefficient of `z^n` in its `k`-th power.
//! The Invert transform likewise takes and returns plain coefficient lists
//! rather than [`HurwitzSeries`], so the two semantics never mix by accident.
//! The one bridge is [`invert_closed_form`], which inverts a Hurwitz series
//! through complete Bell polynomials.

use crate::error::{Error, Result};
use crate::ring::{Ring, RingValue};
use crate::series::HurwitzSeries;
use crate::triangle::factorials;

/// Bell polynomial arguments `x_1, ..., x_L`, indexed from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BellInput {
    ring: Ring,
    x: Vec<RingValue>,
}

impl BellInput {
    pub fn new(ring: Ring, x: Vec<RingValue>) -> Result<Self> {
        if x.is_empty() {
            return Err(Error::InsufficientInput("Bell input needs at least x_1".into()));
        }
        if let Some(bad) = x.iter().find(|v| v.ring() != ring) {
            return Err(Error::RingMismatch {
                left: ring,
                right: bad.ring(),
            });
        }
        Ok(BellInput { ring, x })
    }

    pub fn from_i64s(ring: Ring, x: &[i64]) -> Result<Self> {
        Self::new(ring, x.iter().map(|&v| ring.from_i64(v)).collect())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// `x_i` for `1 <= i <= L`.
    pub fn get(&self, i: usize) -> &RingValue {
        &self.x[i - 1]
    }
}

/// All partial Bell polynomials `B_{n,k}(x)` with `n <= max_n`.
///
/// Filled by `B_{n,k} = sum_{i=1}^{n-k+1} x_i B_{n-i,k-1}`. Entries whose
/// formula would read past `x_L` are left empty.
#[derive(Clone, Debug)]
pub struct PartialBellTable {
    ring: Ring,
    available: usize,
    rows: Vec<Vec<Option<RingValue>>>,
}

impl PartialBellTable {
    pub fn new(x: &BellInput, max_n: usize) -> Self {
        let ring = x.ring;
        let len = x.len();
        let mut rows: Vec<Vec<Option<RingValue>>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row = Vec::with_capacity(n + 1);
            row.push(Some(if n == 0 { ring.one() } else { ring.zero() }));
            for k in 1..=n {
                if n - k + 1 > len {
                    row.push(None);
                    continue;
                }
                let mut acc = ring.zero();
                for i in 1..=(n - k + 1) {
                    let prev = if k == 1 {
                        if n == i { ring.one() } else { ring.zero() }
                    } else {
                        rows[n - i][k - 1].clone().expect("closed under the recurrence")
                    };
                    if !prev.is_zero() {
                        acc = acc + x.get(i) * &prev;
                    }
                }
                row.push(Some(acc));
            }
            rows.push(row);
        }
        PartialBellTable {
            ring,
            available: len,
            rows,
        }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `B_{n,k}(x)`, zero when `k > n`.
    pub fn get(&self, n: usize, k: usize) -> Result<RingValue> {
        if k > n {
            return Ok(self.ring.zero());
        }
        if n > self.max_n() {
            return Err(Error::InsufficientInput(format!(
                "B_({n},{k}) is beyond the table (max n = {})",
                self.max_n()
            )));
        }
        self.rows[n][k].clone().ok_or_else(|| {
            Error::InsufficientInput(format!(
                "B_({n},{k}) needs x_1..x_{} but only {} supplied",
                n - k + 1,
                self.available
            ))
        })
    }

    /// Complete polynomial `B_n = sum_{k=1}^n B_{n,k}`, with `B_0 = 1`.
    pub fn complete(&self, n: usize) -> Result<RingValue> {
        if n == 0 {
            return Ok(self.ring.one());
        }
        (1..=n).try_fold(self.ring.zero(), |acc, k| Ok(acc + self.get(n, k)?))
    }
}

/// Partial ordinary Bell polynomial `B_{n,k}(x)`.
pub fn partial_bell(x: &BellInput, n: usize, k: usize) -> Result<RingValue> {
    PartialBellTable::new(x, n).get(n, k)
}

/// Complete ordinary Bell polynomial `B_n(x)`.
pub fn complete_bell(x: &BellInput, n: usize) -> Result<RingValue> {
    PartialBellTable::new(x, n).complete(n)
}

/// Invert transform on ordinary-g.f. coefficients: the unique `b` with
/// `B(t) = A(t) / (1 - t A(t))`, i.e. `b_n = a_n + sum_{j<n} a_j b_{n-1-j}`.
pub fn invert_transform(ring: Ring, a: &[RingValue]) -> Result<Vec<RingValue>> {
    if let Some(bad) = a.iter().find(|v| v.ring() != ring) {
        return Err(Error::RingMismatch {
            left: ring,
            right: bad.ring(),
        });
    }
    let mut b: Vec<RingValue> = Vec::with_capacity(a.len());
    for n in 0..a.len() {
        let v = (0..n).fold(a[n].clone(), |acc, j| acc + &a[j] * &b[n - 1 - j]);
        b.push(v);
    }
    Ok(b)
}

/// Inverse of a Hurwitz series through complete Bell polynomials:
/// `b_n = n! B_n(g_0, ..., g_{n-1}) / a_0` with
/// `g_j = -a_{j+1} / (a_0 (j+1)!)`.
///
/// Computed over the rationals. Integer input is lifted, and the result is
/// brought back to the integers only if every coefficient is integral.
pub fn invert_closed_form(a: &HurwitzSeries) -> Result<HurwitzSeries> {
    let ring = a.ring();
    let lifted = a.to_rationals()?;
    // Invertibility is decided in the original ring.
    a.coeff(0).invert()?;

    let n = a.precision();
    let a0 = lifted.coeff(0).clone();
    let inv0 = a0.invert()?;
    if n == 1 {
        return HurwitzSeries::new(Ring::Rationals, vec![inv0])?.convert_to(ring);
    }
    let fact = factorials(n);
    let q = Ring::Rationals;
    let g: Vec<RingValue> = (0..n - 1)
        .map(|j| {
            let denom = a0.mul_int(&fact[j + 1]);
            -(lifted.coeff(j + 1) * &denom.invert().expect("a_0 is nonzero"))
        })
        .collect();
    let table = PartialBellTable::new(&BellInput::new(q, g)?, n - 1);
    let coeffs = (0..n)
        .map(|k| Ok(table.complete(k)?.mul_int(&fact[k]) * inv0.clone()))
        .collect::<Result<Vec<_>>>()?;
    HurwitzSeries::new(q, coeffs)?.convert_to(ring)
}
