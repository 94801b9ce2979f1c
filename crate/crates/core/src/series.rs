//! Truncated Hurwitz series.
//!
//! A [`HurwitzSeries`] of precision `N` holds `a_0, ..., a_{N-1}` where `a_n`
//! is the coefficient of `t^n / n!`. The product is the binomial convolution,
//! which multiplies exponential generating functions. Every operation states
//! its output precision; nothing is silently padded with zeros.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::ring::{Ring, RingValue};
use crate::triangle::pascal;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HurwitzSeries {
    ring: Ring,
    coeffs: Vec<RingValue>,
}

impl HurwitzSeries {
    pub fn new(ring: Ring, coeffs: Vec<RingValue>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::PrecisionExhausted("a series needs at least one coefficient".into()));
        }
        if let Some(bad) = coeffs.iter().find(|c| c.ring() != ring) {
            return Err(Error::RingMismatch {
                left: ring,
                right: bad.ring(),
            });
        }
        Ok(HurwitzSeries { ring, coeffs })
    }

    pub fn from_i64s(ring: Ring, values: &[i64]) -> Result<Self> {
        Self::new(ring, values.iter().map(|&v| ring.from_i64(v)).collect())
    }

    /// Builds `(f(0), ..., f(n-1))`; `n` must be positive.
    pub fn from_fn(ring: Ring, n: usize, f: impl FnMut(usize) -> RingValue) -> Result<Self> {
        Self::new(ring, (0..n).map(f).collect())
    }

    pub(crate) fn from_vec_unchecked(ring: Ring, coeffs: Vec<RingValue>) -> Self {
        debug_assert!(!coeffs.is_empty());
        debug_assert!(coeffs.iter().all(|c| c.ring() == ring));
        HurwitzSeries { ring, coeffs }
    }

    /// `pi(r) = (r, 0, 0, ...)` at precision `n`.
    pub fn embed_scalar(r: &RingValue, n: usize) -> Result<Self> {
        let ring = r.ring();
        Self::from_fn(ring, n, |i| if i == 0 { r.clone() } else { ring.zero() })
    }

    /// The multiplicative identity `(1, 0, 0, ...)`.
    pub fn identity(ring: Ring, n: usize) -> Result<Self> {
        Self::embed_scalar(&ring.one(), n)
    }

    pub fn zero(ring: Ring, n: usize) -> Result<Self> {
        Self::embed_scalar(&ring.zero(), n)
    }

    /// All-ones sequence, the e.g.f. `e^t`.
    pub fn ones(ring: Ring, n: usize) -> Result<Self> {
        Self::from_fn(ring, n, |_| ring.one())
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[RingValue] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &RingValue {
        &self.coeffs[n]
    }

    pub fn into_coeffs(self) -> Vec<RingValue> {
        self.coeffs
    }

    /// Keeps the first `m` coefficients.
    pub fn truncate(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.precision() {
            return Err(Error::PrecisionExhausted(format!(
                "cannot truncate precision {} to {m}",
                self.precision()
            )));
        }
        Ok(Self::from_vec_unchecked(self.ring, self.coeffs[..m].to_vec()))
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(RingValue::is_zero)
    }

    fn check_ring(&self, other: &HurwitzSeries) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            })
        }
    }

    fn zip_with(
        &self,
        other: &HurwitzSeries,
        f: impl Fn(&RingValue, &RingValue) -> RingValue,
    ) -> Result<Self> {
        self.check_ring(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
        Ok(Self::from_vec_unchecked(self.ring, coeffs))
    }

    /// Termwise sum at precision `min(N_a, N_b)`.
    pub fn add(&self, other: &HurwitzSeries) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &HurwitzSeries) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Self {
        self.map(|_, a| -a)
    }

    pub fn scale(&self, r: &RingValue) -> Result<Self> {
        if r.ring() != self.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: r.ring(),
            });
        }
        Ok(self.map(|_, a| a * r))
    }

    /// Applies `f(n, a_n)` termwise.
    pub fn map(&self, f: impl Fn(usize, &RingValue) -> RingValue) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, a)| f(i, a)).collect();
        Self::from_vec_unchecked(self.ring, coeffs)
    }

    /// Binomial convolution `c_n = sum_h C(n,h) a_h b_{n-h}` at precision
    /// `min(N_a, N_b)`.
    pub fn convolve(&self, other: &HurwitzSeries) -> Result<Self> {
        self.convolve_with(other, Execution::preferred())
    }

    pub fn convolve_with(&self, other: &HurwitzSeries, exec: Execution) -> Result<Self> {
        self.check_ring(other)?;
        let n = self.precision().min(other.precision());
        let binom = pascal(n);
        let coeffs = par::map_indexed(exec.for_len(n, par::COEFF_THRESHOLD), n, |k| {
            let row = binom.row(k);
            (0..=k).fold(self.ring.zero(), |acc, h| {
                let term = (&self.coeffs[h] * &other.coeffs[k - h]).mul_int(&row[h]);
                acc + term
            })
        });
        Ok(Self::from_vec_unchecked(self.ring, coeffs))
    }

    /// Convolution inverse, defined iff `a_0` is a unit.
    ///
    /// `b_0 = a_0^{-1}`, `b_n = -a_0^{-1} sum_{h=1}^{n} C(n,h) a_h b_{n-h}`.
    pub fn invert(&self) -> Result<Self> {
        let inv0 = self.coeffs[0].invert()?;
        let n = self.precision();
        let binom = pascal(n);
        let mut out: Vec<RingValue> = Vec::with_capacity(n);
        out.push(inv0.clone());
        for k in 1..n {
            let row = binom.row(k);
            let s = (1..=k).fold(self.ring.zero(), |acc, h| {
                acc + (&self.coeffs[h] * &out[k - h]).mul_int(&row[h])
            });
            out.push(-(&s * &inv0));
        }
        Ok(Self::from_vec_unchecked(self.ring, out))
    }

    /// E.g.f. derivative: `b_n = a_{n+1}`, precision `N - 1`.
    pub fn derivative(&self) -> Result<Self> {
        if self.precision() < 2 {
            return Err(Error::PrecisionExhausted(
                "derivative of a precision-1 series".into(),
            ));
        }
        Ok(Self::from_vec_unchecked(self.ring, self.coeffs[1..].to_vec()))
    }

    /// E.g.f. integration with constant term `r`: `(r, a_0, a_1, ...)`,
    /// precision `N + 1`.
    pub fn prepend(&self, r: &RingValue) -> Result<Self> {
        if r.ring() != self.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: r.ring(),
            });
        }
        let mut coeffs = Vec::with_capacity(self.precision() + 1);
        coeffs.push(r.clone());
        coeffs.extend_from_slice(&self.coeffs);
        Ok(Self::from_vec_unchecked(self.ring, coeffs))
    }

    /// `V^k(a) = (1, ..., 1, a_0, a_1, ...)` with `k` leading ones; precision
    /// `N + k`. The result has constant term 1.
    pub fn prepend_ones(&self, k: usize) -> Self {
        let mut coeffs = vec![self.ring.one(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Self::from_vec_unchecked(self.ring, coeffs)
    }

    /// Odd part `(A(t) - A(-t)) / 2`: odd coefficients kept, even ones zeroed.
    pub fn odd_part(&self) -> Self {
        self.map(|i, a| if i % 2 == 1 { a.clone() } else { self.ring.zero() })
    }

    /// Even part `(A(t) + A(-t)) / 2`.
    pub fn even_part(&self) -> Self {
        self.map(|i, a| if i % 2 == 0 { a.clone() } else { self.ring.zero() })
    }

    /// Ultrametric distance, compared over the first `min(N_a, N_b)` terms.
    pub fn delta(&self, other: &HurwitzSeries) -> Result<DeltaValue> {
        self.check_ring(other)?;
        let n = self.precision().min(other.precision());
        Ok(self.coeffs[..n]
            .iter()
            .zip(&other.coeffs[..n])
            .position(|(a, b)| a != b)
            .map_or(DeltaValue::EqualAtPrecision(n), DeltaValue::Differ))
    }

    /// Re-expresses every coefficient in `target` (see [`RingValue::convert_to`]).
    pub fn convert_to(&self, target: Ring) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.convert_to(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_vec_unchecked(target, coeffs))
    }

    /// Lifts integer series to the rationals; rational series are returned
    /// unchanged and residue series are rejected.
    pub fn to_rationals(&self) -> Result<Self> {
        match self.ring {
            Ring::Integers | Ring::Rationals => self.convert_to(Ring::Rationals),
            r => Err(Error::RingUnsupported(r)),
        }
    }

    /// Integer payloads, if the series is over the integers.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| match c {
                RingValue::Int(n) => Some(n.clone()),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for HurwitzSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ") over {}", self.ring)
    }
}

/// Ultrametric distance `2^{-k}` stored as the agreement length `k`.
///
/// `EqualAtPrecision(N)` means the series agree on every compared term; it
/// orders strictly below every finite `Differ(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeltaValue {
    /// First differing index.
    Differ(usize),
    /// No difference within the first `N` terms.
    EqualAtPrecision(usize),
}

impl DeltaValue {
    /// Length of the common prefix.
    pub fn agreement(self) -> usize {
        match self {
            DeltaValue::Differ(k) | DeltaValue::EqualAtPrecision(k) => k,
        }
    }

    pub fn is_equal(self) -> bool {
        matches!(self, DeltaValue::EqualAtPrecision(_))
    }

    /// `2^-k` as text; equal series render as `0`.
    pub fn metric_string(self) -> String {
        match self {
            DeltaValue::Differ(k) => format!("2^-{k}"),
            DeltaValue::EqualAtPrecision(_) => "0".into(),
        }
    }
}

impl Ord for DeltaValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use DeltaValue::*;
        match (self, other) {
            (EqualAtPrecision(a), EqualAtPrecision(b)) => b.cmp(a),
            (EqualAtPrecision(_), Differ(_)) => Ordering::Less,
            (Differ(_), EqualAtPrecision(_)) => Ordering::Greater,
            (Differ(a), Differ(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for DeltaValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DeltaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeltaValue::Differ(k) => write!(f, "2^-{k}"),
            DeltaValue::EqualAtPrecision(n) => write!(f, "0 (equal at precision {n})"),
        }
    }
}
