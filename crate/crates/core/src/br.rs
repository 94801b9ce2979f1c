//! The subgroup `B_R = { a : a_0 = 1, E(a) = a^{-1} }` and the
//! autoconvolution dynamics whose fixed points it is.
//!
//! An element of `B_R` is pinned down by its odd-index terms; the even terms
//! are `P(t) = sqrt(1 + D(t)^2)` where `D` is the odd part of the e.g.f.
//! [`even_from_odd`] and [`odd_from_even`] evaluate the two reconstructions
//! through partial Bell polynomials. [`autoconvolution`] replaces each even
//! term by the value forced by membership, which makes it a contraction for
//! the prefix ultrametric; [`transform_u`] is its limit.
//!
//! The reconstructions run over the rationals. Integer inputs are lifted and
//! the output is converted back only if it is integral.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::bell::{BellInput, PartialBellTable};
use crate::error::{Error, Result};
use crate::ring::{Ring, RingValue};
use crate::series::{DeltaValue, HurwitzSeries};
use crate::transforms::alternating_sign;
use crate::triangle::{factorials, pascal};

/// `a_0 = 1` and `E(a) * a = 1` at the series' precision.
pub fn is_in_br(a: &HurwitzSeries) -> bool {
    a.coeff(0).is_one()
        && alternating_sign(a)
            .convolve(a)
            .map(|c| c.is_identity())
            .unwrap_or(false)
}

/// A series verified to lie in `B_R` at its precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrElement(HurwitzSeries);

impl BrElement {
    pub fn new(series: HurwitzSeries) -> Result<Self> {
        if is_in_br(&series) {
            Ok(BrElement(series))
        } else {
            Err(Error::PreconditionViolation(format!("{series} is not in B_R")))
        }
    }

    pub fn series(&self) -> &HurwitzSeries {
        &self.0
    }

    pub fn into_series(self) -> HurwitzSeries {
        self.0
    }

    /// Product in the group; stays in `B_R`.
    pub fn mul(&self, other: &BrElement) -> Result<BrElement> {
        Ok(BrElement(self.0.convolve(&other.0)?))
    }

    /// The group inverse is the alternating sign transform.
    pub fn inverse(&self) -> BrElement {
        BrElement(alternating_sign(&self.0))
    }
}

/// `C(1/2, k) = prod_{j<k} (1/2 - j) / k!` as exact rationals, `k < len`.
pub fn half_binomials(len: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(len);
    let mut c = BigRational::one();
    for k in 0..len {
        out.push(c.clone());
        // C(1/2, k+1) = C(1/2, k) (1/2 - k) / (k + 1)
        let factor = BigRational::new(BigInt::one() - BigInt::from(2 * k), BigInt::from(2 * (k + 1)));
        c *= factor;
    }
    out
}

fn rational_ring(ring: Ring) -> Result<()> {
    match ring {
        Ring::Integers | Ring::Rationals => Ok(()),
        r => Err(Error::RingUnsupported(r)),
    }
}

fn lift_all(ring: Ring, values: &[RingValue]) -> Result<Vec<RingValue>> {
    values
        .iter()
        .map(|v| {
            if v.ring() != ring {
                return Err(Error::RingMismatch {
                    left: ring,
                    right: v.ring(),
                });
            }
            v.lift_to_rationals()
        })
        .collect()
}

fn back_to(ring: Ring, coeffs: Vec<RingValue>) -> Result<HurwitzSeries> {
    let q = HurwitzSeries::new(Ring::Rationals, coeffs)?;
    q.convert_to(ring).map_err(|e| match e {
        Error::IntegralityViolation(msg) => {
            Error::IntegralityViolation(format!("reconstruction over Z left {msg}: {q}"))
        }
        other => other,
    })
}

/// Completes odd-index terms `a_1, a_3, ...` to the element of `B_R` of
/// precision `n`:
/// `a_{2m} = (2m)! sum_{k=0}^m C(1/2,k) B_{m+k,2k}(x_1, ..., x_{m-k+1})`
/// with `x_i = a_{2i-1} / (2i-1)!`.
///
/// Needs at least `n / 2` odd terms; extra terms are ignored.
pub fn even_from_odd(ring: Ring, odds: &[RingValue], n: usize) -> Result<HurwitzSeries> {
    rational_ring(ring)?;
    if n == 0 {
        return Err(Error::PrecisionExhausted("precision must be at least 1".into()));
    }
    let needed = n / 2;
    if odds.len() < needed {
        return Err(Error::InsufficientInput(format!(
            "precision {n} needs {needed} odd terms, got {}",
            odds.len()
        )));
    }
    let odds = lift_all(ring, &odds[..needed])?;
    let q = Ring::Rationals;
    let mut coeffs = vec![q.zero(); n];
    coeffs[0] = q.one();
    for (i, v) in odds.iter().enumerate() {
        coeffs[2 * i + 1] = v.clone();
    }
    let max_m = (n - 1) / 2;
    if max_m == 0 {
        return back_to(ring, coeffs);
    }
    let fact = factorials(n);
    let x: Vec<RingValue> = odds
        .iter()
        .take(max_m)
        .enumerate()
        .map(|(i, v)| v.exact_div_int(&fact[2 * i + 1]))
        .collect::<Result<_>>()?;
    let table = PartialBellTable::new(&BellInput::new(q, x)?, 2 * max_m);
    let half = half_binomials(max_m + 1);
    for m in 1..=max_m {
        let mut sum = q.zero();
        for (k, c) in half.iter().enumerate().take(m + 1).skip(1) {
            let bell = table.get(m + k, 2 * k)?;
            sum = sum + bell * RingValue::Rat(c.clone());
        }
        coeffs[2 * m] = sum.mul_int(&fact[2 * m]);
    }
    back_to(ring, coeffs)
}

/// Completes even-index terms `a_2, a_4, ...` to the element of `B_R` of
/// precision `n`, given a square root `r` of an invertible `a_2`:
/// `a_{2m+1} = (2m+1)! sum_{k=0}^m r a_2^{-k} C(1/2,k) B_{m,k}(x_1, ..., x_{m-k+1})`
/// with `x_i = (1/(2i+2)!) sum_{j=0}^{i+1} C(2i+2, 2j) a_{2j} a_{2i+2-2j}`.
///
/// Needs at least `n / 2` even terms (the term `a_{2m+1}` reads `a_{2m+2}`);
/// only the even terms below `n` appear in the output.
pub fn odd_from_even(
    ring: Ring,
    evens: &[RingValue],
    sqrt_a2: &RingValue,
    n: usize,
) -> Result<HurwitzSeries> {
    rational_ring(ring)?;
    if n == 0 {
        return Err(Error::PrecisionExhausted("precision must be at least 1".into()));
    }
    let needed = (n / 2).max(1);
    if evens.len() < needed {
        return Err(Error::InsufficientInput(format!(
            "precision {n} needs {needed} even terms, got {}",
            evens.len()
        )));
    }
    if sqrt_a2.ring() != ring {
        return Err(Error::RingMismatch {
            left: ring,
            right: sqrt_a2.ring(),
        });
    }
    let a2 = &evens[0];
    if a2.invert().is_err() {
        return Err(Error::PreconditionViolation(format!("a_2 = {a2} is not invertible")));
    }
    if &(sqrt_a2 * sqrt_a2) != a2 {
        return Err(Error::PreconditionViolation(format!(
            "{sqrt_a2} is not a square root of a_2 = {a2}"
        )));
    }
    let evens = lift_all(ring, &evens[..needed])?;
    let root = sqrt_a2.lift_to_rationals()?;
    let q = Ring::Rationals;
    // e[j] = a_{2j}
    let mut e = Vec::with_capacity(needed + 1);
    e.push(q.one());
    e.extend(evens.iter().cloned());

    let mut coeffs = vec![q.zero(); n];
    coeffs[0] = q.one();
    for j in 1..=needed {
        if 2 * j < n {
            coeffs[2 * j] = e[j].clone();
        }
    }
    if n < 2 {
        return back_to(ring, coeffs);
    }
    let max_m = (n - 2) / 2;
    coeffs[1] = root.clone();
    if max_m == 0 {
        return back_to(ring, coeffs);
    }
    let fact = factorials(2 * max_m + 2);
    let binom = pascal(2 * max_m + 2);
    // x_i reads a_{2i+2} = e[i+1]; i <= max_m keeps that within `needed`.
    let x: Vec<RingValue> = (1..=max_m)
        .map(|i| {
            let row = binom.row(2 * i + 2);
            let s = (0..=i + 1).fold(q.zero(), |acc, j| {
                acc + (&e[j] * &e[i + 1 - j]).mul_int(&row[2 * j])
            });
            s.exact_div_int(&fact[2 * i + 2])
        })
        .collect::<Result<_>>()?;
    let table = PartialBellTable::new(&BellInput::new(q, x)?, max_m);
    let half = half_binomials(max_m + 1);
    let inv_a2 = e[1].invert()?;
    for m in 1..=max_m {
        let mut sum = q.zero();
        let mut scale = root.clone();
        for (k, c) in half.iter().enumerate().take(m + 1) {
            let bell = table.get(m, k)?;
            sum = sum + &(bell * RingValue::Rat(c.clone())) * &scale;
            scale = &scale * &inv_a2;
        }
        coeffs[2 * m + 1] = sum.mul_int(&fact[2 * m + 1]);
    }
    back_to(ring, coeffs)
}

/// Odd-index terms `a_1, a_3, ...` of a series.
pub fn odd_terms(a: &HurwitzSeries) -> Vec<RingValue> {
    a.coeffs().iter().skip(1).step_by(2).cloned().collect()
}

/// Even-index terms `a_2, a_4, ...` of a series.
pub fn even_terms(a: &HurwitzSeries) -> Vec<RingValue> {
    a.coeffs().iter().skip(2).step_by(2).cloned().collect()
}

/// The raw sum `sum_{h=1}^{m-1} C(m,h) (-1)^h a_h a_{m-h}` behind the
/// even terms of [`autoconvolution`].
pub fn autoconvolution_sum(a: &HurwitzSeries, m: usize) -> RingValue {
    let binom = pascal(m);
    let row = binom.row(m);
    (1..m).fold(a.ring().zero(), |acc, h| {
        let term = (a.coeff(h) * a.coeff(m - h)).mul_int(&row[h]);
        if h % 2 == 1 {
            acc - term
        } else {
            acc + term
        }
    })
}

/// The autoconvolution transform `A`.
///
/// `b_0 = a_0`, odd terms are copied, and for even `m >= 2`
/// `b_m = -(1/2) sum_{h=1}^{m-1} C(m,h) (-1)^h a_h a_{m-h}`.
/// The sum is always even over the integers; over `Z/mZ` halving needs odd
/// `m`.
pub fn autoconvolution(a: &HurwitzSeries) -> Result<HurwitzSeries> {
    let two = BigInt::from(2);
    let mut coeffs = a.coeffs().to_vec();
    for m in (2..a.precision()).step_by(2) {
        let s = autoconvolution_sum(a, m);
        coeffs[m] = -s.exact_div_int(&two).map_err(|e| match e {
            Error::NotDivisible { .. } => Error::IntegralityViolation(format!(
                "odd autoconvolution sum {s} at index {m}"
            )),
            other => other,
        })?;
    }
    HurwitzSeries::new(a.ring(), coeffs)
}

/// `A^n(a)`.
pub fn iterate_auto(a: &HurwitzSeries, n: usize) -> Result<HurwitzSeries> {
    (0..n).try_fold(a.clone(), |acc, _| autoconvolution(&acc))
}

fn require_unit_head(a: &HurwitzSeries) -> Result<()> {
    if a.coeff(0).is_one() {
        Ok(())
    } else {
        Err(Error::PreconditionViolation(format!(
            "constant term is {}, expected 1",
            a.coeff(0)
        )))
    }
}

/// The completion `U`: keeps `a_0 = 1` and the odd terms, and replaces the
/// even terms by [`even_from_odd`]. The result lies in `B_R`, and
/// `U(a) = a` exactly when `a` does.
pub fn transform_u(a: &HurwitzSeries) -> Result<HurwitzSeries> {
    require_unit_head(a)?;
    even_from_odd(a.ring(), &odd_terms(a), a.precision())
}

/// Principal square root of a rational series with constant term 1:
/// `b_0 = 1`, `b_n = (c_n - sum_{h=1}^{n-1} C(n,h) b_h b_{n-h}) / 2`.
pub fn series_sqrt(c: &HurwitzSeries) -> Result<HurwitzSeries> {
    if c.ring() != Ring::Rationals {
        return Err(Error::RingUnsupported(c.ring()));
    }
    if !c.coeff(0).is_one() {
        return Err(Error::DomainViolation("sqrt needs constant term 1".into()));
    }
    let q = Ring::Rationals;
    let n = c.precision();
    let binom = pascal(n);
    let two = BigInt::from(2);
    let mut b: Vec<RingValue> = Vec::with_capacity(n);
    b.push(q.one());
    for k in 1..n {
        let row = binom.row(k);
        let s = (1..k).fold(q.zero(), |acc, h| acc + (&b[h] * &b[k - h]).mul_int(&row[h]));
        b.push((c.coeff(k) - &s).exact_div_int(&two)?);
    }
    HurwitzSeries::new(q, b)
}

/// `U(a)` through its e.g.f. `sqrt(1 + D(t)^2) + D(t)` with `D` the odd part
/// of `a`. An independent route to [`transform_u`] over the rationals.
pub fn u_egf_check(a: &HurwitzSeries) -> Result<HurwitzSeries> {
    if a.ring() != Ring::Rationals {
        return Err(Error::RingUnsupported(a.ring()));
    }
    require_unit_head(a)?;
    let d = a.odd_part();
    let one = HurwitzSeries::identity(Ring::Rationals, a.precision())?;
    series_sqrt(&one.add(&d.convolve(&d)?)?)?.add(&d)
}

/// One line of a [`DynamicsTrace`]: `delta(A^n(a), U(a))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub n: usize,
    pub delta: DeltaValue,
}

/// Iterates of `A` starting from `start`, measured against `U(start)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynamicsTrace {
    pub start: HurwitzSeries,
    pub target: HurwitzSeries,
    pub steps: Vec<TraceStep>,
    /// First `n` with `A^n(start) = U(start)` at full precision.
    pub converged_at: Option<usize>,
    /// The last iterate computed.
    pub last: HurwitzSeries,
}

impl DynamicsTrace {
    /// Lower bound on `agreement(A^n(a), U(a))`.
    pub fn agreement_bound(n: usize) -> usize {
        2 * (n + 1)
    }

    /// Number of steps after which `A^n(a) = U(a)` is guaranteed at
    /// precision `len`. For even `len = 2m` this is `m - 1`; for odd `len`
    /// the trailing even term needs one more step.
    pub fn step_bound(len: usize) -> usize {
        len.div_ceil(2) - 1
    }

    /// Bound for the largest even prefix, `floor(len/2) - 1`.
    pub fn even_prefix_bound(len: usize) -> usize {
        (len / 2).saturating_sub(1)
    }

    /// Every step meets the agreement bound (capped at the precision) and
    /// the distances strictly decrease until convergence.
    pub fn satisfies_bounds(&self) -> bool {
        let len = self.start.precision();
        let bound_ok = self
            .steps
            .iter()
            .all(|s| s.delta.agreement() >= Self::agreement_bound(s.n).min(len));
        let decreasing = self.steps.windows(2).all(|w| w[1].delta < w[0].delta);
        bound_ok && decreasing
    }
}

/// Iterates `A` from `a` until it reaches `U(a)` or `max_steps` iterations
/// have run (default: the guaranteed [`DynamicsTrace::step_bound`]).
pub fn dynamics_converge(a: &HurwitzSeries, max_steps: Option<usize>) -> Result<DynamicsTrace> {
    require_unit_head(a)?;
    let target = transform_u(a)?;
    let limit = max_steps.unwrap_or_else(|| DynamicsTrace::step_bound(a.precision()));
    let mut steps = Vec::new();
    let mut current = a.clone();
    let mut converged_at = None;
    for n in 0..=limit {
        if n > 0 {
            current = autoconvolution(&current)?;
        }
        let delta = current.delta(&target)?;
        steps.push(TraceStep { n, delta });
        if delta.is_equal() {
            converged_at = Some(n);
            break;
        }
    }
    Ok(DynamicsTrace {
        start: a.clone(),
        target,
        steps,
        converged_at,
        last: current,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::transforms::{binomial_interpolated, boustrophedon, series_exp, series_log, is_even, is_odd, stirling_transform, zigzag_numbers};
    use proptest::prelude::*;

    fn z(v: &[i64]) -> HurwitzSeries {
        HurwitzSeries::from_i64s(Ring::Integers, v).unwrap()
    }

    fn zs(v: &[i64]) -> Vec<RingValue> {
        v.iter().map(|&x| Ring::Integers.from_i64(x)).collect()
    }

    fn qs(v: &[i64]) -> Vec<RingValue> {
        v.iter().map(|&x| Ring::Rationals.from_i64(x)).collect()
    }

    #[test]
    fn membership_examples() {
        assert!(is_in_br(&HurwitzSeries::identity(Ring::Integers, 6).unwrap()));
        assert!(is_in_br(&HurwitzSeries::ones(Ring::Integers, 10).unwrap()));
        let cosh = z(&[1, 0, 1, 0, 1]);
        assert!(!is_in_br(&cosh));
        let c = alternating_sign(&cosh).convolve(&cosh).unwrap();
        assert_eq!(c.coeff(2), &Ring::Integers.from_i64(2));
        assert!(!is_in_br(&z(&[2, 0, 0])));
    }

    #[test]
    fn half_binomial_values() {
        let h = half_binomials(6);
        for (k, v) in h.iter().enumerate() {
            assert_eq!(v, &oracle::half_binomial(k));
        }
    }

    #[test]
    fn even_from_odd_low_terms() {
        for (a1, a3) in [(1, 2), (-3, 5), (2, 0), (7, -4)] {
            let a = even_from_odd(Ring::Integers, &zs(&[a1, a3]), 5).unwrap();
            assert_eq!(a.coeff(2), &Ring::Integers.from_i64(a1 * a1));
            assert_eq!(a.coeff(4), &Ring::Integers.from_i64(-3 * a1.pow(4) + 4 * a1 * a3));
            assert!(is_in_br(&a));
        }
        let a = even_from_odd(Ring::Integers, &zs(&[1, 2]), 5).unwrap();
        assert_eq!(a, z(&[1, 1, 1, 2, 5]));
    }

    #[test]
    fn even_from_odd_matches_oracles() {
        let odds = [3i64, -1, 4, 1, -5, 9, 2];
        let rats: Vec<BigRational> = odds.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        let a = even_from_odd(Ring::Integers, &zs(&odds), 14).unwrap();
        let solved = oracle::complete_by_solving(&rats, 14);
        for (m, s) in solved.iter().enumerate() {
            assert_eq!(a.coeff(m).lift_to_rationals().unwrap(), RingValue::Rat(s.clone()), "index {m}");
        }
        for n in 1..=5 {
            let multinomial = oracle::even_term_multinomial(&rats, n);
            assert_eq!(a.coeff(2 * n).lift_to_rationals().unwrap(), RingValue::Rat(multinomial));
        }
    }

    #[test]
    fn even_from_odd_input_checks() {
        assert!(matches!(
            even_from_odd(Ring::Integers, &zs(&[1]), 6),
            Err(Error::InsufficientInput(_))
        ));
        assert!(matches!(
            even_from_odd(Ring::modular(7).unwrap(), &[], 1),
            Err(Error::RingUnsupported(_))
        ));
        assert_eq!(even_from_odd(Ring::Integers, &[], 1).unwrap(), z(&[1]));
    }

    #[test]
    fn odd_from_even_examples() {
        let q = Ring::Rationals;
        let a = odd_from_even(q, &qs(&[1, 5]), &q.one(), 5).unwrap();
        assert_eq!(odd_terms(&a), qs(&[1, 2]));
        let b = odd_from_even(q, &qs(&[1, 5]), &q.from_i64(-1), 5).unwrap();
        assert_eq!(odd_terms(&b), qs(&[-1, -2]));
        assert_eq!(b, alternating_sign(&a));
        assert!(matches!(
            odd_from_even(q, &qs(&[0, 5]), &q.zero(), 5),
            Err(Error::PreconditionViolation(_))
        ));
        assert!(matches!(
            odd_from_even(q, &qs(&[4, 5]), &q.from_i64(3), 5),
            Err(Error::PreconditionViolation(_))
        ));
        // Over Z the square root must come from a unit a_2.
        let z5 = odd_from_even(Ring::Integers, &zs(&[1, 5]), &Ring::Integers.one(), 5).unwrap();
        assert_eq!(z5, z(&[1, 1, 1, 2, 5]));
    }

    #[test]
    fn autoconvolution_examples() {
        let a = z(&[1, 1, 2, 3, 4, 5]);
        assert_eq!(autoconvolution(&a).unwrap(), z(&[1, 1, 1, 3, 0, 5]));
        assert_eq!(transform_u(&a).unwrap(), z(&[1, 1, 1, 3, 9, 5]));
        assert_eq!(iterate_auto(&a, 2).unwrap(), z(&[1, 1, 1, 3, 9, 5]));
        assert_eq!(iterate_auto(&a, 0).unwrap(), a);
        let m4 = HurwitzSeries::ones(Ring::modular(4).unwrap(), 4).unwrap();
        assert!(matches!(autoconvolution(&m4), Err(Error::NotInvertible(_))));
        let m5 = HurwitzSeries::ones(Ring::modular(5).unwrap(), 6).unwrap();
        assert_eq!(autoconvolution(&m5).unwrap(), m5);
    }

    #[test]
    fn u_examples() {
        let id = HurwitzSeries::identity(Ring::Integers, 6).unwrap();
        assert_eq!(transform_u(&id).unwrap(), id);
        assert!(matches!(transform_u(&z(&[2, 1])), Err(Error::PreconditionViolation(_))));
        let a = z(&[1, 1, 2, 3, 4, 5]).to_rationals().unwrap();
        assert_eq!(u_egf_check(&a).unwrap(), transform_u(&a).unwrap());
        let ones = HurwitzSeries::ones(Ring::Rationals, 8).unwrap();
        assert_eq!(u_egf_check(&ones).unwrap(), transform_u(&ones).unwrap());
        let idq = HurwitzSeries::identity(Ring::Rationals, 5).unwrap();
        assert_eq!(u_egf_check(&idq).unwrap(), idq);
    }

    #[test]
    fn sqrt_examples() {
        let id = HurwitzSeries::identity(Ring::Rationals, 5).unwrap();
        assert_eq!(series_sqrt(&id).unwrap(), id);
        let c = HurwitzSeries::from_i64s(Ring::Rationals, &[1, 0, 2, 0, 0, 0, 0, 0]).unwrap();
        let b = series_sqrt(&c).unwrap();
        assert_eq!(b.convolve(&b).unwrap(), c);
        assert!(matches!(series_sqrt(&z(&[1, 1])), Err(Error::RingUnsupported(_))));
    }

    #[test]
    fn dynamics_examples() {
        let a = z(&[1, 1, 2, 3, 4, 5]);
        let trace = dynamics_converge(&a, None).unwrap();
        assert!(trace.converged_at.unwrap() <= 2);
        assert_eq!(trace.last, z(&[1, 1, 1, 3, 9, 5]));
        assert!(trace.satisfies_bounds());

        let b = even_from_odd(Ring::Integers, &zs(&[2, -1, 3]), 7).unwrap();
        let trace = dynamics_converge(&b, None).unwrap();
        assert_eq!(trace.converged_at, Some(0));
        assert_eq!(trace.steps.len(), 1);
    }

    #[test]
    fn a4_reaches_u_at_length_ten() {
        let a = z(&[1, 3, -2, 5, 7, -1, 0, 4, 9, -6]);
        assert_eq!(iterate_auto(&a, 4).unwrap(), transform_u(&a).unwrap());
    }

    #[test]
    fn br_closure_and_non_closure() {
        let a = even_from_odd(Ring::Integers, &zs(&[2, -3, 1, 0, 5, -7, 4]), 14).unwrap();
        assert!(is_in_br(&alternating_sign(&a)));
        assert!(is_in_br(&boustrophedon(&a).unwrap()));
        for y in -2..=2 {
            assert!(is_in_br(&binomial_interpolated(&a, &Ring::Integers.from_i64(y)).unwrap()));
        }
        let beta = zigzag_numbers(Ring::Integers, 10).unwrap();
        assert!(is_in_br(&beta));
        assert!(!is_in_br(&stirling_transform(&beta)));
    }

    fn small_odds(len: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-9i64..=9, len)
    }

    proptest! {
        #[test]
        fn fixed_points_are_br(v in prop::collection::vec(-9i64..=9, 14), member in any::<bool>()) {
            let mut a = z(&v).map(|i, x| if i == 0 { Ring::Integers.one() } else { x.clone() });
            if member {
                a = transform_u(&a).unwrap();
            }
            prop_assert_eq!(is_in_br(&a), autoconvolution(&a).unwrap() == a);
        }

        #[test]
        fn contraction(u in prop::collection::vec(-3i64..=3, 16), v in prop::collection::vec(-3i64..=3, 16), share in 0usize..16) {
            let a = z(&u);
            let mut w = v.clone();
            w[..share].copy_from_slice(&u[..share]);
            let b = z(&w);
            let before = a.delta(&b).unwrap();
            let after = autoconvolution(&a).unwrap().delta(&autoconvolution(&b).unwrap()).unwrap();
            prop_assert!(after <= before);
        }

        #[test]
        fn group_structure(u in small_odds(6), v in small_odds(6)) {
            let a = BrElement::new(even_from_odd(Ring::Integers, &zs(&u), 12).unwrap()).unwrap();
            let b = BrElement::new(even_from_odd(Ring::Integers, &zs(&v), 12).unwrap()).unwrap();
            prop_assert!(is_in_br(a.mul(&b).unwrap().series()));
            prop_assert_eq!(a.series().invert().unwrap(), a.inverse().into_series());
        }

        #[test]
        fn log_characterization(u in prop::collection::vec((-9i64..=9, 1i64..=9), 7)) {
            let odds: Vec<RingValue> = u.iter().map(|&(p, d)| Ring::Rationals.from_fraction(p, d).unwrap()).collect();
            let a = even_from_odd(Ring::Rationals, &odds, 14).unwrap();
            prop_assert!(is_odd(&series_log(&a).unwrap()));
            let g = a.derivative().unwrap().convolve(&a.invert().unwrap()).unwrap();
            prop_assert!(is_even(&g));
            prop_assert_eq!(series_exp(&series_log(&a).unwrap()).unwrap(), a);
        }

        #[test]
        fn reconstruction_round_trip(u in prop::collection::vec((-9i64..=9, 1i64..=9), 6)) {
            let q = Ring::Rationals;
            let mut odds: Vec<RingValue> = u.iter().map(|&(p, d)| q.from_fraction(p, d).unwrap()).collect();
            if odds[0].is_zero() {
                odds[0] = q.one();
            }
            let a = even_from_odd(q, &odds, 12).unwrap();
            // Extend by one even term so the odd reconstruction has a_12.
            let longer = even_from_odd(q, &odds.iter().cloned().chain([q.zero()]).collect::<Vec<_>>(), 13).unwrap();
            let evens = even_terms(&longer);
            let back = odd_from_even(q, &evens, &odds[0], 12).unwrap();
            prop_assert_eq!(&back, &a);
            let flipped = odd_from_even(q, &evens, &-&odds[0], 12).unwrap();
            prop_assert_eq!(flipped, alternating_sign(&a));
            prop_assert_eq!(even_from_odd(q, &odd_terms(&back), 12).unwrap(), a);
        }

        #[test]
        fn u_matches_egf_route(v in prop::collection::vec((-9i64..=9, 1i64..=9), 10)) {
            let q = Ring::Rationals;
            let mut coeffs: Vec<RingValue> = v.iter().map(|&(p, d)| q.from_fraction(p, d).unwrap()).collect();
            coeffs[0] = q.one();
            let a = HurwitzSeries::new(q, coeffs).unwrap();
            prop_assert_eq!(u_egf_check(&a).unwrap(), transform_u(&a).unwrap());
        }

        #[test]
        fn sqrt_round_trip(v in prop::collection::vec((-9i64..=9, 1i64..=9), 10)) {
            let q = Ring::Rationals;
            let mut coeffs: Vec<RingValue> = v.iter().map(|&(p, d)| q.from_fraction(p, d).unwrap()).collect();
            coeffs[0] = q.one();
            let c = HurwitzSeries::new(q, coeffs).unwrap();
            prop_assert_eq!(series_sqrt(&c.convolve(&c).unwrap()).unwrap(), c);
        }

        #[test]
        fn dynamics_bound(v in prop::collection::vec(-9i64..=9, 20)) {
            let a = z(&v).map(|i, x| if i == 0 { Ring::Integers.one() } else { x.clone() });
            let trace = dynamics_converge(&a, None).unwrap();
            prop_assert!(trace.converged_at.is_some());
            prop_assert!(trace.converged_at.unwrap() <= 9);
            prop_assert!(trace.satisfies_bounds());
        }
    }
}
