//! Sequence transforms acting on Hurwitz series.
//!
//! The alternating sign and Stirling transforms are ring automorphisms of
//! `H_R`. The binomial interpolated and Boustrophedon transforms are
//! convolutions with a fixed kernel (`(y^n)` and the zigzag numbers). The
//! formal `exp`/`log` pair lives here too and is restricted to the
//! rationals.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::ring::{Ring, RingValue};
use crate::series::HurwitzSeries;
use crate::triangle::{
    entringer_table, pascal, stirling1_unsigned_table, stirling2_table, TriangleTable,
};

/// `E(a)_n = (-1)^n a_n`; the e.g.f. becomes `A(-t)`.
pub fn alternating_sign(a: &HurwitzSeries) -> HurwitzSeries {
    a.map(|n, v| if n % 2 == 1 { -v } else { v.clone() })
}

/// The kernel `(1, y, y^2, ...)` of the binomial interpolated transform.
pub fn interpolation_kernel(y: &RingValue, n: usize) -> Result<HurwitzSeries> {
    let ring = y.ring();
    let mut powers = Vec::with_capacity(n);
    let mut p = ring.one();
    for _ in 0..n {
        powers.push(p.clone());
        p = &p * y;
    }
    HurwitzSeries::new(ring, powers)
}

/// `L^(y)(a)_n = sum_h C(n,h) y^{n-h} a_h`, i.e. `(y^n) * a` with e.g.f.
/// `e^{yt} A(t)`.
pub fn binomial_interpolated(a: &HurwitzSeries, y: &RingValue) -> Result<HurwitzSeries> {
    if y.ring() != a.ring() {
        return Err(Error::RingMismatch {
            left: a.ring(),
            right: y.ring(),
        });
    }
    let n = a.precision();
    let kernel = interpolation_kernel(y, n)?;
    let binom = pascal(n);
    let direct = HurwitzSeries::from_fn(a.ring(), n, |k| {
        (0..=k).fold(a.ring().zero(), |acc, h| {
            acc + (kernel.coeff(k - h) * a.coeff(h)).mul_int(binom.row(k).get(h).unwrap())
        })
    })?;
    debug_assert_eq!(direct, kernel.convolve(a)?);
    Ok(direct)
}

/// Entringer triangle and the Euler zigzag numbers `beta_n = E(n, n)`,
/// the e.g.f. coefficients of `sec t + tan t`.
#[derive(Clone, Debug)]
pub struct ZigzagTable {
    entringer: TriangleTable,
    beta: Vec<BigInt>,
}

impl ZigzagTable {
    pub fn new(n: usize) -> Self {
        let entringer = entringer_table(n.saturating_sub(1));
        let beta = (0..n).map(|i| entringer.get(i, i)).collect();
        ZigzagTable { entringer, beta }
    }

    pub fn entringer(&self) -> &TriangleTable {
        &self.entringer
    }

    pub fn beta(&self) -> &[BigInt] {
        &self.beta
    }

    /// `beta` as a series over `ring`.
    pub fn series(&self, ring: Ring) -> Result<HurwitzSeries> {
        HurwitzSeries::new(ring, self.beta.iter().map(|b| ring.from_bigint(b)).collect())
    }
}

/// Zigzag numbers `beta_0..beta_{n-1}` as a series over `ring`.
pub fn zigzag_numbers(ring: Ring, n: usize) -> Result<HurwitzSeries> {
    if n == 0 {
        return Err(Error::PrecisionExhausted("zigzag numbers need n >= 1".into()));
    }
    ZigzagTable::new(n).series(ring)
}

/// `B(a) = beta * a`, e.g.f. `(sec t + tan t) A(t)`.
pub fn boustrophedon(a: &HurwitzSeries) -> Result<HurwitzSeries> {
    zigzag_numbers(a.ring(), a.precision())?.convolve(a)
}

/// Stirling tables `(S2, c)` with rows `0..=n`.
pub fn stirling_tables(n: usize) -> (TriangleTable, TriangleTable) {
    (stirling2_table(n), stirling1_unsigned_table(n))
}

fn triangular_apply(
    a: &HurwitzSeries,
    table: &TriangleTable,
    signed: bool,
) -> HurwitzSeries {
    let ring = a.ring();
    let n = a.precision();
    let exec = Execution::preferred().for_len(n, par::COEFF_THRESHOLD);
    let coeffs = par::map_indexed(exec, n, |k| {
        table.row(k).iter().enumerate().fold(ring.zero(), |acc, (h, s)| {
            let term = a.coeff(h).mul_int(s);
            if signed && (k - h) % 2 == 1 {
                acc - term
            } else {
                acc + term
            }
        })
    });
    HurwitzSeries::new(ring, coeffs).expect("coefficients stay in the ring")
}

/// `S(a)_n = sum_h S2(n,h) a_h`; the e.g.f. becomes `A(e^t - 1)`.
pub fn stirling_transform(a: &HurwitzSeries) -> HurwitzSeries {
    triangular_apply(a, &stirling2_table(a.precision() - 1), false)
}

/// `S^{-1}(a)_n = sum_h (-1)^{n-h} c(n,h) a_h`.
pub fn stirling_inverse(a: &HurwitzSeries) -> HurwitzSeries {
    triangular_apply(a, &stirling1_unsigned_table(a.precision() - 1), true)
}

fn require_rationals(a: &HurwitzSeries) -> Result<()> {
    match a.ring() {
        Ring::Rationals => Ok(()),
        r => Err(Error::RingUnsupported(r)),
    }
}

/// Formal exponential of a series with zero constant term.
///
/// `b_0 = 1`, `b_{n+1} = sum_{k=0}^n C(n,k) a_{k+1} b_{n-k}` (from
/// `B' = A' B`). Same precision as the input.
pub fn series_exp(a: &HurwitzSeries) -> Result<HurwitzSeries> {
    require_rationals(a)?;
    if !a.coeff(0).is_zero() {
        return Err(Error::DomainViolation("exp needs a zero constant term".into()));
    }
    let ring = a.ring();
    let n = a.precision();
    let binom = pascal(n);
    let mut b = Vec::with_capacity(n);
    b.push(ring.one());
    for m in 0..n - 1 {
        let row = binom.row(m);
        let next = (0..=m).fold(ring.zero(), |acc, k| {
            acc + (a.coeff(k + 1) * &b[m - k]).mul_int(&row[k])
        });
        b.push(next);
    }
    HurwitzSeries::new(ring, b)
}

/// Formal logarithm of a series with constant term 1:
/// `log a = J(a' * a^{-1})` with zero constant term. Same precision as the
/// input.
pub fn series_log(a: &HurwitzSeries) -> Result<HurwitzSeries> {
    require_rationals(a)?;
    if !a.coeff(0).is_one() {
        return Err(Error::DomainViolation("log needs constant term 1".into()));
    }
    let ring = a.ring();
    if a.precision() == 1 {
        return HurwitzSeries::zero(ring, 1);
    }
    let log_derivative = a.derivative()?.convolve(&a.invert()?)?;
    log_derivative.prepend(&ring.zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Neither,
}

/// Classifies a series by which coefficients vanish. The zero series is
/// reported as `Even`; use [`is_odd`] to test oddness on its own.
pub fn parity_check(a: &HurwitzSeries) -> Parity {
    if is_even(a) {
        Parity::Even
    } else if is_odd(a) {
        Parity::Odd
    } else {
        Parity::Neither
    }
}

/// Every odd-index coefficient is zero.
pub fn is_even(a: &HurwitzSeries) -> bool {
    a.coeffs().iter().skip(1).step_by(2).all(RingValue::is_zero)
}

/// Every even-index coefficient (including `a_0`) is zero.
pub fn is_odd(a: &HurwitzSeries) -> bool {
    a.coeffs().iter().step_by(2).all(RingValue::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn z(v: &[i64]) -> HurwitzSeries {
        HurwitzSeries::from_i64s(Ring::Integers, v).unwrap()
    }

    fn q(v: &[(i64, i64)]) -> HurwitzSeries {
        let ring = Ring::Rationals;
        HurwitzSeries::new(ring, v.iter().map(|&(p, d)| ring.from_fraction(p, d).unwrap()).collect())
            .unwrap()
    }

    #[test]
    fn alternating_sign_examples() {
        assert_eq!(alternating_sign(&z(&[1, 1, 1, 1])), z(&[1, -1, 1, -1]));
        let a = z(&[3, 1, 4, 1]);
        assert_eq!(alternating_sign(&alternating_sign(&a)), a);
        let (a, b) = (z(&[1, 2]), z(&[1, 3]));
        let lhs = alternating_sign(&a.convolve(&b).unwrap());
        let rhs = alternating_sign(&a).convolve(&alternating_sign(&b)).unwrap();
        assert_eq!(lhs, z(&[1, -5]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn binomial_interpolated_examples() {
        let zr = Ring::Integers;
        let a = z(&[3, -1, 4, 1]);
        assert_eq!(binomial_interpolated(&a, &zr.zero()).unwrap(), a);
        let id = z(&[1, 0, 0, 0]);
        assert_eq!(binomial_interpolated(&id, &zr.from_i64(2)).unwrap(), z(&[1, 2, 4, 8]));
        assert_eq!(binomial_interpolated(&z(&[1, 1, 1]), &zr.one()).unwrap(), z(&[1, 2, 4]));
        assert!(binomial_interpolated(&a, &Ring::Rationals.one()).is_err());
    }

    #[test]
    fn zigzag_prefix_and_oracle() {
        let beta = zigzag_numbers(Ring::Integers, 11).unwrap();
        assert_eq!(beta, z(&[1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521]));
        let table = ZigzagTable::new(30);
        assert_eq!(table.beta(), oracle::zigzag_quadratic(30).as_slice());
        assert!(table.beta().iter().all(|b| b > &BigInt::from(0)));
    }

    #[test]
    fn zigzag_is_its_own_alternating_inverse() {
        let beta = zigzag_numbers(Ring::Integers, 12).unwrap();
        assert!(alternating_sign(&beta).convolve(&beta).unwrap().is_identity());
        assert!(boustrophedon(&alternating_sign(&beta)).unwrap().is_identity());
    }

    #[test]
    fn boustrophedon_examples() {
        let id = HurwitzSeries::identity(Ring::Integers, 8).unwrap();
        assert_eq!(boustrophedon(&id).unwrap(), zigzag_numbers(Ring::Integers, 8).unwrap());
        let ones = HurwitzSeries::ones(Ring::Integers, 6).unwrap();
        assert_eq!(boustrophedon(&ones).unwrap(), z(&[1, 2, 4, 9, 24, 77]));
    }

    #[test]
    fn boustrophedon_matches_triangle_definition() {
        for seed in 0..20i64 {
            let a: Vec<i64> = (0..12).map(|i| (i * 7 + seed * 3) % 11 - 5).collect();
            let a = z(&a);
            let got = boustrophedon(&a).unwrap();
            assert_eq!(got.coeffs(), oracle::boustrophedon_triangle(a.coeffs()));
        }
    }

    #[test]
    fn stirling_examples() {
        let (s2, c1) = stirling_tables(10);
        assert_eq!(s2.get(4, 2), BigInt::from(oracle::count_set_partitions(4, 2)));
        assert_eq!(c1.get(4, 2), BigInt::from(oracle::count_permutations_with_cycles(4, 2)));
        for n in 0..=6 {
            for k in 0..=n {
                assert_eq!(s2.get(n, k), BigInt::from(oracle::count_set_partitions(n, k)));
                assert_eq!(c1.get(n, k), BigInt::from(oracle::count_permutations_with_cycles(n, k)));
            }
        }
        let id = HurwitzSeries::identity(Ring::Integers, 6).unwrap();
        assert_eq!(stirling_transform(&id), id);
        let ones = HurwitzSeries::ones(Ring::Integers, 8).unwrap();
        assert_eq!(stirling_transform(&ones), z(&[1, 1, 2, 5, 15, 52, 203, 877]));
        let a = z(&[1, 3, 0, 7]);
        assert_eq!(stirling_inverse(&stirling_transform(&a)), a);
    }

    #[test]
    fn stirling_egf_is_composition_with_exp_minus_one() {
        let a = q(&[(1, 1), (-2, 3), (5, 1), (0, 1), (7, 2), (-1, 9), (3, 1), (1, 4)]);
        let s = stirling_transform(&a);
        let rats: Vec<BigRational> = a.coeffs().iter().map(|c| c.as_rational().unwrap().clone()).collect();
        let composed = oracle::compose_exp_minus_one(&rats);
        let expect: Vec<RingValue> = composed.into_iter().map(RingValue::Rat).collect();
        assert_eq!(s.coeffs(), expect.as_slice());
    }

    #[test]
    fn exp_log_examples() {
        let zero = HurwitzSeries::zero(Ring::Rationals, 5).unwrap();
        assert!(series_exp(&zero).unwrap().is_identity());
        let t = q(&[(0, 1), (1, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(series_exp(&t).unwrap(), HurwitzSeries::ones(Ring::Rationals, 5).unwrap());
        let a = q(&[(0, 1), (1, 2), (0, 1), (-1, 3)]);
        assert_eq!(series_log(&series_exp(&a).unwrap()).unwrap(), a);
        assert!(matches!(series_exp(&z(&[0, 1])), Err(Error::RingUnsupported(_))));
        assert!(matches!(series_exp(&q(&[(1, 1), (1, 1)])), Err(Error::DomainViolation(_))));
        assert!(matches!(series_log(&q(&[(2, 1), (1, 1)])), Err(Error::DomainViolation(_))));
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_check(&z(&[1, 0, 3, 0])), Parity::Even);
        assert_eq!(parity_check(&z(&[0, 2, 0, 5])), Parity::Odd);
        assert_eq!(parity_check(&z(&[1, 1, 0, 0])), Parity::Neither);
    }

    fn series_z(n: usize) -> impl Strategy<Value = HurwitzSeries> {
        prop::collection::vec(-9i64..=9, n).prop_map(|v| z(&v))
    }

    fn series_q(n: usize) -> impl Strategy<Value = Vec<(i64, i64)>> {
        prop::collection::vec((-9i64..=9, 1i64..=9), n)
    }

    proptest! {
        #[test]
        fn alternating_sign_is_automorphism(a in series_z(12), b in series_z(12)) {
            let e = alternating_sign;
            prop_assert_eq!(e(&a.add(&b).unwrap()), e(&a).add(&e(&b)).unwrap());
            prop_assert_eq!(e(&a.convolve(&b).unwrap()), e(&a).convolve(&e(&b)).unwrap());
        }

        #[test]
        fn stirling_is_automorphism(a in series_z(10), b in series_z(10)) {
            let s = stirling_transform;
            prop_assert_eq!(s(&a.add(&b).unwrap()), s(&a).add(&s(&b)).unwrap());
            prop_assert_eq!(s(&a.convolve(&b).unwrap()), s(&a).convolve(&s(&b)).unwrap());
            prop_assert_eq!(stirling_inverse(&s(&a)), a.clone());
            prop_assert_eq!(s(&stirling_inverse(&a)), a);
        }

        #[test]
        fn interpolation_composes(a in series_z(10), y1 in -3i64..=3, y2 in -3i64..=3) {
            let r = Ring::Integers;
            let l = |s: &HurwitzSeries, y: i64| binomial_interpolated(s, &r.from_i64(y)).unwrap();
            prop_assert_eq!(l(&l(&a, y2), y1), l(&a, y1 + y2));
        }

        #[test]
        fn exp_of_odd_is_in_br(v in series_q(14)) {
            let h = q(&v);
            let h = h.odd_part();
            let e = series_exp(&h).unwrap();
            prop_assert!(alternating_sign(&e).convolve(&e).unwrap().is_identity());
            prop_assert_eq!(series_log(&e).unwrap(), h);
        }

        #[test]
        fn exp_turns_sums_into_products(u in series_q(10), v in series_q(10)) {
            let zero_head = |s: HurwitzSeries| s.map(|i, x| if i == 0 { Ring::Rationals.zero() } else { x.clone() });
            let a = zero_head(q(&u));
            let b = zero_head(q(&v));
            let lhs = series_exp(&a.add(&b).unwrap()).unwrap();
            let rhs = series_exp(&a).unwrap().convolve(&series_exp(&b).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
