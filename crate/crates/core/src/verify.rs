//! Seeded randomized property suites.
//!
//! Each suite is a list of fixed checks (run once) and randomized checks
//! (run once per trial). Every randomized check draws from its own ChaCha
//! stream derived from `(seed, suite, check, trial)`, so a report depends
//! only on the seed and trial count, never on thread scheduling.
//!
//! Random coefficients are drawn uniformly from `[-9, 9]` over `Z`; rationals
//! are `p/q` with `p` in `[-9, 9]` and `q` in `[1, 9]`.

use std::fmt::{self, Write as _};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bell::{complete_bell, invert_closed_form, invert_transform, partial_bell, BellInput};
use crate::br::{
    autoconvolution, dynamics_converge, even_from_odd, even_terms, is_in_br, iterate_auto,
    odd_from_even, odd_terms, transform_u, u_egf_check, DynamicsTrace,
};
use crate::oracle;
use crate::par::{self, Execution};
use crate::ring::{Ring, RingValue};
use crate::series::HurwitzSeries;
use crate::transforms::{
    alternating_sign, binomial_interpolated, boustrophedon, is_even, is_odd, series_exp,
    series_log, stirling_inverse, stirling_tables, stirling_transform, ZigzagTable,
};
use crate::triangle::pascal_table;
use crate::Result;

pub type Rng8 = ChaCha8Rng;
type CheckResult = std::result::Result<(), String>;
type FixedCheck = fn() -> CheckResult;
type RandomCheck = fn(&mut Rng8) -> CheckResult;
type Checks = (&'static [(&'static str, FixedCheck)], &'static [(&'static str, RandomCheck)]);
type SeriesOp = Box<dyn Fn(&HurwitzSeries) -> Result<HurwitzSeries>>;

pub const DEFAULT_TRIALS: usize = 50;
pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Ring,
    Series,
    Bell,
    Transforms,
    Br,
    Dynamics,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Ring,
        Suite::Series,
        Suite::Bell,
        Suite::Transforms,
        Suite::Br,
        Suite::Dynamics,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ring => "ring",
            Suite::Series => "series",
            Suite::Bell => "bell",
            Suite::Transforms => "transforms",
            Suite::Br => "br",
            Suite::Dynamics => "dynamics",
        }
    }

    /// Resolves a suite name; `all` expands to every suite.
    pub fn resolve(name: &str) -> Option<Vec<Suite>> {
        if name == "all" {
            return Some(Suite::ALL.to_vec());
        }
        Suite::ALL.iter().copied().find(|s| s.name() == name).map(|s| vec![s])
    }

    fn checks(self) -> Checks {
        match self {
            Suite::Ring => (RING_FIXED, RING_RANDOM),
            Suite::Series => (&[], SERIES_RANDOM),
            Suite::Bell => (BELL_FIXED, BELL_RANDOM),
            Suite::Transforms => (TRANSFORMS_FIXED, TRANSFORMS_RANDOM),
            Suite::Br => (BR_FIXED, BR_RANDOM),
            Suite::Dynamics => (DYNAMICS_FIXED, DYNAMICS_RANDOM),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub trials: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            execution: Execution::Sequential,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: &'static str,
    /// `None` for fixed checks.
    pub trial: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub suite: Suite,
    pub trials: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Text report. Timing is left out so that seeded runs render
    /// byte-identically.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "suite {}: {status} trials={} checks={} failures={}",
            self.suite,
            self.trials,
            self.checks,
            self.failures.len()
        );
        for f in &self.failures {
            match f.trial {
                Some(t) => {
                    let _ = writeln!(out, "  FAIL {} trial {t}: {}", f.check, f.detail);
                }
                None => {
                    let _ = writeln!(out, "  FAIL {}: {}", f.check, f.detail);
                }
            }
        }
        out
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// RNG for one `(suite, check, trial)` cell.
pub fn trial_rng(seed: u64, suite: Suite, check: usize, trial: usize) -> Rng8 {
    let tag = ((suite as u64) << 56) ^ ((check as u64) << 40) ^ trial as u64;
    Rng8::seed_from_u64(splitmix(seed ^ splitmix(tag)))
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> VerifyReport {
    let start = Instant::now();
    let (fixed, random) = suite.checks();
    let mut failures: Vec<Failure> = fixed
        .iter()
        .filter_map(|(name, check)| {
            check().err().map(|detail| Failure {
                check: name,
                trial: None,
                detail,
            })
        })
        .collect();
    let cells = random.len() * cfg.trials;
    let results = par::map_indexed(cfg.execution, cells, |cell| {
        let (check, trial) = (cell / cfg.trials.max(1), cell % cfg.trials.max(1));
        let (name, f) = random[check];
        let mut rng = trial_rng(cfg.seed, suite, check, trial);
        f(&mut rng).err().map(|detail| Failure {
            check: name,
            trial: Some(trial),
            detail,
        })
    });
    failures.extend(results.into_iter().flatten());
    VerifyReport {
        suite,
        trials: cfg.trials,
        checks: fixed.len() + cells,
        failures,
        elapsed: start.elapsed(),
    }
}

/// Runs a suite by name (`all` runs every suite). `None` for unknown names.
pub fn run_named(name: &str, cfg: &VerifyConfig) -> Option<Vec<VerifyReport>> {
    Suite::resolve(name).map(|suites| suites.into_iter().map(|s| run_suite(s, cfg)).collect())
}

/// Random inputs with documented bounds.
pub mod gen {
    use super::*;

    pub fn z_value(rng: &mut Rng8) -> i64 {
        rng.random_range(-9..=9)
    }

    pub fn q_value(rng: &mut Rng8) -> RingValue {
        let p = rng.random_range(-9..=9);
        let q = rng.random_range(1..=9);
        Ring::Rationals.from_fraction(p, q).expect("nonzero denominator")
    }

    pub fn value(rng: &mut Rng8, ring: Ring) -> RingValue {
        match ring {
            Ring::Integers => ring.from_i64(z_value(rng)),
            Ring::Rationals => q_value(rng),
            Ring::Modular(m) => ring.from_i64(rng.random_range(0..m.get()) as i64),
        }
    }

    pub fn series(rng: &mut Rng8, ring: Ring, n: usize) -> HurwitzSeries {
        HurwitzSeries::from_fn(ring, n, |_| value(rng, ring)).expect("n >= 1")
    }

    /// Random series with constant term 1 (an element of `U_R`).
    pub fn unit_series(rng: &mut Rng8, ring: Ring, n: usize) -> HurwitzSeries {
        series(rng, ring, n).map(|i, v| if i == 0 { ring.one() } else { v.clone() })
    }

    /// Random series with a unit constant term.
    pub fn invertible_series(rng: &mut Rng8, ring: Ring, n: usize) -> HurwitzSeries {
        let s = series(rng, ring, n);
        if s.coeff(0).invert().is_ok() {
            s
        } else {
            s.map(|i, v| if i == 0 { ring.one() } else { v.clone() })
        }
    }

    pub fn values(rng: &mut Rng8, ring: Ring, n: usize) -> Vec<RingValue> {
        (0..n).map(|_| value(rng, ring)).collect()
    }

    /// Random element of `B_R` from random odd terms.
    pub fn br_element(rng: &mut Rng8, ring: Ring, n: usize) -> HurwitzSeries {
        let odds = values(rng, ring, n / 2);
        even_from_odd(ring, &odds, n).expect("integral completion")
    }
}

fn expect_eq<T: PartialEq + fmt::Display>(what: &str, got: T, want: T) -> CheckResult {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

fn ok<T>(what: &str, r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

// ---- ring ----

const RING_FIXED: &[(&str, FixedCheck)] = &[
    ("modular inverse vs brute force", || {
        for m in 2u64..60 {
            let ring = Ring::modular(m).expect("m >= 2");
            for a in 0..m {
                let fast = ring.from_i64(a as i64).invert().ok();
                let slow = oracle::brute_inverse_mod(a, m).map(|b| ring.from_i64(b as i64));
                if fast != slow {
                    return Err(format!("inverse of {a} mod {m}"));
                }
            }
        }
        Ok(())
    }),
    ("pascal symmetry and row sums", || {
        let t = pascal_table(64);
        for n in 0..=64usize {
            let sum: BigInt = t.row(n).iter().sum();
            if sum != BigInt::from(2).pow(n as u32) {
                return Err(format!("row {n} sums to {sum}"));
            }
            if (0..=n).any(|h| t.get(n, h) != t.get(n, n - h)) {
                return Err(format!("row {n} is not symmetric"));
            }
        }
        Ok(())
    }),
];

fn random_ring(rng: &mut Rng8) -> Ring {
    match rng.random_range(0..3) {
        0 => Ring::Integers,
        1 => Ring::Rationals,
        _ => Ring::modular(rng.random_range(2..50)).expect("m >= 2"),
    }
}

const RING_RANDOM: &[(&str, RandomCheck)] = &[
    ("double inverse", |rng| {
        let ring = random_ring(rng);
        let x = gen::value(rng, ring);
        if let Ok(y) = x.invert() {
            if !(&x * &y).is_one() || y.invert().ok().as_ref() != Some(&x) {
                return Err(format!("{x} in {ring}"));
            }
        }
        Ok(())
    }),
    ("exact division", |rng| {
        let ring = random_ring(rng);
        let x = gen::value(rng, ring);
        let n: i64 = loop {
            let n = rng.random_range(-12..=12);
            if n != 0 {
                break n;
            }
        };
        if let Ok(y) = x.exact_div_int(&BigInt::from(n)) {
            expect_eq(&format!("{n} * ({x} / {n}) in {ring}"), y.mul_int(&BigInt::from(n)), x)?;
        }
        Ok(())
    }),
];

// ---- series ----

fn ring_axioms(rng: &mut Rng8, ring: Ring) -> CheckResult {
    let a = gen::series(rng, ring, 12);
    let b = gen::series(rng, ring, 12);
    let c = gen::series(rng, ring, 12);
    let ab = ok("a*b", a.convolve(&b))?;
    let ctx = || format!("a={a} b={b} c={c}");
    if ab != ok("b*a", b.convolve(&a))? {
        return Err(format!("not commutative: {}", ctx()));
    }
    if ok("(ab)c", ab.convolve(&c))? != ok("a(bc)", a.convolve(&ok("bc", b.convolve(&c))?))? {
        return Err(format!("not associative: {}", ctx()));
    }
    let id = ok("identity", HurwitzSeries::identity(ring, 12))?;
    if ok("1*a", id.convolve(&a))? != a {
        return Err(format!("identity not neutral: {}", ctx()));
    }
    let lhs = ok("a(b+c)", a.convolve(&ok("b+c", b.add(&c))?))?;
    let rhs = ok("ab+ac", ab.add(&ok("ac", a.convolve(&c))?))?;
    if lhs != rhs {
        return Err(format!("not distributive: {}", ctx()));
    }
    Ok(())
}

/// Series-valued operations checked for prefix stability.
fn prefix_ops() -> Vec<(&'static str, SeriesOp)> {
    vec![
        ("square", Box::new(|a: &HurwitzSeries| a.convolve(a))),
        ("invert", Box::new(|a: &HurwitzSeries| a.invert())),
        ("derivative", Box::new(|a: &HurwitzSeries| a.derivative())),
        ("V:2", Box::new(|a: &HurwitzSeries| Ok(a.prepend_ones(2)))),
        ("E", Box::new(|a: &HurwitzSeries| Ok(alternating_sign(a)))),
        ("L:-2", Box::new(|a: &HurwitzSeries| binomial_interpolated(a, &a.ring().from_i64(-2)))),
        ("Bous", Box::new(|a: &HurwitzSeries| boustrophedon(a))),
        ("S", Box::new(|a: &HurwitzSeries| Ok(stirling_transform(a)))),
        ("Sinv", Box::new(|a: &HurwitzSeries| Ok(stirling_inverse(a)))),
        ("A", Box::new(|a: &HurwitzSeries| autoconvolution(a))),
        ("U", Box::new(|a: &HurwitzSeries| transform_u(a))),
        ("log", Box::new(|a: &HurwitzSeries| series_log(a))),
        ("exp", Box::new(|a: &HurwitzSeries| series_exp(&a.map(|i, v| if i == 0 { a.ring().zero() } else { v.clone() })))),
    ]
}

/// `f(a[..m])` equals the matching prefix of `f(a)` for every operation in
/// [`prefix_ops`]; `a` must be a rational series with `a_0 = 1`.
pub fn check_prefix_stability(a: &HurwitzSeries, m: usize) -> CheckResult {
    let short = ok("truncate", a.truncate(m))?;
    for (name, f) in prefix_ops() {
        let small = ok(name, f(&short))?;
        let big = ok(name, f(a))?;
        let cut = ok(name, big.truncate(small.precision()))?;
        if cut != small {
            return Err(format!("{name} at m={m}: {small} vs {cut}"));
        }
    }
    Ok(())
}

fn squash(a: &HurwitzSeries) -> HurwitzSeries {
    let ring = a.ring();
    a.map(|_, v| match v {
        RingValue::Int(n) => ring.from_bigint(&(n % 2)),
        other => other.clone(),
    })
}

/// `delta(a, c) <= max(delta(a, b), delta(b, c))`.
pub fn check_strong_triangle(a: &HurwitzSeries, b: &HurwitzSeries, c: &HurwitzSeries) -> CheckResult {
    let ab = ok("delta", a.delta(b))?;
    let bc = ok("delta", b.delta(c))?;
    let ac = ok("delta", a.delta(c))?;
    if ab != ok("delta", b.delta(a))? {
        return Err(format!("asymmetric: {a} {b}"));
    }
    if ac > ab.max(bc) {
        return Err(format!("strong triangle fails: {a} {b} {c}"));
    }
    Ok(())
}

const SERIES_RANDOM: &[(&str, RandomCheck)] = &[
    ("ring axioms over Z", |rng| ring_axioms(rng, Ring::Integers)),
    ("ring axioms over Q", |rng| ring_axioms(rng, Ring::Rationals)),
    ("ring axioms over Zmod:7", |rng| {
        ring_axioms(rng, Ring::modular(7).expect("7 >= 2"))
    }),
    ("double inversion", |rng| {
        let a = gen::invertible_series(rng, Ring::Rationals, 16);
        let inv = ok("invert", a.invert())?;
        if !ok("a*a^-1", a.convolve(&inv))?.is_identity() {
            return Err(format!("a * a^-1 != 1 for {a}"));
        }
        expect_eq("inverse of inverse", ok("invert", inv.invert())?, a)
    }),
    ("prefix stability", |rng| {
        let a = gen::unit_series(rng, Ring::Rationals, 14);
        let m = rng.random_range(2..=10);
        check_prefix_stability(&a, m)
    }),
    ("strong triangle", |rng| {
        let a = squash(&gen::series(rng, Ring::Integers, 6));
        let b = squash(&gen::series(rng, Ring::Integers, 6));
        let c = squash(&gen::series(rng, Ring::Integers, 6));
        check_strong_triangle(&a, &b, &c)
    }),
    ("derivative inverts prepend", |rng| {
        let a = gen::series(rng, Ring::Integers, 8);
        let r = gen::value(rng, Ring::Integers);
        expect_eq("D(J(a))", ok("derivative", ok("prepend", a.prepend(&r))?.derivative())?, a)
    }),
];

// ---- bell ----

const BELL_FIXED: &[(&str, FixedCheck)] = &[("invert transform examples", || {
    let ring = Ring::Integers;
    let v = |x: &[i64]| x.iter().map(|&i| ring.from_i64(i)).collect::<Vec<_>>();
    expect_eq(
        "I(1,0,0,0)",
        fmt_list(&ok("I", invert_transform(ring, &v(&[1, 0, 0, 0])))?),
        fmt_list(&v(&[1, 1, 1, 1])),
    )?;
    expect_eq(
        "I(1,1,1,1)",
        fmt_list(&ok("I", invert_transform(ring, &v(&[1, 1, 1, 1])))?),
        fmt_list(&v(&[1, 2, 4, 8])),
    )
})];

fn fmt_list(v: &[RingValue]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

const BELL_RANDOM: &[(&str, RandomCheck)] = &[
    ("generating identity", |rng| {
        let ring = Ring::Integers;
        let x = gen::values(rng, ring, 6);
        let input = ok("input", BellInput::new(ring, x.clone()))?;
        for k in 0..=4u32 {
            let power = oracle::poly_power(ring, &x, k, 9);
            for (n, want) in power.iter().enumerate() {
                let k = k as usize;
                if k >= 1 && n >= k && n - k + 1 > x.len() {
                    continue;
                }
                let got = ok("partial_bell", partial_bell(&input, n, k))?;
                expect_eq(&format!("B_({n},{k}) of {}", fmt_list(&x)), got, want.clone())?;
            }
        }
        Ok(())
    }),
    ("multinomial form", |rng| {
        let ring = Ring::Integers;
        let x = gen::values(rng, ring, 8);
        let input = ok("input", BellInput::new(ring, x.clone()))?;
        for n in 0..=8 {
            for k in 0..=n {
                let got = ok("partial_bell", partial_bell(&input, n, k))?;
                let want = oracle::multinomial_partial_bell(ring, &x, n, k);
                expect_eq(&format!("B_({n},{k}) of {}", fmt_list(&x)), got, want)?;
            }
        }
        Ok(())
    }),
    ("closed-form inverse", |rng| {
        let a = gen::invertible_series(rng, Ring::Rationals, 12);
        let closed = ok("closed form", invert_closed_form(&a))?;
        if !ok("a*b", a.convolve(&closed))?.is_identity() {
            return Err(format!("a * b != 1 for {a}"));
        }
        expect_eq(&format!("closed form vs recursion for {a}"), closed, ok("invert", a.invert())?)
    }),
    ("invert transform vs complete bell", |rng| {
        let ring = Ring::Integers;
        let g = gen::values(rng, ring, 11);
        let h = ok("invert transform", invert_transform(ring, &g))?;
        let input = ok("input", BellInput::new(ring, g.clone()))?;
        for (n, hn) in h.iter().enumerate() {
            let b = ok("complete_bell", complete_bell(&input, n + 1))?;
            expect_eq(&format!("h_{n} for g = {}", fmt_list(&g)), hn.clone(), b)?;
        }
        Ok(())
    }),
];

// ---- transforms ----

fn zs(v: &[i64]) -> HurwitzSeries {
    HurwitzSeries::from_i64s(Ring::Integers, v).expect("nonempty")
}

/// The zigzag, Bell-number and A000667 golden prefixes.
pub fn check_golden_sequences() -> CheckResult {
    let table = ZigzagTable::new(11);
    let want: Vec<BigInt> = [1i64, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect();
    if table.beta() != want.as_slice() {
        return Err(format!("zigzag numbers {:?}", table.beta()));
    }
    if table.beta() != oracle::zigzag_quadratic(11).as_slice() {
        return Err("zigzag numbers disagree with the quadratic recurrence".into());
    }
    let ones8 = ok("ones", HurwitzSeries::ones(Ring::Integers, 8))?;
    expect_eq("S(ones)", stirling_transform(&ones8), zs(&[1, 1, 2, 5, 15, 52, 203, 877]))?;
    let ones6 = ok("ones", HurwitzSeries::ones(Ring::Integers, 6))?;
    expect_eq("B(ones)", ok("Bous", boustrophedon(&ones6))?, zs(&[1, 2, 4, 9, 24, 77]))
}

const TRANSFORMS_FIXED: &[(&str, FixedCheck)] = &[
    ("golden sequences", check_golden_sequences),
    ("stirling tables by enumeration", || {
        let (s2, c1) = stirling_tables(7);
        for n in 0..=7 {
            for k in 0..=n {
                if s2.get(n, k) != BigInt::from(oracle::count_set_partitions(n, k)) {
                    return Err(format!("S2({n},{k})"));
                }
                if c1.get(n, k) != BigInt::from(oracle::count_permutations_with_cycles(n, k)) {
                    return Err(format!("c({n},{k})"));
                }
            }
        }
        Ok(())
    }),
    ("zigzag numbers lie in B_Z", || {
        let beta = ok("beta", ZigzagTable::new(16).series(Ring::Integers))?;
        if is_in_br(&beta) {
            Ok(())
        } else {
            Err(format!("{beta}"))
        }
    }),
];

fn automorphism(
    name: &str,
    f: impl Fn(&HurwitzSeries) -> HurwitzSeries,
    a: &HurwitzSeries,
    b: &HurwitzSeries,
) -> CheckResult {
    let sum = ok("a+b", a.add(b))?;
    if f(&sum) != ok("f(a)+f(b)", f(a).add(&f(b)))? {
        return Err(format!("{name} not additive on {a}, {b}"));
    }
    let prod = ok("a*b", a.convolve(b))?;
    if f(&prod) != ok("f(a)*f(b)", f(a).convolve(&f(b)))? {
        return Err(format!("{name} not multiplicative on {a}, {b}"));
    }
    Ok(())
}

const TRANSFORMS_RANDOM: &[(&str, RandomCheck)] = &[
    ("E is an automorphism", |rng| {
        let a = gen::series(rng, Ring::Integers, 12);
        let b = gen::series(rng, Ring::Integers, 12);
        automorphism("E", alternating_sign, &a, &b)
    }),
    ("S is an automorphism", |rng| {
        let a = gen::series(rng, Ring::Integers, 10);
        let b = gen::series(rng, Ring::Integers, 10);
        automorphism("S", stirling_transform, &a, &b)?;
        expect_eq("Sinv(S(a))", stirling_inverse(&stirling_transform(&a)), a)
    }),
    ("S e.g.f. is A(e^t - 1)", |rng| {
        let a = gen::series(rng, Ring::Rationals, 8);
        let rats: Vec<BigRational> = a
            .coeffs()
            .iter()
            .map(|c| c.as_rational().expect("rational").clone())
            .collect();
        let composed: Vec<RingValue> =
            oracle::compose_exp_minus_one(&rats).into_iter().map(RingValue::Rat).collect();
        expect_eq(
            &format!("S({a})"),
            fmt_list(stirling_transform(&a).coeffs()),
            fmt_list(&composed),
        )
    }),
    ("L composes additively", |rng| {
        let a = gen::series(rng, Ring::Integers, 10);
        let y1 = rng.random_range(-3..=3i64);
        let y2 = rng.random_range(-3..=3i64);
        let ring = Ring::Integers;
        let lhs = ok("L", binomial_interpolated(&ok("L", binomial_interpolated(&a, &ring.from_i64(y2)))?, &ring.from_i64(y1)))?;
        let rhs = ok("L", binomial_interpolated(&a, &ring.from_i64(y1 + y2)))?;
        expect_eq(&format!("L({y1}) L({y2}) on {a}"), lhs, rhs)
    }),
    ("L agrees with kernel convolution", |rng| {
        let a = gen::series(rng, Ring::Rationals, 10);
        let y = gen::q_value(rng);
        let kernel = ok("kernel", crate::transforms::interpolation_kernel(&y, 10))?;
        expect_eq(&format!("L({y}) on {a}"), ok("L", binomial_interpolated(&a, &y))?, ok("conv", kernel.convolve(&a))?)
    }),
    ("Boustrophedon matches triangle", |rng| {
        let n = rng.random_range(1..=12);
        let a = gen::series(rng, Ring::Integers, n);
        let got = ok("Bous", boustrophedon(&a))?;
        expect_eq(
            &format!("B({a})"),
            fmt_list(got.coeffs()),
            fmt_list(&oracle::boustrophedon_triangle(a.coeffs())),
        )
    }),
    ("exp of odd series lies in B_Q", |rng| {
        let h = gen::series(rng, Ring::Rationals, 14).odd_part();
        let e = ok("exp", series_exp(&h))?;
        if !is_in_br(&e) {
            return Err(format!("exp({h}) = {e}"));
        }
        expect_eq("log(exp(h))", ok("log", series_log(&e))?, h)
    }),
];

// ---- br ----

/// The worked length-6 example: for `a = (1, a_1, ..., a_5)`,
/// `A(a) = (1, a_1, a_1^2, a_3, 4 a_1 a_3 - 3 a_2^2, a_5)`,
/// `U(a) = (1, a_1, a_1^2, a_3, 4 a_1 a_3 - 3 a_1^4, a_5)` and `A^2(a) = U(a)`.
///
/// `auto` is the autoconvolution under test.
pub fn check_worked_example(
    auto: impl Fn(&HurwitzSeries) -> Result<HurwitzSeries>,
    rng: &mut Rng8,
) -> CheckResult {
    let v: Vec<i64> = (0..5).map(|_| gen::z_value(rng)).collect();
    let (a1, a2, a3, a5) = (v[0], v[1], v[2], v[4]);
    let a = zs(&[1, v[0], v[1], v[2], v[3], v[4]]);
    let want_a = zs(&[1, a1, a1 * a1, a3, 4 * a1 * a3 - 3 * a2 * a2, a5]);
    let want_u = zs(&[1, a1, a1 * a1, a3, 4 * a1 * a3 - 3 * a1.pow(4), a5]);
    let got_a = ok("A", auto(&a))?;
    expect_eq(&format!("A({a})"), got_a.clone(), want_a)?;
    expect_eq(&format!("U({a})"), ok("U", transform_u(&a))?, want_u.clone())?;
    expect_eq(&format!("A^2({a})"), ok("A", auto(&got_a))?, want_u)
}

const BR_FIXED: &[(&str, FixedCheck)] = &[("S(beta) leaves B_Z", || {
    let beta = ok("beta", ZigzagTable::new(10).series(Ring::Integers))?;
    if is_in_br(&stirling_transform(&beta)) {
        Err("S(beta) is in B_Z at N = 10".into())
    } else {
        Ok(())
    }
})];

/// Closure of `B_R` under `E`, the Boustrophedon transform and `L^(y)`.
pub fn check_closure(a: &HurwitzSeries, ys: &[i64]) -> CheckResult {
    if !is_in_br(a) {
        return Err(format!("input {a} is not in B_R"));
    }
    if !is_in_br(&alternating_sign(a)) {
        return Err(format!("E({a}) left B_R"));
    }
    if !is_in_br(&ok("Bous", boustrophedon(a))?) {
        return Err(format!("B({a}) left B_R"));
    }
    for &y in ys {
        let b = ok("L", binomial_interpolated(a, &a.ring().from_i64(y)))?;
        if !is_in_br(&b) {
            return Err(format!("L({y})({a}) left B_R"));
        }
    }
    Ok(())
}

/// Both reconstruction round trips on random odd terms with `a_1 != 0`,
/// including the sign flip `sqrt(a_2) = -a_1` giving `E(a)`.
pub fn check_round_trip(rng: &mut Rng8, n: usize) -> CheckResult {
    let q = Ring::Rationals;
    let mut odds = gen::values(rng, q, n / 2 + 1);
    while odds[0].is_zero() {
        odds[0] = gen::q_value(rng);
    }
    let a = ok("even_from_odd", even_from_odd(q, &odds, n))?;
    let longer = ok("even_from_odd", even_from_odd(q, &odds, n + 1))?;
    let evens = even_terms(&longer);
    let back = ok("odd_from_even", odd_from_even(q, &evens, &odds[0], n))?;
    expect_eq("odd_from_even(even_from_odd(odds))", back.clone(), a.clone())?;
    let flipped = ok("odd_from_even", odd_from_even(q, &evens, &-&odds[0], n))?;
    expect_eq("sign flip", flipped, alternating_sign(&a))?;
    let again = ok("even_from_odd", even_from_odd(q, &odd_terms(&back), n))?;
    expect_eq(
        "even_from_odd(odd_from_even(evens))",
        fmt_list(&even_terms(&again)),
        fmt_list(&even_terms(&a)),
    )
}

/// Bell-recurrence even terms against the multinomial expansion and the
/// coefficient-solving completion, for `a_{2n}` with `n <= max_n`.
pub fn check_even_term_oracles(odds: &[RingValue], max_n: usize) -> CheckResult {
    let len = 2 * max_n + 1;
    let lifted = odds
        .iter()
        .map(RingValue::lift_to_rationals)
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let a = ok("even_from_odd", even_from_odd(Ring::Rationals, &lifted, len))?;
    let rats: Vec<BigRational> = lifted
        .iter()
        .map(|v| v.as_rational().expect("rational").clone())
        .collect();
    let solved = oracle::complete_by_solving(&rats, len);
    for n in 1..=max_n {
        let got = a.coeff(2 * n).clone();
        expect_eq(&format!("a_{} vs solving", 2 * n), got.clone(), RingValue::Rat(solved[2 * n].clone()))?;
        let multinomial = oracle::even_term_multinomial(&rats, n);
        expect_eq(&format!("a_{} vs multinomial", 2 * n), got, RingValue::Rat(multinomial))?;
    }
    Ok(())
}

const BR_RANDOM: &[(&str, RandomCheck)] = &[
    ("worked example", |rng| check_worked_example(autoconvolution, rng)),
    ("fixed points are exactly B_R", |rng| {
        let mut a = gen::unit_series(rng, Ring::Integers, 14);
        if rng.random_bool(0.5) {
            a = ok("U", transform_u(&a))?;
        }
        let fixed = ok("A", autoconvolution(&a))? == a;
        if fixed != is_in_br(&a) {
            return Err(format!("A-fixed = {fixed} but membership = {} for {a}", !fixed));
        }
        Ok(())
    }),
    ("closure under E, Bous, L", |rng| {
        let a = gen::br_element(rng, Ring::Integers, 14);
        check_closure(&a, &[-2, -1, 1, 2])
    }),
    ("group structure", |rng| {
        let a = gen::br_element(rng, Ring::Integers, 12);
        let b = gen::br_element(rng, Ring::Integers, 12);
        if !is_in_br(&ok("a*b", a.convolve(&b))?) {
            return Err(format!("{a} * {b} left B_R"));
        }
        let e = alternating_sign(&a);
        if !is_in_br(&e) {
            return Err(format!("E({a}) left B_R"));
        }
        expect_eq(&format!("inverse of {a}"), ok("invert", a.invert())?, e)
    }),
    ("log is odd, log-derivative even", |rng| {
        let a = gen::br_element(rng, Ring::Rationals, 14);
        let log = ok("log", series_log(&a))?;
        if !is_odd(&log) {
            return Err(format!("log({a}) = {log} is not odd"));
        }
        let g = ok("g", ok("a'", a.derivative())?.convolve(&ok("1/a", a.invert())?))?;
        if !is_even(&g) {
            return Err(format!("log-derivative of {a} = {g} is not even"));
        }
        Ok(())
    }),
    ("reconstruction round trips", |rng| check_round_trip(rng, 12)),
    ("even terms vs oracles", |rng| {
        let odds = gen::values(rng, Ring::Integers, 5);
        check_even_term_oracles(&odds, 5)
    }),
    ("U agrees with its e.g.f.", |rng| {
        let a = gen::unit_series(rng, Ring::Rationals, 10);
        expect_eq(&format!("U({a})"), ok("egf", u_egf_check(&a))?, ok("U", transform_u(&a))?)
    }),
];

// ---- dynamics ----

/// Per-step agreement bound and convergence by `N/2 - 1` for `a` of even
/// precision.
pub fn check_dynamics(a: &HurwitzSeries) -> CheckResult {
    let trace = ok("dynamics", dynamics_converge(a, None))?;
    let n = a.precision();
    let limit = DynamicsTrace::step_bound(n);
    match trace.converged_at {
        Some(c) if c <= limit => {}
        other => return Err(format!("{a} converged at {other:?}, bound {limit}")),
    }
    if !trace.satisfies_bounds() {
        return Err(format!("trace bounds violated for {a}: {:?}", trace.steps));
    }
    for step in &trace.steps {
        let iterate = ok("A^n", iterate_auto(a, step.n))?;
        let agreement = ok("delta", iterate.delta(&trace.target))?.agreement();
        if agreement < DynamicsTrace::agreement_bound(step.n).min(n) {
            return Err(format!("A^{}({a}) agrees on {agreement} terms only", step.n));
        }
    }
    Ok(())
}

/// `delta(A(a), A(b)) <= delta(a, b)`.
pub fn check_contraction(a: &HurwitzSeries, b: &HurwitzSeries) -> CheckResult {
    let before = ok("delta", a.delta(b))?;
    let after = ok("delta", ok("A", autoconvolution(a))?.delta(&ok("A", autoconvolution(b))?))?;
    if after > before {
        return Err(format!("delta grew from {before} to {after} for {a}, {b}"));
    }
    Ok(())
}

const DYNAMICS_FIXED: &[(&str, FixedCheck)] = &[("worked example converges", || {
    let a = zs(&[1, 1, 2, 3, 4, 5]);
    let trace = ok("dynamics", dynamics_converge(&a, None))?;
    expect_eq("final iterate", trace.last.clone(), zs(&[1, 1, 1, 3, 9, 5]))?;
    match trace.converged_at {
        Some(c) if c <= 2 => Ok(()),
        other => Err(format!("converged at {other:?}")),
    }
})];

const DYNAMICS_RANDOM: &[(&str, RandomCheck)] = &[
    ("agreement bound and convergence", |rng| {
        check_dynamics(&gen::unit_series(rng, Ring::Integers, 20))
    }),
    ("contraction", |rng| {
        let a = gen::series(rng, Ring::Integers, 16);
        let mut b = gen::series(rng, Ring::Integers, 16);
        let share = rng.random_range(0..=16);
        b = b.map(|i, v| if i < share { a.coeff(i).clone() } else { v.clone() });
        check_contraction(&a, &b)
    }),
];
