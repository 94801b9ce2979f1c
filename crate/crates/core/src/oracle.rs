//! Naive reference evaluations.
//!
//! These are slow, direct transcriptions of definitions (enumeration,
//! polynomial powers, coefficient solving). None of them call into the
//! production paths they are used to check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ring::{Ring, RingValue};

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// Coefficients `0..len` of `(sum_{i>=1} x_i z^i)^k` by repeated naive
/// polynomial multiplication. `x[0]` is `x_1`.
pub fn poly_power(ring: Ring, x: &[RingValue], k: u32, len: usize) -> Vec<RingValue> {
    let mut base = vec![ring.zero(); len];
    for (i, v) in x.iter().enumerate() {
        if i + 1 < len {
            base[i + 1] = v.clone();
        }
    }
    let mut acc = vec![ring.zero(); len];
    if len > 0 {
        acc[0] = ring.one();
    }
    for _ in 0..k {
        let mut next = vec![ring.zero(); len];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in base.iter().enumerate() {
                if i + j < len {
                    next[i + j] = &next[i + j] + &(a * b);
                }
            }
        }
        acc = next;
    }
    acc
}

/// Visits every `(i_1, ..., i_m)` of non-negative integers with
/// `sum i_j = parts` and `sum j i_j = weight`.
fn for_each_multiplicity(m: usize, parts: usize, weight: usize, f: &mut impl FnMut(&[usize])) {
    fn go(
        j: usize,
        m: usize,
        parts: usize,
        weight: usize,
        cur: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if j > m {
            if parts == 0 && weight == 0 {
                f(cur);
            }
            return;
        }
        let mut i = 0;
        while i <= parts && i * j <= weight {
            cur.push(i);
            go(j + 1, m, parts - i, weight - i * j, cur, f);
            cur.pop();
            i += 1;
        }
    }
    go(1, m, parts, weight, &mut Vec::with_capacity(m), f);
}

/// `B_{n,k}(x)` as the multinomial sum
/// `sum k!/(i_1! ... i_n!) x_1^{i_1} ... x_n^{i_n}` over
/// `i_1 + 2 i_2 + ... = n`, `i_1 + i_2 + ... = k`.
pub fn multinomial_partial_bell(ring: Ring, x: &[RingValue], n: usize, k: usize) -> RingValue {
    let mut total = ring.zero();
    let m = n.min(x.len());
    if n == 0 && k == 0 {
        return ring.one();
    }
    for_each_multiplicity(m, k, n, &mut |idx| {
        let denom = idx.iter().fold(BigInt::one(), |acc, &i| acc * factorial(i));
        let coeff = factorial(k) / denom;
        let mut term = ring.from_bigint(&coeff);
        for (j, &i) in idx.iter().enumerate() {
            term = &term * &x[j].pow(i as u32);
        }
        total = &total + &term;
    });
    total
}

pub fn brute_inverse_mod(a: u64, m: u64) -> Option<u64> {
    (0..m).find(|b| (a as u128 * *b as u128) % m as u128 == 1)
}

/// Euler zigzag numbers from `2 b_{n+1} = sum_k C(n,k) b_k b_{n-k}`
/// (`n >= 1`) seeded with `b_0 = b_1 = 1`.
pub fn zigzag_quadratic(len: usize) -> Vec<BigInt> {
    let mut b: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
    for n in 1.. {
        if b.len() >= len {
            break;
        }
        let s: BigInt = (0..=n).map(|k| binomial(n, k) * &b[k] * &b[n - k]).sum();
        b.push(s / 2);
    }
    b.truncate(len);
    b
}

/// Number of partitions of `{1..n}` into `k` blocks, by enumerating
/// restricted growth strings.
pub fn count_set_partitions(n: usize, k: usize) -> u64 {
    fn go(pos: usize, n: usize, blocks: usize, k: usize) -> u64 {
        if pos == n {
            return u64::from(blocks == k);
        }
        let mut count = 0;
        for b in 0..=blocks {
            let nb = if b == blocks { blocks + 1 } else { blocks };
            if nb <= k {
                count += go(pos + 1, n, nb, k);
            }
        }
        count
    }
    if n == 0 {
        return u64::from(k == 0);
    }
    go(0, n, 0, k)
}

/// Number of permutations of `n` elements with exactly `k` cycles, by
/// enumerating all permutations.
pub fn count_permutations_with_cycles(n: usize, k: usize) -> u64 {
    fn cycles(p: &[usize]) -> usize {
        let mut seen = vec![false; p.len()];
        let mut c = 0;
        for s in 0..p.len() {
            if !seen[s] {
                c += 1;
                let mut i = s;
                while !seen[i] {
                    seen[i] = true;
                    i = p[i];
                }
            }
        }
        c
    }
    fn go(p: &mut Vec<usize>, used: &mut Vec<bool>, k: usize, count: &mut u64) {
        if p.len() == used.len() {
            if cycles(p) == k {
                *count += 1;
            }
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                p.push(v);
                go(p, used, k, count);
                p.pop();
                used[v] = false;
            }
        }
    }
    let mut count = 0;
    go(&mut Vec::new(), &mut vec![false; n], k, &mut count);
    count
}

/// `C(1/2, k)` from the falling-product definition.
pub fn half_binomial(k: usize) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut num = BigRational::one();
    for j in 0..k {
        num *= &half - rat(BigInt::from(j));
    }
    num / rat(factorial(k))
}

/// Even terms of the `B_R` completion of the given odd terms, by solving
/// `E(a) * a = 1` one coefficient at a time:
/// `a_{2n} = -(1/2) sum_{h=1}^{2n-1} C(2n,h) (-1)^h a_h a_{2n-h}`.
///
/// `odds[i]` is `a_{2i+1}`. Returns `a_0, ..., a_{len-1}`.
pub fn complete_by_solving(odds: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut a: Vec<BigRational> = Vec::with_capacity(len);
    for m in 0..len {
        let v = if m == 0 {
            BigRational::one()
        } else if m % 2 == 1 {
            odds[m / 2].clone()
        } else {
            let mut s = BigRational::zero();
            for h in 1..m {
                let sign = if h % 2 == 0 { 1 } else { -1 };
                s += rat(binomial(m, h) * sign) * &a[h] * &a[m - h];
            }
            -s / rat(BigInt::from(2))
        };
        a.push(v);
    }
    a
}

/// `a_{2n}` of a `B_R` element by the explicit multinomial expansion
/// `(2n)! sum_{k=1}^n C(1/2,k) sum (2k)! prod 1/(i_j! ((2j-1)!)^{i_j}) a_{2j-1}^{i_j}`
/// over `i_1 + ... + i_{n-k+1} = 2k`, `i_1 + 2 i_2 + ... = n + k`.
///
/// `odds[i]` is `a_{2i+1}`.
pub fn even_term_multinomial(odds: &[BigRational], n: usize) -> BigRational {
    if n == 0 {
        return BigRational::one();
    }
    let mut total = BigRational::zero();
    for k in 1..=n {
        let m = n - k + 1;
        let mut inner = BigRational::zero();
        for_each_multiplicity(m, 2 * k, n + k, &mut |idx| {
            let mut term = rat(factorial(2 * k));
            for (j0, &i) in idx.iter().enumerate() {
                let j = j0 + 1;
                let denom = factorial(i) * num_traits::pow(factorial(2 * j - 1), i);
                term = term / rat(denom) * num_traits::pow(odds[j - 1].clone(), i);
            }
            inner += term;
        });
        total += half_binomial(k) * inner;
    }
    total * rat(factorial(2 * n))
}

/// E.g.f. coefficients of `A(e^t - 1)` by substituting the ordinary series
/// `e^t - 1 = sum_{j>=1} t^j / j!` into `sum a_n u^n / n!`.
pub fn compose_exp_minus_one(a: &[BigRational]) -> Vec<BigRational> {
    let len = a.len();
    let u: Vec<BigRational> = (0..len)
        .map(|j| {
            if j == 0 {
                BigRational::zero()
            } else {
                BigRational::new(BigInt::one(), factorial(j))
            }
        })
        .collect();
    let mut power = vec![BigRational::zero(); len];
    power[0] = BigRational::one();
    let mut out = vec![BigRational::zero(); len];
    for (n, an) in a.iter().enumerate() {
        let c = an / rat(factorial(n));
        for (o, p) in out.iter_mut().zip(&power) {
            *o += &c * p;
        }
        let mut next = vec![BigRational::zero(); len];
        for (i, p) in power.iter().enumerate() {
            for (j, uj) in u.iter().enumerate() {
                if i + j < len {
                    next[i + j] += p * uj;
                }
            }
        }
        power = next;
    }
    out.into_iter()
        .enumerate()
        .map(|(m, c)| c * rat(factorial(m)))
        .collect()
}

/// Boustrophedon transform by its triangle: row `n` starts with `a_n` and
/// each entry adds the previous row read backwards; `b_n` is the last entry
/// of row `n`.
pub fn boustrophedon_triangle(a: &[RingValue]) -> Vec<RingValue> {
    let mut out = Vec::with_capacity(a.len());
    let mut prev: Vec<RingValue> = Vec::new();
    for (n, an) in a.iter().enumerate() {
        let mut row = vec![an.clone()];
        for k in 1..=n {
            let v = &row[k - 1] + &prev[n - k];
            row.push(v);
        }
        out.push(row[n].clone());
        prev = row;
    }
    out
}
