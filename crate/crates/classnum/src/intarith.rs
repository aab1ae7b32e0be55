//! Exact integer primitives: primality, factorization, square-free
//! decomposition, integer roots.
//!
//! Primality is the deterministic Miller–Rabin variant for 64-bit
//! inputs (the twelve-prime base set), so every answer is exact, not
//! probabilistic. Factorization runs trial division for small factors
//! and Brent's cycle variant of Pollard rho on what remains, certifying
//! each produced factor prime before recording it.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Trial division cutoff before switching to Pollard rho.
const TRIAL_LIMIT: u64 = 1_000_000;

/// A nonzero integer as `sign * prod(prime^exp)`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub value: i64,
    pub sign: i8,
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Recompose `sign * prod(prime^exp)`; fails on (impossible) overflow.
    pub fn recompose(&self) -> Result<i64> {
        let mut acc: i64 = self.sign as i64;
        for &(p, e) in &self.factors {
            for _ in 0..e {
                acc = acc
                    .checked_mul(p as i64)
                    .ok_or(Error::Overflow("factorization recompose"))?;
            }
        }
        Ok(acc)
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    // n > 37 and coprime to the base set; these twelve witnesses are
    // known to be sound for all 64-bit integers.
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard rho (Brent's variant) on an odd composite with no factor
/// below `TRIAL_LIMIT`. Returns a nontrivial factor.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime(n) && n % 2 == 1);
    let mut c: u64 = 1;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let mut x: u64 = 2;
        let mut y: u64 = 2;
        let mut d: u64 = 1;
        // Batch gcds to amortize: accumulate |x - y| products.
        let mut saved_x = x;
        let mut saved_y = y;
        let mut count = 0u32;
        let mut acc: u64 = 1;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            let diff = x.abs_diff(y);
            if diff == 0 {
                d = 0; // cycle without factor; retry with a new constant
                break;
            }
            acc = mulmod(acc, diff, n);
            count += 1;
            if count == 64 {
                d = gcd_u64(acc, n);
                if d == 1 {
                    saved_x = x;
                    saved_y = y;
                    acc = 1;
                    count = 0;
                }
            }
        }
        if d == 0 || d == n {
            // Replay one step at a time from the last checkpoint in case
            // the batched product jumped past the factor.
            let (mut x, mut y) = (saved_x, saved_y);
            d = 1;
            while d == 1 {
                x = f(x);
                y = f(f(y));
                if x == y {
                    d = n;
                    break;
                }
                d = gcd_u64(x.abs_diff(y), n);
            }
        }
        if d > 1 && d < n {
            return d;
        }
        c += 1;
    }
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn push_factor(factors: &mut Vec<(u64, u32)>, p: u64) {
    match factors.iter_mut().find(|(q, _)| *q == p) {
        Some((_, e)) => *e += 1,
        None => factors.push((p, 1)),
    }
}

fn factor_into(n: u64, factors: &mut Vec<(u64, u32)>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        push_factor(factors, n);
        return;
    }
    let d = pollard_rho(n);
    factor_into(d, factors);
    factor_into(n / d, factors);
}

/// Exact factorization of a nonzero integer. Rejects 0.
pub fn factorize(n: i64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::InvalidArgument("cannot factorize 0".into()));
    }
    let sign: i8 = if n < 0 { -1 } else { 1 };
    let mut m = n.unsigned_abs();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut d: u64 = 2;
    while d <= TRIAL_LIMIT && d * d <= m {
        while m.is_multiple_of(d) {
            push_factor(&mut factors, d);
            m /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    factor_into(m, &mut factors);
    factors.sort_unstable_by_key(|&(p, _)| p);
    Ok(Factorization { value: n, sign, factors })
}

/// Square-free decomposition `v = m^2 * d` with `d` square-free and
/// `sign(d) = sign(v)`. Rejects 0.
pub fn squarefree_part(v: i64) -> Result<(u64, i64)> {
    let fac = factorize(v)?;
    let mut m: u64 = 1;
    let mut d: i64 = fac.sign as i64;
    for &(p, e) in &fac.factors {
        for _ in 0..e / 2 {
            m = m
                .checked_mul(p)
                .ok_or(Error::Overflow("squarefree_part m"))?;
        }
        if e % 2 == 1 {
            d = d
                .checked_mul(p as i64)
                .ok_or(Error::Overflow("squarefree_part d"))?;
        }
    }
    Ok((m, d))
}

/// True iff no prime square divides `v`.
pub fn is_squarefree(v: i64) -> Result<bool> {
    let fac = factorize(v)?;
    Ok(fac.factors.iter().all(|&(_, e)| e == 1))
}

/// `x^k <= v`, evaluated without overflow.
fn pow_leq(x: u64, k: u32, v: u64) -> bool {
    let mut acc: u64 = 1;
    for _ in 0..k {
        acc = match acc.checked_mul(x) {
            Some(a) if a <= v => a,
            _ => return false,
        };
    }
    true
}

/// `(floor(v^(1/k)), exact)` by binary search; exact means `root^k = v`.
pub fn integer_nth_root(v: u64, k: u32) -> (u64, bool) {
    assert!(k >= 1, "root index must be >= 1");
    if v <= 1 || k == 1 {
        return (v, true);
    }
    let mut lo: u64 = 1;
    let mut hi: u64 = 1u64 << (64 / k as u64 + 1).min(63);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pow_leq(mid, k, v) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let exact = {
        let mut acc: u64 = 1;
        let mut ok = true;
        for _ in 0..k {
            match acc.checked_mul(lo) {
                Some(a) => acc = a,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        ok && acc == v
    };
    (lo, exact)
}

/// `floor(sqrt(v))`.
pub fn isqrt(v: u64) -> u64 {
    v.isqrt()
}

/// True iff `v` is a perfect square.
pub fn is_square(v: u64) -> bool {
    let r = v.isqrt();
    r * r == v
}
