//! Integer factorization: trial division against a fixed prime table up to
//! 10^6, then Brent-variant Pollard rho on the 128-bit cofactor. Inputs that
//! survive the rho budget are rejected with FactorizationOverflow rather than
//! silently left unfactored, since every downstream formula needs the full
//! prime decomposition.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{gcd_u128, is_prime_u64, sieve_primes};
use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

fn trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve_primes(TRIAL_LIMIT))
}

fn mulmod_u128(a: u128, b: u128, m: u128) -> u128 {
    if let (Some(a64), Some(b64), Some(m64)) = (
        u64::try_from(a).ok(),
        u64::try_from(b).ok(),
        u64::try_from(m).ok(),
    ) {
        return ((a64 as u128 * b64 as u128) % m64 as u128) as u128;
    }
    let big = BigUint::from(a) * BigUint::from(b) % BigUint::from(m);
    big.to_u128().unwrap()
}

fn powmod_u128(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc: u128 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u128(acc, base, m);
        }
        base = mulmod_u128(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Miller-Rabin for u128. Deterministic below 2^64; above that, 40 fixed
/// pseudo-random bases (error probability < 4^-40, and factorization results
/// are re-checked by multiplication anyway).
pub fn is_prime_u128(n: u128) -> bool {
    if let Ok(n64) = u64::try_from(n) {
        return is_prime_u64(n64);
    }
    for &p in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    let mut base: u128 = 0x9e3779b97f4a7c15;
    'witness: for _ in 0..40 {
        base = base.wrapping_mul(0x2545f4914f6cdd1d).wrapping_add(1);
        let a = base % (n - 3) + 2;
        let mut x = powmod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent cycle variant of Pollard rho; returns a nontrivial factor.
fn rho_brent(n: u128, c: u128, iters: u64) -> Option<u128> {
    let (mut x1, mut x2) = (2u128, 2u128);
    let mut prod: u128 = 1;
    let mut interval_start = 0u64;
    let mut interval_end = 1u64;
    for e2 in 1..iters {
        x2 = (mulmod_u128(x2, x2, n) + c) % n;
        if e2 < interval_start {
            continue;
        }
        let diff = x1.abs_diff(x2);
        if diff == 0 {
            return None;
        }
        prod = mulmod_u128(prod, diff, n);
        if prod == 0 {
            let d = gcd_u128(n, diff);
            if d > 1 && d < n {
                return Some(d);
            }
            return None;
        }
        if e2 % 128 == 127 {
            let d = gcd_u128(n, prod);
            if d > 1 && d < n {
                return Some(d);
            }
        }
        if e2 == interval_end {
            x1 = x2;
            let pow2k = e2 + 1;
            interval_start = pow2k + pow2k / 2;
            interval_end = 2 * pow2k - 1;
        }
    }
    let d = gcd_u128(n, prod);
    if d > 1 && d < n {
        Some(d)
    } else {
        None
    }
}

fn factor_rec(n: u128, out: &mut Vec<u128>) -> Result<()> {
    if n == 1 {
        return Ok(());
    }
    if is_prime_u128(n) {
        out.push(n);
        return Ok(());
    }
    for c in 1..24u128 {
        let iters = 1u64 << (17 + (c as u32).min(8));
        if let Some(d) = rho_brent(n, c, iters) {
            factor_rec(d, out)?;
            factor_rec(n / d, out)?;
            return Ok(());
        }
    }
    Err(Error::FactorizationOverflow(n.to_string()))
}

/// Full factorization of n >= 1 as sorted (prime, exponent) pairs.
pub fn factor_u128(mut n: u128) -> Result<Vec<(u128, u32)>> {
    let mut primes = Vec::new();
    if n == 0 {
        return Err(Error::ZeroGenerator);
    }
    for &p in trial_primes() {
        let p = p as u128;
        if p * p > n {
            break;
        }
        while n % p == 0 {
            n /= p;
            primes.push(p);
        }
    }
    if n > 1 {
        if n < (TRIAL_LIMIT as u128) * (TRIAL_LIMIT as u128) {
            primes.push(n);
        } else {
            factor_rec(n, &mut primes)?;
        }
    }
    primes.sort_unstable();
    let mut out: Vec<(u128, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

pub fn factor_u64(n: u64) -> Result<Vec<(u64, u32)>> {
    Ok(factor_u128(n as u128)?
        .into_iter()
        .map(|(p, e)| (p as u64, e))
        .collect())
}

/// Squarefree (fundamental) core of a nonzero rational, sign included:
/// the unique squarefree integer s with q = s * (rational square).
pub fn squarefree_core(num: i128, den: i128) -> Result<i128> {
    debug_assert!(num != 0 && den != 0);
    let sign = if (num < 0) != (den < 0) { -1i128 } else { 1 };
    let mut core: i128 = 1;
    for (value, _) in [(num.unsigned_abs(), 0), (den.unsigned_abs(), 1)] {
        for (p, e) in factor_u128(value)? {
            if e % 2 == 1 {
                core = core
                    .checked_mul(p as i128)
                    .ok_or_else(|| Error::FactorizationOverflow(value.to_string()))?;
            }
        }
    }
    Ok(sign * core)
}

/// Discriminant of Q(sqrt(q)) for nonzero rational q, with the degenerate
/// convention disc = 1 when q is a square (the "field" is Q itself).
/// For squarefree core s: disc = s if s = 1 mod 4, else 4s.
pub fn disc_sqrt(num: i128, den: i128) -> Result<i128> {
    let s = squarefree_core(num, den)?;
    if s == 1 {
        return Ok(1);
    }
    Ok(if s.rem_euclid(4) == 1 { s } else { 4 * s })
}

/// One-sided check |d| divides n, for signed discriminants.
pub fn disc_divides(d: i128, n: u64) -> bool {
    let ad = d.unsigned_abs();
    ad != 0 && (n as u128) % ad == 0
}

pub fn big_is_one(b: &BigUint) -> bool {
    b.is_one()
}

pub fn big_is_zero(b: &BigUint) -> bool {
    b.is_zero()
}
