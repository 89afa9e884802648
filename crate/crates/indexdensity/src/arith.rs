//! Small integer helpers shared across the crate: gcd/valuation utilities,
//! 64-bit modular arithmetic, deterministic Miller-Rabin, plain and
//! smallest-prime-factor sieves.

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// 2-adic valuation; v2(0) is undefined and asserted against.
pub fn v2(n: u64) -> u32 {
    debug_assert!(n != 0);
    n.trailing_zeros()
}

/// l-adic valuation of n.
pub fn val(mut n: u64, l: u64) -> u32 {
    debug_assert!(n != 0 && l >= 2);
    let mut v = 0;
    while n % l == 0 {
        n /= l;
        v += 1;
    }
    v
}

/// l-part of n, i.e. l^{val(n, l)}.
pub fn l_part(n: u64, l: u64) -> u64 {
    let mut part = 1;
    let mut n = n;
    while n % l == 0 {
        n /= l;
        part *= l;
    }
    part
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
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

/// Modular inverse for prime modulus.
pub fn invmod_prime(a: u64, p: u64) -> u64 {
    powmod(a % p, p - 2, p)
}

/// Deterministic Miller-Rabin for u64 (the standard 7-base certificate).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &[2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
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

/// Primes below `limit` by a plain odd sieve.
pub fn sieve_primes(limit: u64) -> Vec<u64> {
    if limit <= 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n / 2];
    let mut primes = vec![2u64];
    let mut i = 3usize;
    while i < n {
        if !composite[i / 2] {
            primes.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j / 2] = true;
                j += 2 * i;
            }
        }
        i += 2;
    }
    primes
}

/// Smallest-prime-factor table for n <= limit; drives cheap factorization,
/// Mobius and Euler phi in the truncated-series loops.
pub struct SpfTable {
    spf: Vec<u32>,
}

impl SpfTable {
    pub fn new(limit: u64) -> Self {
        let n = limit as usize + 1;
        let mut spf = vec![0u32; n];
        for i in 2..n {
            if spf[i] == 0 {
                let mut j = i;
                while j < n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        SpfTable { spf }
    }

    pub fn limit(&self) -> u64 {
        self.spf.len() as u64 - 1
    }

    /// (prime, exponent) pairs in increasing prime order.
    pub fn factor(&self, mut n: u64) -> Vec<(u64, u32)> {
        debug_assert!(n >= 1 && n <= self.limit());
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }

    pub fn mobius(&self, mut n: u64) -> i32 {
        debug_assert!(n >= 1);
        let mut k = 0;
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            n /= p;
            if n % p == 0 {
                return 0;
            }
            k += 1;
        }
        if k % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_squarefree(&self, n: u64) -> bool {
        self.mobius(n) != 0
    }

    pub fn euler_phi(&self, n: u64) -> u64 {
        let mut phi = 1u64;
        for (p, e) in self.factor(n) {
            phi *= (p - 1) * p.pow(e - 1);
        }
        phi
    }
}

/// Euler phi via direct factorization (no table).
pub fn euler_phi_u64(n: u64) -> u64 {
    let mut phi = 1u64;
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut pe = 1;
            while n % p == 0 {
                n /= p;
                pe *= p;
            }
            phi *= pe / p * (p - 1);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}
