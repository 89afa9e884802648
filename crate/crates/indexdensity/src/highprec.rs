//! Fixed-point big reals and the Euler-product constants.
//!
//! Everything transcendental in the density formulas funnels through one
//! family of constants,
//!
//!   kappa_r = prod_{l > 2 prime} (1 - 1/((l-1) l^r)),
//!
//! the generic part of the Euler product over odd primes for a group of rank
//! r (kappa_1 is twice the Artin constant). Densities are then an exact
//! rational multiple of kappa_r, so a single rigorously bounded value per
//! rank carries the whole error budget.
//!
//! kappa_r is evaluated by the standard log / prime-zeta scheme: pull the
//! primes up to 100 out as an exact rational head, expand
//! -log(1 - f(l)) with f(l) = 1/((l-1)l^r) = x^{r+1}/(1-x), x = 1/l, into a
//! power series sum c_n x^n with nonnegative rational coefficients, and sum
//! the tail primes as sum_n c_n (P(n) - sum_{l<=100} l^{-n}) where
//! P(n) = sum_j mu(j)/j log zeta(jn) is the prime zeta function. zeta at
//! integer arguments comes from Euler-Maclaurin with exact Bernoulli numbers.
//!
//! Error model: values are scaled BigInt mantissas (value = mant / 2^bits)
//! with every arithmetic op rounded to nearest, so each op contributes at
//! most one ulp; analytic truncation tails are bounded explicitly and added
//! to the reported precision. Working precision carries 96 guard bits over
//! the requested target, which dwarfs the few thousand rounding ulps a kappa
//! evaluation accumulates.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::sieve_primes;
use crate::error::{Error, Result};

/// Fixed-point real: value = mant / 2^bits.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hp {
    mant: BigInt,
    bits: u32,
}

fn round_shr(v: BigInt, k: u32) -> BigInt {
    if k == 0 {
        return v;
    }
    let half = BigInt::one() << (k - 1);
    (v + half) >> k
}

impl Hp {
    pub fn zero(bits: u32) -> Self {
        Hp {
            mant: BigInt::zero(),
            bits,
        }
    }

    pub fn one(bits: u32) -> Self {
        Hp {
            mant: BigInt::one() << bits,
            bits,
        }
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        Hp {
            mant: BigInt::from(n) << bits,
            bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn ulp_f64(bits: u32) -> f64 {
        2f64.powi(-(bits as i32))
    }

    /// Nearest fixed-point value of n/d.
    pub fn from_ratio(n: &BigInt, d: &BigInt, bits: u32) -> Self {
        debug_assert!(!d.is_zero());
        let (n, d) = if d.is_negative() {
            (-n.clone(), -d.clone())
        } else {
            (n.clone(), d.clone())
        };
        let num = n << (bits + 1);
        let q = num / &d;
        Hp {
            mant: round_shr(q, 1),
            bits,
        }
    }

    pub fn from_rational(q: &BigRational, bits: u32) -> Self {
        Hp::from_ratio(q.numer(), q.denom(), bits)
    }

    /// Exact rational value of this fixed-point number.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << self.bits)
    }

    pub fn to_f64(&self) -> f64 {
        // split off the low bits so the conversion stays in f64 range
        let shift = self.bits.saturating_sub(96);
        let top = self.mant.clone() >> shift;
        top.to_f64().unwrap_or(0.0) * 2f64.powi(-((self.bits - shift) as i32))
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Hp {
        Hp {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Hp {
        Hp {
            mant: -self.mant.clone(),
            bits: self.bits,
        }
    }

    pub fn add(&self, rhs: &Hp) -> Hp {
        debug_assert_eq!(self.bits, rhs.bits);
        Hp {
            mant: &self.mant + &rhs.mant,
            bits: self.bits,
        }
    }

    pub fn sub(&self, rhs: &Hp) -> Hp {
        debug_assert_eq!(self.bits, rhs.bits);
        Hp {
            mant: &self.mant - &rhs.mant,
            bits: self.bits,
        }
    }

    pub fn mul(&self, rhs: &Hp) -> Hp {
        debug_assert_eq!(self.bits, rhs.bits);
        Hp {
            mant: round_shr(&self.mant * &rhs.mant, self.bits),
            bits: self.bits,
        }
    }

    pub fn div(&self, rhs: &Hp) -> Hp {
        debug_assert!(!rhs.mant.is_zero());
        let (num, den) = if rhs.mant.is_negative() {
            (-self.mant.clone(), -rhs.mant.clone())
        } else {
            (self.mant.clone(), rhs.mant.clone())
        };
        Hp {
            mant: round_shr((num << (self.bits + 1)) / den, 1),
            bits: self.bits,
        }
    }

    pub fn div_u64(&self, d: u64) -> Hp {
        Hp {
            mant: round_shr((&self.mant << 1) / BigInt::from(d), 1),
            bits: self.bits,
        }
    }

    pub fn mul_i64(&self, k: i64) -> Hp {
        Hp {
            mant: &self.mant * BigInt::from(k),
            bits: self.bits,
        }
    }

    /// Natural log for arguments in roughly (0.3, 3): atanh series on
    /// z = (x-1)/(x+1). Truncation stops at mantissa exhaustion, so the
    /// series tail is below one ulp; the handful of rounding ulps per
    /// iteration is covered by the caller's guard-bit budget.
    pub fn ln(&self) -> Hp {
        assert!(self.mant.is_positive(), "ln of non-positive value");
        let one = Hp::one(self.bits);
        let z = self.sub(&one).div(&self.add(&one));
        let z2 = z.mul(&z);
        let mut sum = Hp::zero(self.bits);
        let mut zpow = z;
        let mut k = 1u64;
        loop {
            let term = zpow.div_u64(k);
            if term.mant.is_zero() {
                break;
            }
            sum = sum.add(&term);
            zpow = zpow.mul(&z2);
            if zpow.mant.is_zero() {
                break;
            }
            k += 2;
        }
        sum.mul_i64(2)
    }

    /// exp for |x| <= ~1.5 by plain Taylor summation.
    pub fn exp(&self) -> Hp {
        let mut sum = Hp::one(self.bits);
        let mut term = Hp::one(self.bits);
        let mut n = 1u64;
        loop {
            term = term.mul(self).div_u64(n);
            if term.mant.is_zero() {
                break;
            }
            sum = sum.add(&term);
            n += 1;
        }
        sum
    }

    /// Parse a plain decimal literal (optionally signed) exactly.
    pub fn from_decimal_str(s: &str, bits: u32) -> Result<Hp> {
        let s = s.trim();
        let (sign, rest) = match s.strip_prefix('-') {
            Some(r) => (-1, r),
            None => (1, s),
        };
        let (int_part, frac_part) = match rest.split_once('.') {
            Some((a, b)) => (a, b),
            None => (rest, ""),
        };
        let digits: String = format!("{int_part}{frac_part}");
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal literal {s:?}")));
        }
        let n = BigInt::parse_bytes(digits.as_bytes(), 10).unwrap() * sign;
        let d = BigInt::from(10u8).pow(frac_part.len() as u32);
        Ok(Hp::from_ratio(&n, &d, bits))
    }
}

/// Bernoulli numbers B_0, B_1, ... (B_1 = -1/2), grown on demand.
fn bernoulli_upto(n: usize) -> Vec<BigRational> {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![BigRational::one()]));
    let mut b = cache.lock().unwrap();
    while b.len() <= n {
        let m = b.len(); // computing B_m from sum_{k<m} C(m+1,k) B_k = -(m+1)B_m... rearranged
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (k, bk) in b.iter().enumerate() {
            acc += BigRational::new(binom.clone(), BigInt::one()) * bk;
            // C(m+1, k+1) = C(m+1, k) * (m+1-k) / (k+1)
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        let bm = -acc / BigRational::new(BigInt::from(m + 1), BigInt::one());
        b.push(bm);
    }
    b[..=n].to_vec()
}

/// zeta(s) for integer s >= 2 by Euler-Maclaurin with exact Bernoulli terms.
/// Returns (value, absolute error bound).
pub fn zeta_int(s: u64, bits: u32) -> (Hp, f64) {
    assert!(s >= 2);
    let ulp = Hp::ulp_f64(bits);
    let mut n: u64 = 64;
    'restart: loop {
        // k-sum: skip terms below quarter-ulp, they cannot move the result
        let mut sum = Hp::zero(bits);
        let mut ops = 0u64;
        for k in 1..=n {
            if (k as f64).ln() * s as f64 > (bits as f64 + 2.0) * std::f64::consts::LN_2 {
                break;
            }
            let ks = BigInt::from(k).pow(s as u32);
            sum = sum.add(&Hp::from_ratio(&BigInt::one(), &ks, bits));
            ops += 1;
        }
        // N^{1-s}/(s-1) - N^{-s}/2
        let ns1 = BigInt::from(n).pow((s - 1) as u32) * BigInt::from(s - 1);
        sum = sum.add(&Hp::from_ratio(&BigInt::one(), &ns1, bits));
        let ns = BigInt::from(n).pow(s as u32) * BigInt::from(2u8);
        sum = sum.sub(&Hp::from_ratio(&BigInt::one(), &ns, bits));
        ops += 2;

        // Bernoulli corrections T_i = B_{2i}/(2i)! * (s)(s+1)...(s+2i-2) * N^{1-s-2i}
        let eps_q = ulp / 4.0;
        let mut rising = BigInt::one(); // s(s+1)...(s+2i-2)
        let mut fact = BigInt::from(2u8); // (2i)!
        let mut npow = BigInt::from(n).pow((s + 1) as u32); // N^{s+2i-1}
        let n2 = BigInt::from(n) * BigInt::from(n);
        let mut prev_mag = f64::INFINITY;
        let mut i = 1usize;
        loop {
            let bern = bernoulli_upto(2 * i);
            let b2i = &bern[2 * i];
            if i == 1 {
                rising = BigInt::from(s);
            } else {
                rising *= BigInt::from(s + 2 * i as u64 - 3) * BigInt::from(s + 2 * i as u64 - 2);
                fact *= BigInt::from(2 * i as u64 - 1) * BigInt::from(2 * i as u64);
                npow *= &n2;
            }
            let num = b2i.numer() * &rising;
            let den = b2i.denom() * &fact * &npow;
            let term = Hp::from_ratio(&num, &den, bits);
            let mag = term.to_f64().abs();
            if mag <= eps_q {
                // enveloping alternating tail: remainder below first omitted
                // term; x4 safety
                let err = (ops + i as u64 + 4) as f64 * ulp + 4.0 * mag.max(eps_q);
                return (sum, err);
            }
            if mag >= prev_mag {
                // divergent regime reached before target: more points needed
                n *= 2;
                continue 'restart;
            }
            prev_mag = mag;
            sum = sum.add(&term);
            i += 1;
            if i > 4096 {
                n *= 2;
                continue 'restart;
            }
        }
    }
}

/// log zeta(s) with error bound.
pub fn log_zeta(s: u64, bits: u32) -> (Hp, f64) {
    let (z, zerr) = zeta_int(s, bits);
    let l = z.ln();
    // d(log)/dz = 1/z <= 1 for z >= 1; series+rounding covered by guard ulps
    (l, zerr + 64.0 * Hp::ulp_f64(bits))
}

/// P(n) - sum over the excluded primes of l^{-n}, where P is the prime zeta
/// function, via Moebius inversion of log zeta.
fn prime_zeta_excluding(n: u64, excluded: &[u64], bits: u32, memo: &mut ZetaMemo) -> (Hp, f64) {
    let cap = bits as u64 + 16;
    let mut sum = Hp::zero(bits);
    let mut err = 0.0;
    let mut j = 1u64;
    while j * n <= cap {
        let mu = mobius_small(j);
        if mu != 0 {
            let (lz, lzerr) = memo.log_zeta(j * n, bits);
            let term = lz.div_u64(j).mul_i64(mu as i64);
            sum = sum.add(&term);
            err += lzerr / j as f64 + Hp::ulp_f64(bits);
        }
        j += 1;
    }
    // tail over j n > cap: |log zeta(t)| <= 3 * 2^-t
    err += 6.0 * 2f64.powi(-(cap as i32));
    for &l in excluded {
        if (l as f64).ln() * n as f64 <= (bits as f64 + 2.0) * std::f64::consts::LN_2 {
            let ln_pow = BigInt::from(l).pow(n as u32);
            sum = sum.sub(&Hp::from_ratio(&BigInt::one(), &ln_pow, bits));
        }
        err += Hp::ulp_f64(bits);
    }
    (sum, err)
}

fn mobius_small(mut j: u64) -> i32 {
    let mut k = 0;
    let mut p = 2;
    while p * p <= j {
        if j % p == 0 {
            j /= p;
            if j % p == 0 {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if j > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

struct ZetaMemo {
    map: HashMap<u64, (Hp, f64)>,
}

impl ZetaMemo {
    fn new() -> Self {
        ZetaMemo {
            map: HashMap::new(),
        }
    }
    fn log_zeta(&mut self, s: u64, bits: u32) -> (Hp, f64) {
        self.map
            .entry(s)
            .or_insert_with(|| log_zeta(s, bits))
            .clone()
    }
}

/// The constant kappa_r with its rank and rigorous error bound.
#[derive(Clone, Debug)]
pub struct EulerConstantTable {
    pub rank: u32,
    pub kappa_odd: Hp,
    pub precision: f64,
}

const HEAD_PRIME_LIMIT: u64 = 100;
const MIN_TARGET: f64 = 7e-61; // 2^-200, the contract floor

/// Power-series coefficients c_n of -log(1 - x - x^{r+1}) + log(1 - x)
/// up to degree nmax; these satisfy c_n >= 0 and
/// sum_{l} c_n l^{-n} reconstructs -log of the Euler factor at l.
fn kappa_series_coeffs(r: u32, nmax: usize) -> Vec<BigRational> {
    // q_n = [x^n] sum_i u^i / i with u = x + x^{r+1} (integer coefficients)
    let mut q = vec![BigRational::zero(); nmax + 1];
    let mut upow = vec![BigInt::zero(); nmax + 1];
    let r1 = r as usize + 1;
    upow[1] = BigInt::one();
    if r1 <= nmax {
        upow[r1] = BigInt::one();
    }
    for i in 1..=nmax {
        if i > 1 {
            // upow *= u, truncated at nmax
            let mut next = vec![BigInt::zero(); nmax + 1];
            for (deg, c) in upow.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if deg + 1 <= nmax {
                    next[deg + 1] += c;
                }
                if deg + r1 <= nmax {
                    next[deg + r1] += c;
                }
            }
            upow = next;
            if upow.iter().all(|c| c.is_zero()) {
                break;
            }
        }
        let inv_i = BigRational::new(BigInt::one(), BigInt::from(i));
        for (deg, c) in upow.iter().enumerate() {
            if !c.is_zero() {
                q[deg] += BigRational::new(c.clone(), BigInt::one()) * &inv_i;
            }
        }
    }
    // c_n = q_n - 1/n
    for (n, qn) in q.iter_mut().enumerate().skip(1) {
        *qn -= BigRational::new(BigInt::one(), BigInt::from(n));
        debug_assert!(!qn.is_negative());
    }
    q
}

/// Analytic tail of the coefficient series past degree nmax: the generating
/// function F(x) = -log(1 - x - x^{r+1}) has nonnegative coefficients and
/// F_r(0.6) <= F_1(0.6) = -log(0.04) < 3.25, so c_n <= q_n <= 3.25/0.6^n;
/// and the prime tail satisfies P_{>100}(n) <= 102 * 101^{-n}.
fn kappa_tail_bound(nmax: usize) -> f64 {
    let rho: f64 = 1.0 / (0.6 * 101.0);
    3.25 * 102.0 * rho.powi(nmax as i32 + 1) / (1.0 - rho)
}

fn compute_kappa(r: u32, target: f64) -> Result<EulerConstantTable> {
    if !(target >= MIN_TARGET) {
        return Err(Error::PrecisionUnreachable(target));
    }
    let needed_bits = (-target.log2()).ceil() as u32;
    let bits = (needed_bits + 96).clamp(224, 512);
    let ulp = Hp::ulp_f64(bits);

    // exact head over odd primes below 100
    let head_primes: Vec<u64> = sieve_primes(HEAD_PRIME_LIMIT)
        .into_iter()
        .filter(|&p| p > 2)
        .collect();
    let mut head = BigRational::one();
    for &l in &head_primes {
        let den = BigInt::from(l - 1) * BigInt::from(l).pow(r);
        head *= BigRational::one() - BigRational::new(BigInt::one(), den);
    }

    // truncation point for the series over n
    let mut nmax = (r as usize + 1).max(8);
    while kappa_tail_bound(nmax) > target / 8.0 {
        nmax += 4;
        if nmax > 512 {
            return Err(Error::PrecisionUnreachable(target));
        }
    }

    let coeffs = kappa_series_coeffs(r, nmax);
    let excluded: Vec<u64> = sieve_primes(HEAD_PRIME_LIMIT); // 2 and the head primes
    let mut memo = ZetaMemo::new();
    let mut s_sum = Hp::zero(bits);
    let mut s_err = kappa_tail_bound(nmax);
    for (n, c) in coeffs.iter().enumerate().skip(r as usize + 1) {
        if c.is_zero() {
            continue;
        }
        let (pz, pz_err) = prime_zeta_excluding(n as u64, &excluded, bits, &mut memo);
        let c_hp = Hp::from_rational(c, bits);
        s_sum = s_sum.add(&c_hp.mul(&pz));
        let c_f = c.to_f64().unwrap_or(0.0);
        s_err += c_f * pz_err + 2.0 * ulp;
    }

    // kappa = head * exp(-S); S in [0, 0.011]
    let tail_factor = s_sum.neg().exp();
    let head_hp = Hp::from_rational(&head, bits);
    let kappa = head_hp.mul(&tail_factor);
    let precision = s_err + 256.0 * ulp;
    if !(precision <= target) {
        return Err(Error::PrecisionUnreachable(target));
    }
    debug_assert!(kappa.to_f64() > 0.0 && kappa.to_f64() < 1.0);
    Ok(EulerConstantTable {
        rank: r,
        kappa_odd: kappa,
        precision,
    })
}

/// kappa_r to within target_precision, cached per (rank, working precision).
pub fn euler_kappa(r: u32, target_precision: f64) -> Result<EulerConstantTable> {
    if r == 0 {
        return Err(Error::RankZero);
    }
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), EulerConstantTable>>> = OnceLock::new();
    let needed_bits = (-target_precision.max(MIN_TARGET).log2()).ceil() as u32;
    let key = (r, needed_bits);
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let table = compute_kappa(r, target_precision)?;
    cache.lock().unwrap().insert(key, table.clone());
    Ok(table)
}

/// The Artin constant A = prod_l (1 - 1/(l^2 - l)) = kappa_1 / 2.
pub fn artin_constant(target_precision: f64) -> Result<Hp> {
    let t = euler_kappa(1, target_precision * 2.0)?;
    Ok(t.kappa_odd.div_u64(2))
}

/// Direct-product oracle for kappa_r over primes below `limit`, with a bound
/// on the discarded tail. Used only by tests and the examples as an
/// independent cross-check of the series machinery.
pub fn kappa_direct_oracle(r: u32, limit: u64, bits: u32) -> (Hp, f64) {
    let mut prod = Hp::one(bits);
    for l in sieve_primes(limit).into_iter().filter(|&p| p > 2) {
        let den = BigInt::from(l - 1) * BigInt::from(l).pow(r);
        let factor = Hp::from_ratio(&(den.clone() - 1), &den, bits);
        prod = prod.mul(&factor);
    }
    // prod >= kappa >= prod*(1 - tail), tail <= 1/(r (limit-1)^r)
    let tail = 1.0 / (r as f64 * ((limit - 1) as f64).powi(r as i32));
    (prod, tail)
}

/// Decimal rendering used by the CLI tables: `sig` significant digits,
/// truncated toward zero or rounded half-even. Deterministic in the exact
/// mantissa, hence byte-stable across runs.
pub fn decimal_string(value: &Hp, sig: usize, truncate: bool) -> String {
    let q = value.to_rational();
    decimal_of_rational(&q, sig, truncate)
}

pub fn decimal_of_rational(q: &BigRational, sig: usize, truncate: bool) -> String {
    assert!(sig >= 1);
    if q.is_zero() {
        return "0".into();
    }
    let neg = q.is_negative();
    let q = q.abs();
    // decimal exponent e with 10^e <= q < 10^{e+1}
    let mut e: i64 = 0;
    let one = BigRational::one();
    let ten = BigRational::new(BigInt::from(10u8), BigInt::one());
    let mut scaled = q.clone();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < one {
        scaled *= &ten;
        e -= 1;
    }
    // digits = q * 10^{sig-1-e}, truncated or rounded half-even
    let shift = sig as i64 - 1 - e;
    let scaled = if shift >= 0 {
        q * BigRational::new(BigInt::from(10u8).pow(shift as u32), BigInt::one())
    } else {
        q / BigRational::new(BigInt::from(10u8).pow((-shift) as u32), BigInt::one())
    };
    let mut digits = if truncate {
        scaled.to_integer()
    } else {
        round_half_even(&scaled)
    };
    // rounding may have carried into one extra digit (e.g. 9.99 -> 10.0)
    let mut e = e;
    let bound = BigInt::from(10u8).pow(sig as u32);
    if digits >= bound {
        digits /= BigInt::from(10u8);
        e += 1;
    }
    let ds = digits.to_string();
    debug_assert_eq!(ds.len(), sig);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if e >= 0 && (e as usize) < sig {
        let point = e as usize + 1;
        out.push_str(&ds[..point]);
        if point < sig {
            out.push('.');
            out.push_str(&ds[point..]);
        }
    } else if e < 0 && e >= -9 {
        out.push_str("0.");
        for _ in 0..(-e - 1) {
            out.push('0');
        }
        out.push_str(&ds);
    } else {
        out.push_str(&ds[..1]);
        out.push('.');
        out.push_str(&ds[1..]);
        out.push_str(&format!("e{e}"));
    }
    out
}

fn round_half_even(q: &BigRational) -> BigInt {
    let floor = q.floor().to_integer();
    let frac = q - BigRational::new(floor.clone(), BigInt::one());
    let half = BigRational::new(BigInt::one(), BigInt::from(2u8));
    if frac > half {
        floor + 1
    } else if frac < half {
        floor
    } else if (&floor % 2i32).is_zero() {
        floor
    } else {
        floor + 1
    }
}

/// Sign helper for tests on rationals.
pub fn rational_sign(q: &BigRational) -> Sign {
    q.numer().sign()
}
