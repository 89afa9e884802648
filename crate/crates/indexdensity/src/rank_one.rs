//! Closed-form densities for one-generator groups ⟨a⟩ and ⟨−1, a⟩.
//!
//! These are independent of the general engine and serve both as fast paths
//! and as cross-validation: the two code routes must agree to within the
//! kappa error on every input, which the test suites assert over the whole
//! reference-table range.
//!
//! Conventions: a = sign·a₀^h with a₀ > 0 not a perfect power and h maximal
//! for |a|; a₀ = a₁·a₂² with a₁ > 1 a squarefree integer; d = disc Q(sqrt a₀).
//! For ⟨−1, a⟩ the sign of a is irrelevant (⟨−1, a⟩ = ⟨−1, −a⟩), so the
//! torsion formula always works with |a|.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{gcd_u64, l_part, val, v2};
use crate::density::DensityValue;
use crate::error::{Error, Result};
use crate::factor::factor_u128;
use crate::lattice::Rational;

/// a = sign·a₀^h with the squarefree split a₀ = a₁·a₂².
#[derive(Clone, Debug)]
pub struct RankOneDecomposition {
    pub a: Rational,
    pub sign: i8,
    pub h: u64,
    pub v2h: u32,
    pub a0_num: BigUint,
    pub a0_den: BigUint,
    pub a1: BigUint,
    pub a1_primes: Vec<u128>,
    pub a2_num: BigUint,
    pub a2_den: BigUint,
    /// disc Q(sqrt(a)), sign included: the squarefree core of a is
    /// sign·a₁ for odd h (and ±1 for even h), and d is the core when it is
    /// 1 mod 4, else four times it.
    pub d: BigInt,
}

impl RankOneDecomposition {
    pub fn a1_even(&self) -> bool {
        (&self.a1 % 2u8).is_zero()
    }

    pub fn a1_is_three_multiple(&self) -> bool {
        (&self.a1 % 3u8).is_zero()
    }

    pub fn a1_divides(&self, n: u64) -> bool {
        (BigUint::from(n) % &self.a1).is_zero()
    }

    pub fn d_is_odd(&self) -> bool {
        !(&self.d % 2i8).is_zero()
    }
}

/// Split a into sign, maximal power and squarefree part.
pub fn decompose(a: Rational) -> Result<RankOneDecomposition> {
    if a.is_one() || a.is_minus_one() {
        return Err(Error::DegenerateInput);
    }
    let sign = if a.is_negative() { -1i8 } else { 1 };
    let mut vals: Vec<(u128, i64)> = Vec::new();
    for (p, e) in factor_u128(a.num.unsigned_abs())? {
        vals.push((p, e as i64));
    }
    for (p, e) in factor_u128(a.den.unsigned_abs())? {
        match vals.iter_mut().find(|(q, _)| *q == p) {
            Some((_, v)) => *v -= e as i64,
            None => vals.push((p, -(e as i64))),
        }
    }
    vals.retain(|&(_, e)| e != 0);
    vals.sort_unstable();
    debug_assert!(!vals.is_empty());
    let h = vals
        .iter()
        .fold(0u64, |acc, &(_, e)| gcd_u64(acc, e.unsigned_abs()));

    let mut a0_num = BigUint::one();
    let mut a0_den = BigUint::one();
    let mut a1 = BigUint::one();
    let mut a1_primes = Vec::new();
    let mut a2_num = BigUint::one();
    let mut a2_den = BigUint::one();
    for &(p, e) in &vals {
        let e0 = e / h as i64;
        let pb = BigUint::from(p);
        if e0 >= 0 {
            a0_num *= pb.pow(e0 as u32);
        } else {
            a0_den *= pb.pow((-e0) as u32);
        }
        let odd = e0.rem_euclid(2) == 1;
        if odd {
            a1 *= &pb;
            a1_primes.push(p);
        }
        let e2 = (e0 - if odd { 1 } else { 0 }) / 2;
        if e2 >= 0 {
            a2_num *= pb.pow(e2 as u32);
        } else {
            a2_den *= pb.pow((-e2) as u32);
        }
    }
    // squarefree core of a itself: sign * a1 when h is odd (the h-th power
    // preserves the core), bare sign when h is even
    let core: BigInt = if h % 2 == 1 {
        BigInt::from(a1.clone()) * BigInt::from(sign)
    } else {
        BigInt::from(sign)
    };
    let d = if core == BigInt::one() {
        BigInt::one()
    } else if (core.clone() % 4i8 + 4i8) % 4i8 == BigInt::one() {
        core
    } else {
        core * 4i8
    };
    Ok(RankOneDecomposition {
        a,
        sign,
        h,
        v2h: v2(h),
        a0_num,
        a0_den,
        a1,
        a1_primes,
        a2_num,
        a2_den,
        d,
    })
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rat_big(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// [F_l : Q] for F_l = Q(zeta_l, a^{1/l}): l(l-1)/gcd(h,l), except 2 when
/// l = 2 and a < 0.
fn f_degree(l: u128, h: u64, a_negative: bool) -> BigInt {
    if l == 2 && a_negative {
        return BigInt::from(2);
    }
    let g = crate::arith::gcd_u128(h as u128, l);
    BigInt::from(l) * BigInt::from(l - 1) / BigInt::from(g)
}

/// Generic odd Euler factor 1 - 1/((l-1) l): the kappa_1 factor at l.
fn generic_factor(l: u128) -> BigRational {
    BigRational::one() - rat_big(BigInt::one(), BigInt::from(l - 1) * BigInt::from(l))
}

/// Correction (relative to the Artin constant) of the factor at l = 2 of
/// prod (1 - 1/[F_l]). Zero exactly when a is a positive square.
fn two_factor_correction(dec: &RankOneDecomposition) -> BigRational {
    let f2 = f_degree(2, dec.h, dec.sign < 0);
    let true_factor = BigRational::one() - rat_big(BigInt::one(), f2);
    // the Artin product carries 1 - 1/2 at l = 2
    true_factor / rat(1, 2)
}

/// The entanglement bracket 1 - prod_{l | d} -1/([F_l] - 1), present only
/// when h·d is odd. Odd d means the primes of d are exactly the primes
/// of a₁.
fn hooley_bracket(dec: &RankOneDecomposition, skip_divisor: u64) -> BigRational {
    if dec.h % 2 == 0 || !dec.d_is_odd() {
        return BigRational::one();
    }
    let mut prod = BigRational::one();
    for &l in &dec.a1_primes {
        if l < u64::MAX as u128 && skip_divisor % (l as u64) == 0 {
            continue;
        }
        let fl = f_degree(l, dec.h, dec.sign < 0);
        prod *= rat_big(BigInt::from(-1), fl - BigInt::one());
    }
    BigRational::one() - prod
}

/// ρ(⟨a⟩, 1): Hooley's formula, with the infinite product folded through the
/// Artin constant A = kappa_1/2.
pub fn hooley_density(dec: &RankOneDecomposition, precision: f64) -> Result<DensityValue> {
    let bracket = hooley_bracket(dec, 1);
    let mut q = two_factor_correction(dec);
    for (l, _) in factor_u128(dec.h as u128)? {
        if l == 2 {
            continue;
        }
        let fl = f_degree(l, dec.h, dec.sign < 0);
        let true_factor = BigRational::one() - rat_big(BigInt::one(), fl);
        q *= true_factor / generic_factor(l);
    }
    // value = bracket * q * A = (bracket * q / 2) * kappa_1
    let prefactor = bracket * q / rat(2, 1);
    DensityValue::from_prefactor(prefactor, 1, precision)
}

/// ρ(⟨a⟩, m) for odd m (Moree's closed form).
pub fn moree_odd_density(
    dec: &RankOneDecomposition,
    m: u64,
    precision: f64,
) -> Result<DensityValue> {
    if m % 2 == 0 {
        return Err(Error::ParityViolation(
            "closed form covers odd m only; use the general engine for even m",
        ));
    }
    let bracket = hooley_bracket(dec, 2 * m);
    let mut q = rat(gcd_u64(m, dec.h) as i64, 1) / rat_big(BigInt::from(m) * BigInt::from(m), BigInt::one());
    for (l, _) in crate::factor::factor_u64(m)? {
        if val(dec.h, l) <= val(m, l) {
            q *= rat(l as i64 + 1, l as i64);
        }
    }
    // prod_{l nmid m} (1 - 1/[F_l]) relative to the Artin constant
    let mut rest = two_factor_correction(dec);
    for (l, _) in factor_u128(dec.h as u128)? {
        if l == 2 || (l < u64::MAX as u128 && m % (l as u64) == 0) {
            continue;
        }
        let fl = f_degree(l, dec.h, dec.sign < 0);
        rest *= (BigRational::one() - rat_big(BigInt::one(), fl)) / generic_factor(l);
    }
    for (l, _) in crate::factor::factor_u64(m)? {
        if l > 2 {
            rest /= generic_factor(l as u128);
        }
    }
    let prefactor = bracket * q * rest / rat(2, 1);
    DensityValue::from_prefactor(prefactor, 1, precision)
}

/// epsilon_{m,a} of the torsion analysis: 0 if v2(m) <= v2(h), 0 if m is
/// exactly divisible by 2 and h·a1 is even, else 1.
pub fn epsilon(v2m: u32, v2h: u32, ha1_even: bool) -> i64 {
    if v2m <= v2h {
        0
    } else if v2m == 1 && ha1_even {
        0
    } else {
        1
    }
}

/// tau_{a,m}: the three-case table driving the ⟨−1,a⟩ bracket.
pub fn tau(v2h: u32, v2m: u32, ha1_even: bool) -> BigRational {
    if v2h > v2m || (v2h == 0 && v2m == 0 && ha1_even) {
        BigRational::zero()
    } else if (v2h == v2m) || (v2h < v2m && v2m == 1 && ha1_even) {
        rat(-1, 3)
    } else {
        BigRational::one()
    }
}

/// tau derived from the epsilon identity
/// tau = (eps_m - c eps_{2m}) / (1 - c), c = gcd(h, 2 m2)/(4 gcd(h, m2));
/// the table above must match this expression (asserted in tests).
pub fn tau_from_epsilons(v2h: u32, v2m: u32, ha1_even: bool) -> BigRational {
    let c_num = 1u64 << v2h.min(v2m + 1);
    let c_den = 4u64 * (1u64 << v2h.min(v2m));
    let c = rat(c_num as i64, c_den as i64);
    let e_m = rat(epsilon(v2m, v2h, ha1_even), 1);
    let e_2m = rat(epsilon(v2m + 1, v2h, ha1_even), 1);
    (e_m - c.clone() * e_2m) / (BigRational::one() - c)
}

/// ρ(⟨−1, a⟩, m): the explicit torsion formula. Works with |a| (the group
/// does not see the sign of a).
pub fn minus_one_a_density(
    dec: &RankOneDecomposition,
    m: u64,
    precision: f64,
) -> Result<DensityValue> {
    debug_assert!(m >= 1);
    let h = dec.h;
    let v2m = v2(m);
    let ha1_even = h % 2 == 0 || dec.a1_even();

    let mut q = rat(gcd_u64(m, h) as i64, 2)
        / rat_big(BigInt::from(m) * BigInt::from(m), BigInt::one());
    let two_m_primes: Vec<u64> = crate::factor::factor_u64(2 * m)?
        .into_iter()
        .map(|(l, _)| l)
        .collect();
    for &l in &two_m_primes {
        let l2l = BigInt::from(l) * BigInt::from(l) - BigInt::from(l);
        q *= rat_big(l2l.clone(), l2l - BigInt::one());
        if val(m, l) >= val(h, l) {
            q *= rat(l as i64 + 1, l as i64);
        }
    }
    for (l, _) in crate::factor::factor_u64(h)? {
        if (2 * m) % l == 0 {
            continue;
        }
        let num = BigInt::from(l) * BigInt::from(l) - BigInt::from(2 * l);
        let den = BigInt::from(l) * BigInt::from(l) - BigInt::from(l) - BigInt::one();
        q *= rat_big(num, den);
    }

    let mut a1_prod = BigRational::one();
    for &l in &dec.a1_primes {
        if l < u64::MAX as u128 && (2 * m as u128) % l == 0 {
            continue;
        }
        let g = crate::arith::gcd_u128(l, h as u128);
        let num = BigInt::from(g.clone());
        let den = BigInt::from(l) * BigInt::from(l) - BigInt::from(l) - BigInt::from(g);
        a1_prod *= rat_big(-num, den);
    }
    let bracket = BigRational::one() + tau(dec.v2h, v2m, ha1_even) * a1_prod;

    // value = q * bracket * A = (q * bracket / 2) * kappa_1
    let prefactor = q * bracket / rat(2, 1);
    DensityValue::from_prefactor(prefactor, 1, precision)
}

/// l-part helper re-export used by callers assembling m-grids.
pub fn m_l_part(m: u64, l: u64) -> u64 {
    l_part(m, l)
}
