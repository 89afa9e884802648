//! The density ρ(Γ, m) of primes whose reduction group has index exactly m.
//!
//! For Γ of rank r >= 1 the density factors as
//!
//!   ρ(Γ, m) = A(Γ, m) · ( B_m − |Γ(m₂)|/((2,m)·|Γ(2m₂)|) · B_{2m} )
//!
//! with A(Γ, m) an Euler product over odd primes and B_k a finite signed sum
//! over the entanglement group Γ̃(k) of products −1/((l−1)|Γ(l)|−1) over the
//! odd primes l | δ(γ) away from k. Everything here is exact rational except
//! the generic part of the Euler product, which is the precomputed constant
//! kappa_r: densities are represented as an exact rational prefactor times
//! kappa_r, so the reported error interval is |prefactor| times the kappa
//! error. Whether ρ = 0 is decided on the rational bracket alone, never on
//! a floating value.
//!
//! The inclusion-exclusion series sum_k mu(k)/[Q(zeta_{mk}, Γ^{1/mk}):Q] is
//! implemented as an independent consistency oracle with a deliberately crude
//! tail bound.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{gcd_u64, SpfTable};
use crate::error::{Error, Result};
use crate::factor::factor_u64;
use crate::highprec::{decimal_string, euler_kappa, Hp};
use crate::kummer::{kummer_degree_cached, tilde_gamma_cached};
use crate::lattice::{ExponentLattice, OrderCache};

/// A computed density: exact rational prefactor times kappa_{rank}, with a
/// rigorous error interval. exact_zero is decided on the prefactor.
#[derive(Clone, Debug)]
pub struct DensityValue {
    pub value: Hp,
    pub error_bound: f64,
    pub exact_zero: bool,
    /// value = prefactor * kappa_{kappa_rank} exactly.
    pub prefactor: BigRational,
    pub kappa_rank: u32,
}

impl DensityValue {
    pub(crate) fn from_prefactor(q: BigRational, rank: u32, precision: f64) -> Result<Self> {
        if q.is_zero() {
            return Ok(DensityValue {
                value: Hp::zero(128),
                error_bound: 0.0,
                exact_zero: true,
                prefactor: q,
                kappa_rank: rank,
            });
        }
        let q_mag = q.to_f64().map(f64::abs).unwrap_or(1.0).max(1e-30);
        let kappa_target = (precision / (2.0 * q_mag.max(1.0))).min(1e-12);
        let table = euler_kappa(rank, kappa_target)?;
        let bits = table.kappa_odd.bits();
        let value = Hp::from_rational(&q, bits).mul(&table.kappa_odd);
        let error_bound = q_mag * table.precision + 4.0 * Hp::ulp_f64(bits);
        Ok(DensityValue {
            value,
            error_bound,
            exact_zero: false,
            prefactor: q,
            kappa_rank: rank,
        })
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    /// Fixed display used by the CLI tables: 7 significant digits.
    pub fn display(&self, truncate: bool) -> String {
        if self.exact_zero {
            return "0".into();
        }
        decimal_string(&self.value, 7, truncate)
    }
}

fn ratio_u(n: &BigUint, d: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(n.clone()), BigInt::from(d.clone()))
}

fn ratio_ints(n: i64, d: &BigInt) -> BigRational {
    BigRational::new(BigInt::from(n), d.clone())
}

/// The exact rational q with A(Γ, m) = q * kappa_r: the 1/(phi(m)|Γ(m)|)
/// head, the finite factors at odd primes dividing m, and the bad-prime and
/// divide-out corrections that turn the generic odd Euler product into the
/// true one.
pub(crate) fn a_rational(cache: &mut OrderCache<'_>, m: u64) -> BigRational {
    let lat = cache.lattice();
    let r = lat.rank as u32;
    let phi = crate::arith::euler_phi_u64(m);
    let gamma_m = cache.gamma_order(m);
    let mut q = BigRational::new(BigInt::one(), BigInt::from(phi) * BigInt::from(gamma_m));

    let generic = |l: u128, r: u32| -> BigRational {
        // 1 - 1/((l-1) l^r), the kappa factor at l
        let den = BigInt::from(l - 1) * BigInt::from(l).pow(r);
        BigRational::one() - BigRational::new(BigInt::one(), den)
    };

    for (l, e) in factor_u64(m).expect("m fits u64") {
        if l == 2 {
            continue;
        }
        // true local factor 1 - |Γ(l^e)| / (l |Γ(l^{e+1})|)
        let up = cache.gamma_odd(l as u128, e);
        let down = cache.gamma_odd(l as u128, e + 1);
        let local =
            BigRational::one() - ratio_u(&up, &(BigUint::from(l) * down));
        q *= local;
        // kappa includes a generic factor at l; A's product over l nmid m does not
        q /= generic(l as u128, r);
    }
    let bad: Vec<u128> = lat.bad_primes.clone();
    for l in bad {
        if (l as u128) < u64::MAX as u128 && m % (l as u64) == 0 {
            continue;
        }
        let gl = cache.gamma_odd(l, 1);
        let den = BigInt::from(l - 1) * BigInt::from(gl);
        let true_factor = BigRational::one() - BigRational::new(BigInt::one(), den);
        q *= true_factor;
        q /= generic(l, r);
    }
    q
}

/// A(Γ, m) as a density value (always strictly positive).
pub fn a_factor(lat: &ExponentLattice, m: u64, precision: f64) -> Result<DensityValue> {
    if lat.rank == 0 {
        return Err(Error::RankZero);
    }
    let mut cache = OrderCache::new(lat);
    let q = a_rational(&mut cache, m);
    debug_assert!(q.is_positive());
    DensityValue::from_prefactor(q, lat.rank as u32, precision)
}

pub(crate) fn b_rational(cache: &mut OrderCache<'_>, k: u64) -> BigRational {
    let tilde = tilde_gamma_cached(cache, k);
    let alpha = k.trailing_zeros();
    let lat = cache.lattice();
    let support = lat.support.clone();
    let mut sum = BigRational::zero();
    for gamma in &tilde.elements {
        let mut term = BigRational::one();
        if alpha >= 1 {
            let half = 1u64 << (alpha - 1);
            for (j, &l) in support.iter().enumerate() {
                if l == 2 || gamma.exps.get(j).copied().unwrap_or(0) != half {
                    continue;
                }
                // l divides delta(gamma); skip l | k
                if l < u64::MAX as u128 && k % (l as u64) == 0 {
                    continue;
                }
                let gl = cache.gamma_odd(l, 1);
                let den = BigInt::from(l - 1) * BigInt::from(gl) - BigInt::one();
                term *= ratio_ints(-1, &den);
            }
        }
        sum += term;
    }
    sum
}

/// B_{Γ,k}: exact rational; equals 1 for odd k.
pub fn b_factor(lat: &ExponentLattice, k: u64) -> Result<BigRational> {
    if lat.rank == 0 {
        return Err(Error::RankZero);
    }
    Ok(b_rational(&mut OrderCache::new(lat), k))
}

pub(crate) fn rho_bracket(cache: &mut OrderCache<'_>, m: u64) -> BigRational {
    let b_m = b_rational(cache, m);
    let b_2m = b_rational(cache, 2 * m);
    let m2 = 1u64 << m.trailing_zeros();
    let gamma_m2 = cache.gamma_two(m.trailing_zeros());
    let gamma_2m2 = cache.gamma_two(m.trailing_zeros() + 1);
    let coeff = ratio_u(
        &gamma_m2,
        &(BigUint::from(gcd_u64(2, m)) * gamma_2m2),
    );
    debug_assert_eq!(m2, 1u64 << m.trailing_zeros());
    b_m - coeff * b_2m
}

/// ρ(Γ, m) by the main theorem. The bracket is exact rational arithmetic;
/// a zero bracket yields exact_zero without any floating computation.
pub fn rho(lat: &ExponentLattice, m: u64, precision: f64) -> Result<DensityValue> {
    if lat.rank == 0 {
        return Err(Error::RankZero);
    }
    debug_assert!(m >= 1);
    let mut cache = OrderCache::new(lat);
    let bracket = rho_bracket(&mut cache, m);
    if bracket.is_zero() {
        return DensityValue::from_prefactor(BigRational::zero(), lat.rank as u32, precision);
    }
    let q = a_rational(&mut cache, m) * bracket;
    DensityValue::from_prefactor(q, lat.rank as u32, precision)
}

/// ρ(Γ, m) for odd m by the specialized closed form: the theorem bracket
/// collapses to 1 + sum over γ in Γ(2) with γ' = 1 mod 4 of the product over
/// l | 2δ(γ), l nmid m. A second, independent code path asserted equal to
/// `rho` (the prefactors agree exactly, not just numerically).
pub fn rho_odd_closed_form(lat: &ExponentLattice, m: u64, precision: f64) -> Result<DensityValue> {
    if lat.rank == 0 {
        return Err(Error::RankZero);
    }
    if m % 2 == 0 {
        return Err(Error::ParityViolation("closed form requires odd m"));
    }
    let mut cache = OrderCache::new(lat);
    let base = a_rational(&mut cache, m);
    let g2 = cache.gamma_two(1);
    let g2_int = BigInt::from(g2.clone());
    // the l = 2 factor of the full Euler product, absent from kappa_r
    let two_factor = BigRational::one() - BigRational::new(BigInt::one(), g2_int.clone());

    let mut bracket = BigRational::one();
    let torsion = cache.torsion(1);
    let four = BigInt::from(4u8);
    for (gamma, rep) in torsion.iter() {
        if gamma.is_identity() {
            continue;
        }
        if (rep.gamma_prime.clone() % &four + &four) % &four != BigInt::one() {
            continue;
        }
        // product over l | 2 delta(gamma), l nmid m: the factor at 2 plus the
        // odd primes of gamma0
        let mut term = ratio_ints(-1, &(g2_int.clone() - BigInt::one()));
        let support = cache.lattice().support.clone();
        for (j, &l) in support.iter().enumerate() {
            if l == 2 || gamma.exps.get(j).copied().unwrap_or(0) != 1 {
                continue;
            }
            if l < u64::MAX as u128 && m % (l as u64) == 0 {
                continue;
            }
            let gl = cache.gamma_odd(l, 1);
            let den = BigInt::from(l - 1) * BigInt::from(gl) - BigInt::one();
            term *= ratio_ints(-1, &den);
        }
        bracket += term;
    }
    let q = base * two_factor * bracket;
    DensityValue::from_prefactor(q, lat.rank as u32, precision)
}

/// Truncated inclusion-exclusion series for ρ(Γ, m): the partial sum over
/// squarefree k <= trunc of mu(k)/[Q(zeta_{mk}, Γ^{1/mk}):Q], plus a crude
/// tail bound. Consistency oracle only.
pub fn rho_series_oracle(lat: &ExponentLattice, m: u64, trunc: u64) -> Result<(f64, f64)> {
    assert!(trunc >= 16, "series oracle needs a real truncation point");
    if lat.rank == 0 {
        return Err(Error::RankZero);
    }
    let spf = SpfTable::new(m * trunc + 1);
    let mut cache = OrderCache::new(lat);
    let bits = 160;
    let mut sum = Hp::zero(bits);
    for k in 1..=trunc {
        let mu = spf.mobius(k);
        if mu == 0 {
            continue;
        }
        let mk = m * k;
        let deg = kummer_degree_cached(&mut cache, spf.euler_phi(mk), mk, mk)?;
        let term = Hp::from_ratio(&BigInt::from(mu), &BigInt::from(deg), bits);
        sum = sum.add(&term);
    }
    // |1/deg| <= 2^{r+1} h / (phi(m) phi(k) m k) and phi(k) >= sqrt(k/2):
    // tail <= 2^{r+2} h sqrt(2) / (phi(m) m sqrt(trunc))
    let h = lat.min_generator_power().unwrap_or(1) as f64;
    let phi_m = crate::arith::euler_phi_u64(m) as f64;
    let tail = 2f64.powi(lat.rank as i32 + 2) * h * std::f64::consts::SQRT_2
        / (phi_m * m as f64 * (trunc as f64).sqrt());
    Ok((sum.to_f64(), tail))
}

/// The key summation identity behind the theorem: for odd n and squarefree
/// odd delta, the restricted series over k with delta | kn equals
/// A(Γ, n) times a closed product over l | delta, l nmid n. Returns
/// (truncated lhs, closed rhs, truncation bound); the harness asserts
/// |lhs - rhs| <= bound.
pub fn lemma_identity_check(
    lat: &ExponentLattice,
    n: u64,
    delta: u64,
    trunc: u64,
) -> Result<(f64, f64, f64)> {
    if lat.rank == 0 {
        return Err(Error::RankZero);
    }
    if n % 2 == 0 {
        return Err(Error::ParityViolation("n must be odd"));
    }
    if delta % 2 == 0 || factor_u64(delta)?.iter().any(|&(_, e)| e > 1) {
        return Err(Error::ParityViolation("delta must be odd and squarefree"));
    }
    let spf = SpfTable::new(n * trunc + 1);
    let mut cache = OrderCache::new(lat);
    let bits = 160;
    let mut lhs = Hp::zero(bits);
    for k in (1..=trunc).step_by(2) {
        let mu = spf.mobius(k);
        if mu == 0 || (k * n) % delta != 0 {
            continue;
        }
        let nk = n * k;
        let den = BigInt::from(spf.euler_phi(nk)) * BigInt::from(cache.gamma_order(nk));
        lhs = lhs.add(&Hp::from_ratio(&BigInt::from(mu), &den, bits));
    }

    let mut rhs_q = a_rational(&mut cache, n);
    for (l, _) in factor_u64(delta)? {
        if n % l == 0 {
            continue;
        }
        let gl = cache.gamma_odd(l as u128, 1);
        let den = BigInt::from(l - 1) * BigInt::from(gl) - BigInt::one();
        rhs_q *= ratio_ints(-1, &den);
    }
    let table = euler_kappa(lat.rank as u32, 1e-12)?;
    let rhs = Hp::from_rational(&rhs_q, table.kappa_odd.bits())
        .mul(&table.kappa_odd)
        .to_f64();

    let h = lat.min_generator_power().unwrap_or(1) as f64;
    let phi_n = crate::arith::euler_phi_u64(n) as f64;
    let bound = 4.0 * h * std::f64::consts::SQRT_2 / (phi_n * n as f64 * (trunc as f64).sqrt())
        + rhs_q.to_f64().unwrap_or(0.0).abs() * table.precision
        + 1e-12;
    Ok((lhs.to_f64(), rhs, bound))
}
