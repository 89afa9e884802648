//! The group Γ ⊂ Q* as a sign-augmented exponent lattice.
//!
//! A finitely generated multiplicative subgroup of the rationals is stored by
//! factoring its generators: over the support primes l_1 < ... < l_s, each
//! generator g_i becomes a sign bit (g_i < 0) plus the integer vector of
//! valuations v_{l_j}(g_i). Every structural quantity the density formulas
//! need — |Γ(m)| for Γ(m) = Γ·Q*^m/Q*^m, the 2-torsion of Γ(2^α), power-free
//! coset representatives and their quadratic discriminants — is read off the
//! Smith normal form of that exponent matrix.
//!
//! For odd prime powers the sign coordinate collapses (−1 is an m-th power
//! for odd m) and the image order over Z/n is ∏ n/gcd(n, d_i) in the
//! elementary divisors d_i. For powers of two the sign column participates;
//! the order of the image inside Z/2 x (Z/2^v)^s is computed from the Smith
//! form of the generator matrix stacked over the relation lattice
//! diag(2, 2^v, ..., 2^v).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::gcd_u64;
use crate::error::{Error, Result};
use crate::factor::factor_u128;
use crate::snf::{hermite_rows, in_row_space, smith_normal_form, IntMat, Smith};

/// A nonzero rational in lowest terms with positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    pub num: i128,
    pub den: i128,
}

impl Rational {
    pub fn new(num: i128, den: i128) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::ZeroGenerator);
        }
        let sign = if (num < 0) != (den < 0) { -1 } else { 1 };
        let (mut n, mut d) = (num.unsigned_abs(), den.unsigned_abs());
        let g = crate::arith::gcd_u128(n, d);
        n /= g;
        d /= g;
        Ok(Rational {
            num: sign * n as i128,
            den: d as i128,
        })
    }

    pub fn from_int(n: i128) -> Result<Self> {
        Rational::new(n, 1)
    }

    pub fn is_one(&self) -> bool {
        self.num == 1 && self.den == 1
    }

    pub fn is_minus_one(&self) -> bool {
        self.num == -1 && self.den == 1
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn abs(&self) -> Rational {
        Rational {
            num: self.num.abs(),
            den: self.den,
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rational {
    type Err = Error;
    /// Grammar: `[-]digits[/digits]`, whitespace ignored.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (num_s, den_s) = match compact.split_once('/') {
            Some((n, d)) => (n, d),
            None => (compact.as_str(), "1"),
        };
        let num: i128 = num_s
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let den: i128 = den_s
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if den <= 0 {
            return Err(Error::Parse(format!("denominator must be positive in {s:?}")));
        }
        Rational::new(num, den)
    }
}

/// User-facing list of generators of Γ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub generators: Vec<Rational>,
}

impl GroupSpec {
    /// Generators equal to 1 are permitted but dropped. At least one
    /// generator must remain (so Γ is not the trivial group).
    pub fn new(generators: Vec<Rational>) -> Result<Self> {
        let kept: Vec<Rational> = generators.into_iter().filter(|g| !g.is_one()).collect();
        if kept.is_empty() {
            return Err(Error::TrivialGroup);
        }
        Ok(GroupSpec { generators: kept })
    }

    pub fn from_ints(gens: &[i128]) -> Result<Self> {
        GroupSpec::new(
            gens.iter()
                .map(|&g| Rational::from_int(g))
                .collect::<Result<_>>()?,
        )
    }

    /// Canonical comma-separated form, also the CLI grammar.
    pub fn canonical(&self) -> String {
        self.generators
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Stable 64-bit FNV-1a fingerprint of the canonical form, used to match
    /// histograms across runs.
    pub fn fingerprint(&self) -> String {
        let mut h: u64 = 0xcbf29ce484222325;
        for b in self.canonical().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
        format!("{h:016x}")
    }
}

impl FromStr for GroupSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let gens = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.parse::<Rational>())
            .collect::<Result<Vec<_>>>()?;
        GroupSpec::new(gens)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical())
    }
}

/// An element of Γ(m) = Γ·Q*^m/Q*^m: sign bit and exponent vector mod m over
/// the support primes. For odd m the sign is normalized to 0 since −1 ∈ Q*^m.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetElement {
    pub modulus: u64,
    pub sign: u8,
    pub exps: Vec<u64>,
}

impl CosetElement {
    pub fn new(modulus: u64, sign: u8, exps: Vec<u64>) -> Self {
        let sign = if modulus % 2 == 1 { 0 } else { sign & 1 };
        let exps = exps
            .into_iter()
            .map(|e| if modulus == 0 { e } else { e % modulus.max(1) })
            .collect();
        CosetElement {
            modulus,
            sign,
            exps,
        }
    }

    pub fn identity(modulus: u64, width: usize) -> Self {
        CosetElement::new(modulus, 0, vec![0; width])
    }

    pub fn is_identity(&self) -> bool {
        self.sign == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn product(&self, other: &CosetElement) -> CosetElement {
        assert_eq!(self.modulus, other.modulus);
        assert_eq!(self.exps.len(), other.exps.len());
        CosetElement::new(
            self.modulus,
            self.sign ^ other.sign,
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| (a + b) % self.modulus.max(1))
                .collect(),
        )
    }
}

/// m-power-free representative γ' of a 2-torsion coset, its squarefree core
/// γ₀ and δ(γ) = disc Q(sqrt(γ₀)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerFreeRep {
    pub gamma_prime: BigInt,
    pub gamma0: BigUint,
    pub delta: BigUint,
    pub positive: bool,
}

impl PowerFreeRep {
    pub fn v2_delta(&self) -> u32 {
        if self.delta.is_zero() {
            0
        } else {
            self.delta.trailing_zeros().unwrap_or(0) as u32
        }
    }

    /// |delta| divides n (delta always positive here).
    pub fn delta_divides(&self, n: u64) -> bool {
        (BigUint::from(n) % &self.delta).is_zero()
    }

    /// Signed disc Q(sqrt(γ')): the core is ±γ₀ depending on the coset sign.
    pub fn signed_disc(&self) -> BigInt {
        let sign = BigInt::from(if self.positive { 1 } else { -1 });
        let core = BigInt::from(self.gamma0.clone()) * sign;
        if core.is_one() {
            return BigInt::one();
        }
        if (&core % 4i32 + 4i32) % 4i32 == BigInt::one() {
            core
        } else {
            core * 4
        }
    }
}

/// Γ as a sign-augmented exponent lattice with its Smith normal form.
#[derive(Debug, Clone)]
pub struct ExponentLattice {
    pub spec: GroupSpec,
    /// Sorted distinct primes with nonzero valuation in some generator.
    pub support: Vec<u128>,
    /// One entry per kept generator: 1 iff the generator is negative.
    pub sign_col: Vec<u8>,
    /// Rows = generators, columns = support primes, entries = valuations.
    pub exp_matrix: Vec<Vec<i64>>,
    /// Rank of exp_matrix over Q.
    pub rank: usize,
    smith: Smith,
    /// Odd primes dividing some elementary divisor: exactly the odd l with
    /// |Γ(l)| < l^rank.
    pub bad_primes: Vec<u128>,
}

/// Factor the generators and assemble the lattice.
pub fn build_lattice(spec: &GroupSpec) -> Result<ExponentLattice> {
    let mut fact: Vec<(i8, Vec<(u128, i64)>)> = Vec::new();
    let mut support: Vec<u128> = Vec::new();
    for g in &spec.generators {
        let sign = if g.is_negative() { 1i8 } else { 0 };
        let mut vals: HashMap<u128, i64> = HashMap::new();
        for (p, e) in factor_u128(g.num.unsigned_abs())? {
            *vals.entry(p).or_insert(0) += e as i64;
        }
        for (p, e) in factor_u128(g.den.unsigned_abs())? {
            *vals.entry(p).or_insert(0) -= e as i64;
        }
        let mut v: Vec<(u128, i64)> = vals.into_iter().filter(|&(_, e)| e != 0).collect();
        v.sort_unstable();
        for &(p, _) in &v {
            if !support.contains(&p) {
                support.push(p);
            }
        }
        fact.push((sign, v));
    }
    support.sort_unstable();

    let sign_col: Vec<u8> = fact.iter().map(|(s, _)| *s as u8).collect();
    let exp_matrix: Vec<Vec<i64>> = fact
        .iter()
        .map(|(_, v)| {
            support
                .iter()
                .map(|p| v.iter().find(|(q, _)| q == p).map_or(0, |&(_, e)| e))
                .collect()
        })
        .collect();

    let mat = if support.is_empty() {
        IntMat::zero(exp_matrix.len(), 0)
    } else {
        IntMat::from_i64(&exp_matrix)
    };
    let smith = smith_normal_form(&mat);
    let rank = smith.rank();

    let mut divisor_product = BigInt::one();
    for d in &smith.diag {
        divisor_product *= d;
    }
    let mut bad_primes = Vec::new();
    if let Some(dp) = divisor_product.abs().to_u128() {
        for (p, _) in factor_u128(dp)? {
            if p % 2 == 1 {
                bad_primes.push(p);
            }
        }
    } else {
        return Err(Error::FactorizationOverflow(divisor_product.to_string()));
    }

    Ok(ExponentLattice {
        spec: spec.clone(),
        support,
        sign_col,
        exp_matrix,
        rank,
        smith,
        bad_primes,
    })
}

impl ExponentLattice {
    pub fn divisors(&self) -> &[BigInt] {
        &self.smith.diag
    }

    pub fn smith(&self) -> &Smith {
        &self.smith
    }

    pub fn num_generators(&self) -> usize {
        self.sign_col.len()
    }

    pub fn contains_minus_one_generator(&self) -> bool {
        self.spec.generators.iter().any(|g| g.is_minus_one())
    }

    /// |Γ(l^v)| for odd prime l: each nonzero elementary divisor d contributes
    /// l^{max(0, v - v_l(d))}.
    pub fn gamma_odd_prime_power_order(&self, l: u128, v: u32) -> BigUint {
        debug_assert!(l % 2 == 1 && l > 1);
        let lb = BigInt::from(l);
        let mut order = BigUint::one();
        for d in &self.smith.diag {
            let mut vd = 0u32;
            let mut d = d.clone();
            while vd < v && (&d % &lb).is_zero() {
                d /= &lb;
                vd += 1;
            }
            order *= BigUint::from(l).pow(v - vd);
        }
        order
    }

    /// |Γ(l)| for odd l; equals l^rank away from the bad primes.
    pub fn gamma_ell(&self, l: u128) -> BigUint {
        self.gamma_odd_prime_power_order(l, 1)
    }

    /// Generator matrix augmented with the sign column, stacked over the
    /// relation lattice of Z/2 x (Z/2^v)^s.
    fn two_part_stack(&self, v: u32) -> IntMat {
        let s = self.support.len();
        let k = self.num_generators();
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(k + 1 + s);
        for i in 0..k {
            let mut row = Vec::with_capacity(1 + s);
            row.push(BigInt::from(self.sign_col[i]));
            row.extend(self.exp_matrix[i].iter().map(|&e| BigInt::from(e)));
            rows.push(row);
        }
        let two_v = BigInt::from(2u8).pow(v);
        for j in 0..=s {
            let mut row = vec![BigInt::zero(); 1 + s];
            row[j] = if j == 0 { BigInt::from(2u8) } else { two_v.clone() };
            rows.push(row);
        }
        IntMat::from_rows(rows)
    }

    /// |Γ(2^v)| from the Smith form of the stacked matrix: the image order is
    /// the relation-lattice covolume 2^{1+vs} divided by the stacked
    /// covolume ∏ d_i.
    pub fn gamma_two_power_order(&self, v: u32) -> BigUint {
        if v == 0 {
            return BigUint::one();
        }
        let s = self.support.len();
        let stacked = smith_normal_form(&self.two_part_stack(v));
        debug_assert_eq!(stacked.rank(), 1 + s);
        let mut covol = BigUint::one();
        for d in &stacked.diag {
            covol *= d.to_biguint().expect("positive divisor");
        }
        let total = BigUint::from(2u8).pow(1 + v * s as u32);
        debug_assert!((&total % &covol).is_zero());
        total / covol
    }

    /// |Γ(m)| multiplicatively over the prime powers of m.
    pub fn gamma_m_order(&self, m: u64) -> BigUint {
        debug_assert!(m >= 1);
        let mut order = BigUint::one();
        let mut rest = m;
        let v = rest.trailing_zeros();
        if v > 0 {
            order *= self.gamma_two_power_order(v);
            rest >>= v;
        }
        let mut l = 3u64;
        while l * l <= rest {
            if rest % l == 0 {
                let mut e = 0;
                while rest % l == 0 {
                    rest /= l;
                    e += 1;
                }
                order *= self.gamma_odd_prime_power_order(l as u128, e);
            }
            l += 2;
        }
        if rest > 1 {
            order *= self.gamma_odd_prime_power_order(rest as u128, 1);
        }
        order
    }

    /// The 2-torsion subgroup Γ(2^α)\[2\], as cosets with modulus 2^α whose
    /// exponent coordinates lie in {0, 2^{α-1}}. Candidates are the 2^{s+1}
    /// sign/coordinate patterns; membership in the image is an exact lattice
    /// test against the Hermite form of the stacked relation matrix.
    pub fn two_torsion(&self, alpha: u32) -> Vec<CosetElement> {
        assert!(alpha >= 1);
        let s = self.support.len();
        let modulus = 1u64 << alpha;
        let half = BigInt::from(1u64 << (alpha - 1));
        let h = hermite_rows(&self.two_part_stack(alpha));
        let mut out = Vec::new();
        for mask in 0u32..(1 << (s + 1)) {
            let mut vec = Vec::with_capacity(1 + s);
            let sign = mask & 1;
            vec.push(BigInt::from(sign));
            for j in 0..s {
                if (mask >> (j + 1)) & 1 == 1 {
                    vec.push(half.clone());
                } else {
                    vec.push(BigInt::zero());
                }
            }
            if in_row_space(&h, &vec) {
                let exps = (0..s)
                    .map(|j| {
                        if (mask >> (j + 1)) & 1 == 1 {
                            1u64 << (alpha - 1)
                        } else {
                            0
                        }
                    })
                    .collect();
                out.push(CosetElement::new(modulus, sign as u8, exps));
            }
        }
        out
    }

    /// All of Γ(2) as cosets (every element of Γ(2) is 2-torsion).
    pub fn gamma_two_cosets(&self) -> Vec<CosetElement> {
        self.two_torsion(1)
    }

    /// Power-free representative of a 2-torsion coset (or of anything modulo
    /// an odd modulus, where the class of signs collapses).
    pub fn power_free_rep(&self, gamma: &CosetElement) -> Result<PowerFreeRep> {
        if gamma.modulus % 2 == 1 {
            return Ok(PowerFreeRep {
                gamma_prime: BigInt::one(),
                gamma0: BigUint::one(),
                delta: BigUint::one(),
                positive: true,
            });
        }
        let alpha = gamma.modulus.trailing_zeros();
        debug_assert_eq!(gamma.modulus, 1u64 << alpha);
        let half = 1u64 << (alpha - 1);
        let mut gamma0 = BigUint::one();
        for (j, &e) in gamma.exps.iter().enumerate() {
            if e == half {
                gamma0 *= BigUint::from(self.support[j]);
            } else if e != 0 {
                return Err(Error::NotTwoTorsion);
            }
        }
        let positive = gamma.sign == 0;
        let gamma_prime = {
            let base = BigInt::from(gamma0.clone());
            let p = base.pow(half as u32);
            if positive {
                p
            } else {
                -p
            }
        };
        let delta = if (&gamma0 % 4u8) == BigUint::one() {
            gamma0.clone()
        } else {
            gamma0.clone() * 4u8
        };
        Ok(PowerFreeRep {
            gamma_prime,
            gamma0,
            delta,
            positive,
        })
    }

    /// Cosets of Γ(2^alpha)\[2\] together with their power-free data.
    pub fn two_torsion_with_reps(&self, alpha: u32) -> Vec<(CosetElement, PowerFreeRep)> {
        self.two_torsion(alpha)
            .into_iter()
            .map(|c| {
                let rep = self.power_free_rep(&c).expect("torsion coset");
                (c, rep)
            })
            .collect()
    }

    /// Power exponent of one generator (gcd of its valuations); used for
    /// crude series tail bounds. None for torsion-only generators.
    pub fn min_generator_power(&self) -> Option<u64> {
        self.exp_matrix
            .iter()
            .filter_map(|row| {
                let g = row.iter().fold(0u64, |acc, &e| gcd_u64(acc, e.unsigned_abs()));
                if g == 0 {
                    None
                } else {
                    Some(g)
                }
            })
            .min()
    }
}

/// Memoized group orders and torsion data for one lattice. The lattice
/// itself stays immutable and shareable; hot loops (series oracle, table
/// sweeps) each own a cache.
pub struct OrderCache<'a> {
    lat: &'a ExponentLattice,
    two_orders: HashMap<u32, BigUint>,
    odd_orders: HashMap<(u128, u32), BigUint>,
    torsion: HashMap<u32, std::rc::Rc<Vec<(CosetElement, PowerFreeRep)>>>,
}

impl<'a> OrderCache<'a> {
    pub fn new(lat: &'a ExponentLattice) -> Self {
        OrderCache {
            lat,
            two_orders: HashMap::new(),
            odd_orders: HashMap::new(),
            torsion: HashMap::new(),
        }
    }

    pub fn lattice(&self) -> &'a ExponentLattice {
        self.lat
    }

    pub fn gamma_two(&mut self, v: u32) -> BigUint {
        if v == 0 {
            return BigUint::one();
        }
        let lat = self.lat;
        self.two_orders
            .entry(v)
            .or_insert_with(|| lat.gamma_two_power_order(v))
            .clone()
    }

    pub fn gamma_odd(&mut self, l: u128, e: u32) -> BigUint {
        let lat = self.lat;
        self.odd_orders
            .entry((l, e))
            .or_insert_with(|| lat.gamma_odd_prime_power_order(l, e))
            .clone()
    }

    pub fn gamma_order(&mut self, m: u64) -> BigUint {
        let mut order = self.gamma_two(if m == 0 { 0 } else { m.trailing_zeros() });
        let mut rest = m >> m.trailing_zeros();
        let mut l = 3u64;
        while l * l <= rest {
            if rest % l == 0 {
                let mut e = 0;
                while rest % l == 0 {
                    rest /= l;
                    e += 1;
                }
                order *= self.gamma_odd(l as u128, e);
            }
            l += 2;
        }
        if rest > 1 {
            order *= self.gamma_odd(rest as u128, 1);
        }
        order
    }

    pub fn torsion(&mut self, alpha: u32) -> std::rc::Rc<Vec<(CosetElement, PowerFreeRep)>> {
        let lat = self.lat;
        self.torsion
            .entry(alpha)
            .or_insert_with(|| std::rc::Rc::new(lat.two_torsion_with_reps(alpha)))
            .clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(gens: &[i128]) -> ExponentLattice {
        build_lattice(&GroupSpec::from_ints(gens).unwrap()).unwrap()
    }

    fn lat_q(gens: &[(i128, i128)]) -> ExponentLattice {
        let spec = GroupSpec::new(
            gens.iter()
                .map(|&(n, d)| Rational::new(n, d).unwrap())
                .collect(),
        )
        .unwrap();
        build_lattice(&spec).unwrap()
    }

    #[test]
    fn parse_group_spec() {
        let g: GroupSpec = "-1, 2, 3/5".parse().unwrap();
        assert_eq!(g.generators.len(), 3);
        assert_eq!(g.generators[2], Rational::new(3, 5).unwrap());
        assert_eq!(g.canonical(), "-1,2,3/5");
        assert!("0".parse::<GroupSpec>().is_err());
        assert!("1".parse::<GroupSpec>().is_err());
        assert!("2,".parse::<GroupSpec>().is_ok());
        assert_eq!("4/2".parse::<GroupSpec>().unwrap().canonical(), "2");
    }

    #[test]
    fn build_minus_one_two() {
        let l = lat(&[-1, 2]);
        assert_eq!(l.support, vec![2]);
        assert_eq!(l.sign_col, vec![1, 0]);
        assert_eq!(l.exp_matrix, vec![vec![0], vec![1]]);
        assert_eq!(l.rank, 1);
        assert_eq!(l.divisors(), &[BigInt::one()]);
        assert!(l.bad_primes.is_empty());
    }

    #[test]
    fn build_two_three() {
        let l = lat(&[2, 3]);
        assert_eq!(l.support, vec![2, 3]);
        assert_eq!(l.exp_matrix, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(l.rank, 2);
        assert_eq!(l.divisors(), &[BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn build_twelve_eighteen() {
        let l = lat(&[12, 18]);
        assert_eq!(l.support, vec![2, 3]);
        assert_eq!(l.exp_matrix, vec![vec![2, 1], vec![1, 2]]);
        assert_eq!(l.rank, 2);
        assert_eq!(l.divisors(), &[BigInt::from(1), BigInt::from(3)]);
        assert_eq!(l.bad_primes, vec![3]);
    }

    #[test]
    fn generator_reconstruction() {
        // every generator equals (-1)^sign * prod support_j^{exp[i][j]}
        let l = lat_q(&[(-9, 8), (50, 3)]);
        for (i, g) in l.spec.generators.iter().enumerate() {
            let mut num = BigInt::one();
            let mut den = BigInt::one();
            for (j, &p) in l.support.iter().enumerate() {
                let e = l.exp_matrix[i][j];
                if e >= 0 {
                    num *= BigInt::from(p).pow(e as u32);
                } else {
                    den *= BigInt::from(p).pow((-e) as u32);
                }
            }
            if l.sign_col[i] == 1 {
                num = -num;
            }
            assert_eq!(num, BigInt::from(g.num));
            assert_eq!(den, BigInt::from(g.den));
        }
    }

    /// Brute-force |Γ(m)|: close the generator images in Z/2 x (Z/m)^s
    /// (dropping the sign for odd m).
    fn gamma_m_order_brute(l: &ExponentLattice, m: u64) -> usize {
        use std::collections::HashSet;
        let s = l.support.len();
        let keep_sign = m % 2 == 0;
        let gens: Vec<(u8, Vec<u64>)> = (0..l.num_generators())
            .map(|i| {
                (
                    if keep_sign { l.sign_col[i] } else { 0 },
                    l.exp_matrix[i]
                        .iter()
                        .map(|&e| e.rem_euclid(m as i64) as u64)
                        .collect(),
                )
            })
            .collect();
        let mut seen: HashSet<(u8, Vec<u64>)> = HashSet::new();
        let mut frontier = vec![(0u8, vec![0u64; s])];
        seen.insert(frontier[0].clone());
        while let Some(el) = frontier.pop() {
            for g in &gens {
                let next = (
                    el.0 ^ g.0,
                    el.1
                        .iter()
                        .zip(&g.1)
                        .map(|(a, b)| (a + b) % m)
                        .collect::<Vec<_>>(),
                );
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn gamma_m_order_examples() {
        // <-1, a> with a = a0^h has |Γ(m)| = (2,m) m / (m,h)
        let l = lat(&[-1, 4]);
        assert_eq!(l.gamma_m_order(4), BigUint::from(4u8));
        let l23 = lat(&[2, 3]);
        assert_eq!(l23.gamma_m_order(4), BigUint::from(16u8));
        assert_eq!(l23.gamma_m_order(1), BigUint::one());
        let l1218 = lat(&[12, 18]);
        assert_eq!(l1218.gamma_m_order(3), BigUint::from(3u8));
    }

    #[test]
    fn gamma_m_order_formula_for_minus_one_torsion() {
        // |<-1, a0^h>(m)| = (2,m)*m/(m,h) for every h up to 12 and m up to 200
        let mut cases: Vec<(i128, u64)> = vec![(27, 3), (12i128.pow(5), 5)];
        for h in 1..=12u32 {
            cases.push((2i128.pow(h), h as u64));
            cases.push((3i128.pow(h), h as u64));
        }
        for (a, h) in cases {
            let l = lat(&[-1, a]);
            for m in 1..=200u64 {
                let expect = gcd_u64(2, m) * m / gcd_u64(m, h);
                assert_eq!(
                    l.gamma_m_order(m),
                    BigUint::from(expect),
                    "a={a} h={h} m={m}"
                );
            }
        }
    }

    #[test]
    fn gamma_m_order_matches_brute_force() {
        let groups: Vec<Vec<i128>> = vec![
            vec![-1, 2],
            vec![2, 3],
            vec![12, 18],
            vec![-1, 8],
            vec![-2, -3],
            vec![-4, 6, 9],
            vec![-1, 2, 3],
            vec![8, 27],
        ];
        for gens in groups {
            let l = lat(&gens);
            for m in 1..=24u64 {
                assert_eq!(
                    l.gamma_m_order(m),
                    BigUint::from(gamma_m_order_brute(&l, m)),
                    "gens={gens:?} m={m}"
                );
            }
        }
    }

    #[test]
    fn gamma_m_multiplicative_over_coprime_parts() {
        let l = lat_q(&[(-9, 8), (50, 3)]);
        for (m1, m2) in [(3u64, 8u64), (5, 4), (9, 16), (7, 12), (25, 6)] {
            assert_eq!(
                l.gamma_m_order(m1 * m2),
                l.gamma_m_order(m1) * l.gamma_m_order(m2)
            );
        }
    }

    #[test]
    fn gamma_ell_examples() {
        assert_eq!(lat(&[2, 3]).gamma_ell(5), BigUint::from(25u8));
        assert_eq!(lat(&[12, 18]).gamma_ell(3), BigUint::from(3u8));
        // 8 is a cube: Γ(3) is trivial
        assert_eq!(lat(&[-1, 8]).gamma_ell(3), BigUint::one());
    }

    #[test]
    fn two_torsion_minus_one_a() {
        // v2(h) < alpha: four cosets {1, -1, a1^{2^{alpha-1}}, -a1^{2^{alpha-1}}}
        let l = lat(&[-1, 2]);
        for alpha in 1..=4u32 {
            let t = l.two_torsion(alpha);
            assert_eq!(t.len(), 4, "alpha={alpha}");
        }
        // v2(h) >= alpha: only {1, -1}
        let l4 = lat(&[-1, 4]);
        assert_eq!(l4.two_torsion(1).len(), 2);
        assert_eq!(l4.two_torsion(2).len(), 4);
        // all of Γ(2) is 2-torsion
        let l23 = lat(&[2, 3]);
        let t = l23.two_torsion(1);
        assert_eq!(t.len(), 4);
    }

    #[test]
    fn two_torsion_closed_under_product() {
        for gens in [vec![-1i128, 2], vec![2, 3], vec![-2, -3], vec![12, 18]] {
            let l = lat(&gens);
            for alpha in 1..=3u32 {
                let t = l.two_torsion(alpha);
                for a in &t {
                    for b in &t {
                        let p = a.product(b);
                        assert!(t.contains(&p), "gens={gens:?} alpha={alpha}");
                    }
                }
            }
        }
    }

    #[test]
    fn two_torsion_matches_brute_force() {
        // enumerate Γ(2^alpha) fully and filter the involutions
        use std::collections::HashSet;
        for gens in [vec![-1i128, 2], vec![2, 3], vec![-1, 12, 18]] {
            let l = lat(&gens);
            for alpha in 1..=3u32 {
                let m = 1u64 << alpha;
                let s = l.support.len();
                let mut seen: HashSet<(u8, Vec<u64>)> = HashSet::new();
                let mut frontier = vec![(0u8, vec![0u64; s])];
                seen.insert(frontier[0].clone());
                while let Some(el) = frontier.pop() {
                    for i in 0..l.num_generators() {
                        let next = (
                            el.0 ^ l.sign_col[i],
                            el.1
                                .iter()
                                .zip(&l.exp_matrix[i])
                                .map(|(a, &b)| (a + b.rem_euclid(m as i64) as u64) % m)
                                .collect::<Vec<_>>(),
                        );
                        if seen.insert(next.clone()) {
                            frontier.push(next);
                        }
                    }
                }
                let brute: HashSet<(u8, Vec<u64>)> = seen
                    .into_iter()
                    .filter(|(s0, e)| {
                        (2 * *s0 as u64) % 2 == 0 && e.iter().all(|&x| (2 * x) % m == 0)
                    })
                    .collect();
                let fast: HashSet<(u8, Vec<u64>)> = l
                    .two_torsion(alpha)
                    .into_iter()
                    .map(|c| (c.sign, c.exps))
                    .collect();
                assert_eq!(fast, brute, "gens={gens:?} alpha={alpha}");
            }
        }
    }

    #[test]
    fn power_free_reps() {
        let l = lat(&[-1, 2, 3, 5]);
        // 2 Q*^2
        let c = CosetElement::new(2, 0, vec![1, 0, 0]);
        let r = l.power_free_rep(&c).unwrap();
        assert_eq!(r.gamma_prime, BigInt::from(2));
        assert_eq!(r.gamma0, BigUint::from(2u8));
        assert_eq!(r.delta, BigUint::from(8u8));
        assert!(r.positive);
        // -3 Q*^2
        let c = CosetElement::new(2, 1, vec![0, 1, 0]);
        let r = l.power_free_rep(&c).unwrap();
        assert_eq!(r.gamma_prime, BigInt::from(-3));
        assert_eq!(r.delta, BigUint::from(12u8));
        assert!(!r.positive);
        // 25 Q*^4 = 5^2 Q*^4 (alpha = 2)
        let c = CosetElement::new(4, 0, vec![0, 0, 2]);
        let r = l.power_free_rep(&c).unwrap();
        assert_eq!(r.gamma_prime, BigInt::from(25));
        assert_eq!(r.gamma0, BigUint::from(5u8));
        assert_eq!(r.delta, BigUint::from(5u8));
        // identity mod 8
        let c = CosetElement::identity(8, 3);
        let r = l.power_free_rep(&c).unwrap();
        assert_eq!(r.gamma0, BigUint::one());
        assert_eq!(r.delta, BigUint::one());
        // not 2-torsion
        let c = CosetElement::new(4, 0, vec![1, 0, 0]);
        assert_eq!(l.power_free_rep(&c), Err(Error::NotTwoTorsion));
    }

    #[test]
    fn delta_is_zero_or_one_mod_four() {
        for gens in [vec![-1i128, 2], vec![2, 3], vec![-2, 15], vec![12, 18]] {
            let l = lat(&gens);
            for alpha in 1..=3 {
                for c in l.two_torsion(alpha) {
                    let r = l.power_free_rep(&c).unwrap();
                    let rem = (&r.delta % 4u8).to_u32().unwrap();
                    assert!(rem == 0 || rem == 1, "delta={} gens={gens:?}", r.delta);
                }
            }
        }
    }

    #[test]
    fn support_primes_beyond_machine_words() {
        // generator with a Mersenne-prime factor of 89 bits
        let m89: i128 = (1i128 << 89) - 1;
        let l = lat(&[-1, 2 * m89]);
        assert_eq!(l.support, vec![2, m89 as u128]);
        assert_eq!(l.rank, 1);
        assert_eq!(l.gamma_m_order(12), BigUint::from(24u8));
        assert_eq!(l.gamma_ell(m89 as u128), BigUint::from(m89 as u128));
        let t = l.two_torsion(1);
        assert_eq!(t.len(), 4);
    }

    #[test]
    fn order_divides_bound() {
        for gens in [vec![-1i128, 2], vec![2, 3], vec![12, 18], vec![-2, -3]] {
            let l = lat(&gens);
            let has_negative = l.sign_col.iter().any(|&s| s == 1);
            for m in 1..=32u64 {
                let ord = l.gamma_m_order(m);
                let mut bound = BigUint::from(gcd_u64(2, m)) * BigUint::from(m).pow(l.rank as u32);
                if has_negative {
                    bound *= BigUint::from(2u8);
                }
                assert!((&bound % &ord).is_zero(), "gens={gens:?} m={m}");
            }
        }
    }
}
