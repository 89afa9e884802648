//! Empirical verification: sieve the primes below x, reduce the generators
//! mod p, and histogram the index [F_p* : Γ_p] = (p-1)/|Γ_p|.
//!
//! |Γ_p| is the lcm of the multiplicative orders of the generator residues
//! (F_p* is cyclic). Orders are computed per prime power q^e || p-1: the
//! q-part of ord(g) is q^j where j counts the squarings-by-q needed to bring
//! g^{(p-1)/q^e} to 1. p-1 is factored by trial division against the sieved
//! base primes (below sqrt(x), so the cofactor left standing is prime).
//!
//! Parallel layout: workers claim disjoint segments off an atomic counter
//! and own private histograms; the merge is a plain sum, so the result is
//! bit-identical for every thread count. The prime 2 is always excluded from
//! counting (one prime cannot move any tolerance, and a fixed rule keeps
//! histograms deterministic and mergeable); support primes are likewise
//! excluded and reported.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith::{invmod_prime, mulmod, powmod, sieve_primes};
use crate::density::DensityValue;
use crate::error::{Error, Result};
use crate::lattice::{build_lattice, ExponentLattice, GroupSpec};

pub const DEFAULT_SEGMENT_SIZE: u64 = 1 << 22;
pub const DEFAULT_MAX_X: u64 = 10_000_000_000;

/// Empirical counts of primes by index, over the range [x_lo, x).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexHistogram {
    pub group: String,
    pub group_fingerprint: String,
    pub x_lo: u64,
    pub x: u64,
    pub m_max: u32,
    /// `counts[i]` = number of counted primes with index i+1.
    pub counts: Vec<u64>,
    /// Primes whose index exceeds m_max.
    pub overflow: u64,
    /// Primes in range deliberately not counted: 2 and the support primes.
    pub excluded: Vec<u64>,
    /// Number of counted primes (sum of counts plus overflow).
    pub total_primes: u64,
    pub wall_seconds: f64,
}

impl IndexHistogram {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("histogram serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("histogram json: {e}")))
    }

    /// Combine two scans of the same group over adjacent ranges.
    pub fn merge(&self, other: &IndexHistogram) -> Result<IndexHistogram> {
        if self.group_fingerprint != other.group_fingerprint {
            return Err(Error::MergeMismatch("different groups".into()));
        }
        if self.m_max != other.m_max {
            return Err(Error::MergeMismatch("different m_max".into()));
        }
        let (lo, hi) = if self.x == other.x_lo {
            (self, other)
        } else if other.x == self.x_lo {
            (other, self)
        } else {
            return Err(Error::MergeMismatch(format!(
                "ranges [{}, {}) and [{}, {}) are not adjacent",
                self.x_lo, self.x, other.x_lo, other.x
            )));
        };
        let mut excluded: Vec<u64> = lo.excluded.iter().chain(&hi.excluded).copied().collect();
        excluded.sort_unstable();
        excluded.dedup();
        Ok(IndexHistogram {
            group: lo.group.clone(),
            group_fingerprint: lo.group_fingerprint.clone(),
            x_lo: lo.x_lo,
            x: hi.x,
            m_max: lo.m_max,
            counts: lo
                .counts
                .iter()
                .zip(&hi.counts)
                .map(|(a, b)| a + b)
                .collect(),
            overflow: lo.overflow + hi.overflow,
            excluded,
            total_primes: lo.total_primes + hi.total_primes,
            wall_seconds: lo.wall_seconds + hi.wall_seconds,
        })
    }
}

/// Residues of the generators mod p plus the factored p-1, reduced to the
/// subgroup index. Shared by the public entry point and the scan hot loop.
fn index_from_parts(p: u64, residues: &[u64], pm1_factors: &[(u64, u32)]) -> u64 {
    let mut index = 1u64;
    for &(q, e) in pm1_factors {
        let qe = q.pow(e);
        let exp0 = (p - 1) / qe;
        // j_max = largest q-adic part of any generator order
        let mut jmax = 0u32;
        for &g in residues {
            let mut t = powmod(g, exp0, p);
            let mut j = 0u32;
            while t != 1 {
                t = powmod(t, q, p);
                j += 1;
            }
            if j > jmax {
                jmax = j;
                if jmax == e {
                    break;
                }
            }
        }
        index *= q.pow(e - jmax);
    }
    index
}

fn generator_residues(spec: &GroupSpec, p: u64) -> Option<Vec<u64>> {
    let mut out = Vec::with_capacity(spec.generators.len());
    for g in &spec.generators {
        let num = g.num.rem_euclid(p as i128) as u64;
        let den = (g.den as u128 % p as u128) as u64;
        if num == 0 || den == 0 {
            return None; // p divides a numerator or denominator
        }
        let r = if den == 1 {
            num
        } else {
            mulmod(num, invmod_prime(den, p), p)
        };
        if r == 0 {
            return None;
        }
        out.push(r);
    }
    Some(out)
}

/// Index of the reduction group mod p. Requires odd p outside the support.
pub fn index_of(p: u64, lat: &ExponentLattice) -> Result<u64> {
    if p == 2 || lat.support.iter().any(|&l| l == p as u128) {
        return Err(Error::SupportPrime(p));
    }
    let residues =
        generator_residues(&lat.spec, p).ok_or(Error::SupportPrime(p))?;
    let factors = crate::factor::factor_u64(p - 1)?;
    Ok(index_from_parts(p, &residues, &factors))
}

#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub x_lo: u64,
    pub threads: usize,
    pub segment_size: u64,
    pub max_x: u64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            x_lo: 0,
            threads: 0,
            segment_size: DEFAULT_SEGMENT_SIZE,
            max_x: DEFAULT_MAX_X,
        }
    }
}

struct LocalTally {
    counts: Vec<u64>,
    overflow: u64,
    excluded: Vec<u64>,
}

/// Sieve the primes of [x_lo, x) and histogram the index of Γ mod p.
pub fn scan(spec: &GroupSpec, x: u64, m_max: u32, opts: ScanOptions) -> Result<IndexHistogram> {
    if x > opts.max_x {
        return Err(Error::ResourceLimit { x, max: opts.max_x });
    }
    if x < 100 {
        return Err(Error::Parse("scan limit must be at least 100".into()));
    }
    if m_max < 1 {
        return Err(Error::Parse("m_max must be at least 1".into()));
    }
    let started = Instant::now();
    let lat = build_lattice(spec)?;
    let support_small: Vec<u64> = lat
        .support
        .iter()
        .filter(|&&l| l < x as u128)
        .map(|&l| l as u64)
        .collect();

    let sqrt_x = (x as f64).sqrt() as u64 + 2;
    let base_primes = sieve_primes(sqrt_x.max(3));

    let threads = if opts.threads == 0 {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    } else {
        opts.threads
    };
    let segment_size = opts.segment_size.max(1 << 12);
    let lo = opts.x_lo;
    let n_segments = if x > lo { (x - lo).div_ceil(segment_size) } else { 0 };
    let next_segment = AtomicU64::new(0);

    let tallies: Vec<LocalTally> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for _ in 0..threads {
            let spec = &*spec;
            let base_primes = &base_primes;
            let support_small = &support_small;
            let next_segment = &next_segment;
            handles.push(scope.spawn(move || {
                let mut tally = LocalTally {
                    counts: vec![0u64; m_max as usize],
                    overflow: 0,
                    excluded: Vec::new(),
                };
                let mut sieve = vec![false; (segment_size as usize).div_ceil(2)];
                loop {
                    let seg = next_segment.fetch_add(1, Ordering::Relaxed);
                    if seg >= n_segments {
                        break;
                    }
                    let seg_lo = lo + seg * segment_size;
                    let seg_hi = (seg_lo + segment_size).min(x);
                    scan_segment(
                        spec,
                        base_primes,
                        support_small,
                        seg_lo,
                        seg_hi,
                        &mut sieve,
                        &mut tally,
                    );
                }
                tally
            }));
        }
        handles.into_iter().map(|h| h.join().expect("scan worker")).collect()
    });

    let mut counts = vec![0u64; m_max as usize];
    let mut overflow = 0u64;
    let mut excluded: Vec<u64> = Vec::new();
    if lo <= 2 && 2 < x {
        excluded.push(2);
    }
    for t in tallies {
        for (a, b) in counts.iter_mut().zip(&t.counts) {
            *a += b;
        }
        overflow += t.overflow;
        excluded.extend(t.excluded);
    }
    excluded.sort_unstable();
    excluded.dedup();
    let total_primes = counts.iter().sum::<u64>() + overflow;

    Ok(IndexHistogram {
        group: spec.canonical(),
        group_fingerprint: spec.fingerprint(),
        x_lo: lo,
        x,
        m_max,
        counts,
        overflow,
        excluded,
        total_primes,
        wall_seconds: started.elapsed().as_secs_f64(),
    })
}

/// Sieve one segment of odd numbers and tally every prime in it.
fn scan_segment(
    spec: &GroupSpec,
    base_primes: &[u64],
    support_small: &[u64],
    seg_lo: u64,
    seg_hi: u64,
    sieve: &mut [bool],
    tally: &mut LocalTally,
) {
    // index i represents the odd number first_odd + 2i
    let first_odd = if seg_lo <= 3 { 3 } else { seg_lo | 1 };
    if first_odd >= seg_hi {
        return;
    }
    let width = ((seg_hi - first_odd) as usize + 1) / 2;
    let sieve = &mut sieve[..width];
    sieve.fill(false);
    for &q in base_primes.iter().skip(1) {
        // first odd multiple of q at or above max(q^2, first_odd)
        if q * q >= seg_hi {
            break;
        }
        let mut start = q * q;
        if start < first_odd {
            start = first_odd.div_ceil(q) * q;
            if start % 2 == 0 {
                start += q;
            }
        }
        let mut j = ((start - first_odd) / 2) as usize;
        while j < width {
            sieve[j] = true;
            j += q as usize;
        }
    }
    for (i, &composite) in sieve.iter().enumerate() {
        if composite {
            continue;
        }
        let p = first_odd + 2 * i as u64;
        if support_small.contains(&p) {
            tally.excluded.push(p);
            continue;
        }
        let Some(residues) = generator_residues(spec, p) else {
            tally.excluded.push(p);
            continue;
        };
        // factor p-1 by trial division; leftover cofactor is prime
        let mut factors: Vec<(u64, u32)> = Vec::with_capacity(8);
        let mut n = p - 1;
        let tz = n.trailing_zeros();
        factors.push((2, tz));
        n >>= tz;
        for &q in base_primes.iter().skip(1) {
            if q * q > n {
                break;
            }
            if n % q == 0 {
                let mut e = 0;
                while n % q == 0 {
                    n /= q;
                    e += 1;
                }
                factors.push((q, e));
            }
        }
        if n > 1 {
            factors.push((n, 1));
        }
        let index = index_from_parts(p, &residues, &factors);
        if index <= tally.counts.len() as u64 {
            tally.counts[index as usize - 1] += 1;
        } else {
            tally.overflow += 1;
        }
    }
}

/// One row of the prediction-vs-measurement table.
#[derive(Clone, Debug, Serialize)]
pub struct CompareRow {
    pub m: u32,
    pub count: u64,
    pub ratio: f64,
    pub rho: f64,
    pub deviation: f64,
    pub sigma: f64,
    pub flagged: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub total_primes: u64,
    pub rows: Vec<CompareRow>,
}

/// Per-m empirical ratio against the predicted density; a row is flagged
/// when the deviation exceeds four binomial standard deviations.
pub fn compare(hist: &IndexHistogram, densities: &[DensityValue]) -> ComparisonReport {
    let total = hist.total_primes.max(1) as f64;
    let rows = densities
        .iter()
        .enumerate()
        .take(hist.m_max as usize)
        .map(|(i, dv)| {
            let m = i as u32 + 1;
            let count = hist.counts[i];
            let ratio = count as f64 / total;
            let rho = dv.to_f64();
            let deviation = (ratio - rho).abs();
            let sigma = (rho.max(0.0) * (1.0 - rho).max(0.0) / total).sqrt();
            CompareRow {
                m,
                count,
                ratio,
                rho,
                deviation,
                sigma,
                flagged: deviation > 4.0 * sigma,
            }
        })
        .collect();
    ComparisonReport {
        total_primes: hist.total_primes,
        rows,
    }
}
