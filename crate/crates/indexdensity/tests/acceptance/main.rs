//! Acceptance suite: one test per release criterion, each printing a
//! PASS/FAIL line (run with `--nocapture` to see them). Tolerances are fixed
//! here, not tuned at runtime.

mod tables;

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use indexdensity::density::{rho, rho_series_oracle, DensityValue};
use indexdensity::harness::{compare, scan, ScanOptions};
use indexdensity::highprec::{euler_kappa, Hp};
use indexdensity::lattice::{build_lattice, ExponentLattice, GroupSpec, Rational};
use indexdensity::rank_one::{decompose, minus_one_a_density, moree_odd_density};
use indexdensity::vanishing::{minus_one_cube_census, sufficient_vanishing, MatchedCondition};

fn report(criterion: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {criterion} {name}: {verdict} {detail}");
}

fn rational_of_decimal(s: &str) -> BigRational {
    let (int_part, frac_part) = s.split_once('.').unwrap_or((s, ""));
    let digits: String = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().expect("decimal literal");
    let d = BigInt::from(10u8).pow(frac_part.len() as u32);
    BigRational::new(n, d)
}

fn pow10(e: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u8).pow(e))
}

/// |truncate(computed, printed decimals) - reference| <= tol, exactly.
fn cell_matches(dv: &DensityValue, cell: &str, tol: &BigRational) -> Result<(), String> {
    let decimals = cell.split('.').nth(1).map_or(0, |d| d.len() as u32);
    let reference = rational_of_decimal(cell);
    let computed = if dv.exact_zero {
        BigRational::zero()
    } else {
        dv.value.to_rational()
    };
    let scale = BigRational::new(BigInt::from(10u8).pow(decimals), BigInt::one());
    let truncated = (computed * &scale).trunc() / scale;
    let diff = (truncated - reference).abs();
    if diff <= *tol {
        Ok(())
    } else {
        Err(format!(
            "cell {cell}: |{} - {cell}| = {}",
            dv.to_f64(),
            diff.to_f64().unwrap_or(f64::NAN)
        ))
    }
}

fn lattice(gens: &str) -> ExponentLattice {
    build_lattice(&gens.parse::<GroupSpec>().unwrap()).unwrap()
}

#[test]
fn criterion_1_rank_one_torsion_table() {
    let started = Instant::now();
    let tol = pow10(7) * BigRational::new(BigInt::from(5), BigInt::one()); // 5e-7
    let mut errors = Vec::new();
    for (a, row) in tables::RANK1_TABLE.iter() {
        let lat = lattice(&format!("-1,{a}"));
        for (i, cell) in row.iter().enumerate() {
            let m = i as u64 + 1;
            let dv = rho(&lat, m, 1e-9).unwrap();
            if let Err(e) = cell_matches(&dv, cell, &tol) {
                errors.push(format!("a={a} m={m}: {e}"));
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    let pass = errors.is_empty() && elapsed < 10.0;
    report(
        1,
        "rank-1-torsion table (400 cells, 5e-7)",
        pass,
        &format!("({elapsed:.2}s, {} mismatches)", errors.len()),
    );
    for e in errors.iter().take(5) {
        println!("    {e}");
    }
    assert!(pass, "criterion 1 failed");
}

#[test]
fn criterion_2_rank_two_table() {
    let started = Instant::now();
    let tol = pow10(6); // 1e-6
    let mut errors = Vec::new();
    for (group, row) in tables::RANK2_TABLE.iter() {
        let lat = lattice(group);
        for (i, cell) in row.iter().enumerate() {
            let m = i as u64 + 1;
            let dv = rho(&lat, m, 1e-9).unwrap();
            if let Err(e) = cell_matches(&dv, cell, &tol) {
                errors.push(format!("group={group} m={m}: {e}"));
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    let pass = errors.is_empty() && elapsed < 10.0;
    report(
        2,
        "rank-2 table (100 cells, 1e-6)",
        pass,
        &format!("({elapsed:.2}s, {} mismatches)", errors.len()),
    );
    for e in errors.iter().take(5) {
        println!("    {e}");
    }
    assert!(pass, "criterion 2 failed");
}

#[test]
fn criterion_3_artin_constant() {
    let table = euler_kappa(1, 1e-18).unwrap();
    let artin = table.kappa_odd.to_rational() / BigRational::new(BigInt::from(2), BigInt::one());
    let reference = rational_of_decimal(tables::ARTIN_CONSTANT_21);
    let diff = (artin - reference).abs();
    let tol = pow10(18);
    let pass = diff <= tol && table.precision <= 2e-18;
    report(
        3,
        "Artin constant to 1e-18",
        pass,
        &format!(
            "(|diff| = {:.2e}, reported precision {:.2e})",
            diff.to_f64().unwrap_or(f64::NAN),
            table.precision
        ),
    );
    assert!(pass, "criterion 3 failed");
}

#[test]
fn criterion_4_vanishing_census() {
    let census = minus_one_cube_census(216_000, 40).unwrap();
    let got: Vec<(u64, u64)> = census.iter().map(|e| (e.a, e.m)).collect();
    let expected: Vec<(u64, u64)> = tables::PUBLISHED_CENSUS.to_vec();
    let missing: Vec<_> = expected.iter().filter(|p| !got.contains(p)).collect();
    let extra: Vec<_> = got.iter().filter(|p| !expected.contains(p)).collect();
    let pass = missing.is_empty() && extra.is_empty();
    report(
        4,
        "vanishing census equals the 17 published pairs",
        pass,
        &format!("(found {}, missing {missing:?}, extra {extra:?})", got.len()),
    );
    // The published table omits (157464, 4) = (54^3, 4), which satisfies the
    // same vanishing case as the listed (13824, 4) = (24^3, 4) and is
    // confirmed exactly zero by the density engine and by an empirical scan.
    // The census is computed honestly, so this criterion fails on that one
    // extra pair; see the vanishing module tests for the supporting checks.
    assert!(pass, "criterion 4 failed: extra pairs {extra:?}, missing {missing:?}");
}

#[test]
fn criterion_5_dual_path_equality() {
    let mut worst: f64 = 0.0;
    let mut failures = 0u32;
    for a in 2i128..=21 {
        let lat = lattice(&format!("-1,{a}"));
        let dec = decompose(Rational::from_int(a).unwrap()).unwrap();
        for m in 1..=20u64 {
            let e = rho(&lat, m, 1e-10).unwrap();
            let c = minus_one_a_density(&dec, m, 1e-10).unwrap();
            let diff = (e.to_f64() - c.to_f64()).abs();
            worst = worst.max(diff);
            if diff > 1e-9 || e.exact_zero != c.exact_zero {
                failures += 1;
            }
        }
    }
    for a in 2i128..=21 {
        let lat = lattice(&a.to_string());
        let dec = decompose(Rational::from_int(a).unwrap()).unwrap();
        for m in (1..=19u64).step_by(2) {
            let e = rho(&lat, m, 1e-10).unwrap();
            let c = moree_odd_density(&dec, m, 1e-10).unwrap();
            let diff = (e.to_f64() - c.to_f64()).abs();
            worst = worst.max(diff);
            if diff > 1e-9 {
                failures += 1;
            }
        }
    }
    let pass = failures == 0;
    report(
        5,
        "closed forms agree with the engine to 1e-9",
        pass,
        &format!("(worst |diff| = {worst:.2e})"),
    );
    assert!(pass, "criterion 5 failed");
}

struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        // xorshift64*
        let mut x = self.0;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        self.0 = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn random_group(rng: &mut Rng) -> GroupSpec {
    let support = [2i128, 3, 5, 7];
    loop {
        let n_gens = 1 + rng.below(3) as usize;
        let mut gens: Vec<Rational> = Vec::new();
        if rng.below(2) == 1 {
            gens.push(Rational::from_int(-1).unwrap());
        }
        for _ in 0..n_gens {
            let mut num: i128 = 1;
            let mut den: i128 = 1;
            for &p in &support {
                let e = rng.below(7) as i64 - 3; // -3..=3
                if e >= 0 {
                    num *= p.pow(e as u32);
                } else {
                    den *= p.pow((-e) as u32);
                }
            }
            if rng.below(2) == 1 {
                num = -num;
            }
            if (num.abs(), den) == (1, 1) {
                continue;
            }
            gens.push(Rational::new(num, den).unwrap());
        }
        if gens.is_empty() || gens.iter().all(|g| g.num.abs() == 1 && g.den == 1) {
            continue;
        }
        let spec = GroupSpec::new(gens).unwrap();
        let lat = build_lattice(&spec).unwrap();
        if lat.rank >= 1 && lat.rank <= 3 {
            return spec;
        }
    }
}

#[test]
fn criterion_6_series_oracle_consistency() {
    let started = Instant::now();
    let mut rng = Rng(0x1d45_90ab_cdef_1234);
    let mut worst_ratio: f64 = 0.0;
    let mut failures = Vec::new();
    for i in 0..20 {
        let spec = random_group(&mut rng);
        let lat = build_lattice(&spec).unwrap();
        for m in 1..=12u64 {
            let dense = rho(&lat, m, 1e-10).unwrap();
            let (oracle, tail) = rho_series_oracle(&lat, m, 10_000).unwrap();
            let gap = (dense.to_f64() - oracle).abs();
            let budget = tail + dense.error_bound;
            worst_ratio = worst_ratio.max(gap / budget);
            if gap > budget {
                failures.push(format!(
                    "group {i} <{}> m={m}: gap {gap:.3e} > budget {budget:.3e}",
                    spec.canonical()
                ));
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    let pass = failures.is_empty();
    report(
        6,
        "series oracle within combined bounds (20 groups, m <= 12)",
        pass,
        &format!("({elapsed:.1}s, worst gap/budget = {worst_ratio:.3})"),
    );
    for f in failures.iter().take(5) {
        println!("    {f}");
    }
    assert!(pass, "criterion 6 failed");
}

#[test]
fn criterion_7_desk_scale_reproduction() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for group in ["-1,2", "2,3"] {
        let spec: GroupSpec = group.parse().unwrap();
        let hist = scan(&spec, 100_000_000, 10, ScanOptions::default()).unwrap();
        let lat = build_lattice(&spec).unwrap();
        let densities: Vec<_> = (1..=10).map(|m| rho(&lat, m, 1e-9).unwrap()).collect();
        let rep = compare(&hist, &densities);
        for row in &rep.rows {
            if row.deviation >= 4.0 * row.sigma {
                failures.push(format!(
                    "group <{group}> m={}: |{:.7} - {:.7}| = {:.2e} >= 4 sigma = {:.2e}",
                    row.m, row.ratio, row.rho, row.deviation, 4.0 * row.sigma
                ));
            }
        }
    }
    let elapsed = started.elapsed().as_secs_f64();
    let pass = failures.is_empty() && elapsed < 300.0;
    report(
        7,
        "empirical scan to 1e8 within 4 sigma for m <= 10",
        pass,
        &format!("({elapsed:.1}s)"),
    );
    for f in &failures {
        println!("    {f}");
    }
    assert!(pass, "criterion 7 failed");
}

#[test]
fn criterion_8_vanishing_pairs_empty() {
    let mut failures = Vec::new();
    for (a, m) in [(27u64, 2u64), (3375, 10), (729, 8)] {
        let spec: GroupSpec = format!("-1,{a}").parse().unwrap();
        let hist = scan(&spec, 10_000_000, m as u32, ScanOptions::default()).unwrap();
        let count = hist.counts[m as usize - 1];
        if count != 0 {
            failures.push(format!("(a={a}, m={m}): {count} primes found"));
        }
    }
    let pass = failures.is_empty();
    report(
        8,
        "vanishing pairs have empty buckets at 1e7",
        pass,
        &format!("{failures:?}"),
    );
    assert!(pass, "criterion 8 failed");
}

#[test]
fn criterion_9_property_suites() {
    let started = Instant::now();
    let mut failures: Vec<String> = Vec::new();

    // (a) gamma_m_order equals brute-force closure for m <= 64
    {
        use std::collections::HashSet;
        let groups = ["-1,2", "2,3", "12,18", "-2,-3,5", "8,-27", "-1,4,9,25"];
        for group in groups {
            let lat = lattice(group);
            let s = lat.support.len();
            for m in 1..=64u64 {
                let keep_sign = m % 2 == 0;
                let mut seen: HashSet<(u8, Vec<u64>)> = HashSet::new();
                let mut frontier = vec![(0u8, vec![0u64; s])];
                seen.insert(frontier[0].clone());
                while let Some(el) = frontier.pop() {
                    for i in 0..lat.num_generators() {
                        let sign = if keep_sign { lat.sign_col[i] } else { 0 };
                        let next = (
                            el.0 ^ sign,
                            el.1
                                .iter()
                                .zip(&lat.exp_matrix[i])
                                .map(|(a, &b)| (a + b.rem_euclid(m as i64) as u64) % m)
                                .collect::<Vec<_>>(),
                        );
                        if seen.insert(next.clone()) {
                            frontier.push(next);
                        }
                    }
                }
                if lat.gamma_m_order(m) != num_bigint::BigUint::from(seen.len()) {
                    failures.push(format!("gamma order brute mismatch {group} m={m}"));
                }
            }
        }
    }

    // (b) the two definitions of the entanglement group agree up to m = 256
    {
        for group in ["-1,2", "-1,3", "2,3", "2,-3", "-2,-3", "12,18", "-1,12,18"] {
            let lat = lattice(group);
            for m in 1..=256u64 {
                let mut a: Vec<_> = indexdensity::kummer::tilde_gamma(&lat, m)
                    .elements
                    .into_iter()
                    .map(|c| (c.sign, c.exps))
                    .collect();
                let mut b: Vec<_> = indexdensity::kummer::tilde_gamma_cases(&lat, m)
                    .elements
                    .into_iter()
                    .map(|c| (c.sign, c.exps))
                    .collect();
                a.sort();
                b.sort();
                if a != b {
                    failures.push(format!("tilde dual mismatch {group} m={m}"));
                }
            }
        }
    }

    // (c) two-torsion closure under the group operation
    {
        for group in ["-1,2", "2,3", "-2,15", "12,18"] {
            let lat = lattice(group);
            for alpha in 1..=4u32 {
                let t = lat.two_torsion(alpha);
                for x in &t {
                    for y in &t {
                        if !t.contains(&x.product(y)) {
                            failures.push(format!("torsion closure {group} alpha={alpha}"));
                        }
                    }
                }
            }
        }
    }

    // (d) Lenstra cases vs the general conditions for g in ±2..±50, m <= 24
    {
        for g in (2i128..=50).chain(-50i128..=-2) {
            for m in 1..=24u64 {
                match indexdensity::vanishing::lenstra_consistency(
                    Rational::from_int(g).unwrap(),
                    m,
                ) {
                    Ok(true) => {}
                    Ok(false) => failures.push(format!("lenstra consistency g={g} m={m}")),
                    Err(e) => failures.push(format!("lenstra error g={g} m={m}: {e}")),
                }
            }
        }
    }

    // (e) on the random family: odd-m completeness (exact zero iff condition
    // A) and, for every m, sufficiency (a matched condition implies an
    // exactly zero engine bracket)
    {
        let mut rng = Rng(0xfeed_f00d_dead_beef);
        for _ in 0..20 {
            let spec = random_group(&mut rng);
            let lat = build_lattice(&spec).unwrap();
            for m in 1..=12u64 {
                let zero = rho(&lat, m, 1e-9).unwrap().exact_zero;
                let verdict = sufficient_vanishing(&lat, m).unwrap();
                if m % 2 == 1 {
                    let cond_a = verdict.matched_condition == MatchedCondition::A;
                    if zero != cond_a {
                        failures.push(format!(
                            "odd completeness <{}> m={m}: zero={zero} condA={cond_a}",
                            spec.canonical()
                        ));
                    }
                } else if verdict.vanishes && !zero {
                    failures.push(format!(
                        "sufficiency <{}> m={m}: condition {} but engine nonzero",
                        spec.canonical(),
                        verdict.matched_condition
                    ));
                }
            }
        }
    }

    // (f) thread-count invariance of the scan
    {
        let spec: GroupSpec = "-1,2".parse().unwrap();
        let one = scan(
            &spec,
            1_000_000,
            12,
            ScanOptions {
                threads: 1,
                ..Default::default()
            },
        )
        .unwrap();
        let four = scan(
            &spec,
            1_000_000,
            12,
            ScanOptions {
                threads: 4,
                segment_size: 1 << 15,
                ..Default::default()
            },
        )
        .unwrap();
        if one.counts != four.counts
            || one.overflow != four.overflow
            || one.excluded != four.excluded
        {
            failures.push("thread invariance".into());
        }
    }

    let elapsed = started.elapsed().as_secs_f64();
    let pass = failures.is_empty();
    report(
        9,
        "property suites",
        pass,
        &format!("({elapsed:.1}s, {} failures)", failures.len()),
    );
    for f in failures.iter().take(8) {
        println!("    {f}");
    }
    assert!(pass, "criterion 9 failed");
}

/// The Hp type must round-trip its exact rational for the table comparisons
/// above to be meaningful.
#[test]
fn hp_rational_round_trip() {
    let x = Hp::from_decimal_str("0.0701167150", 192).unwrap();
    let q = x.to_rational();
    let y = Hp::from_rational(&q, 192);
    assert_eq!(x, y);
}
