//! Sieve the primes below 10^7, histogram the index of the reduction group,
//! and compare with the predicted densities. Raise the limit (and use
//! --release) to reproduce the reference tables more tightly; the same code
//! path accepts limits up to 10^10.
//!
//!     cargo run --release --example prime_scan

use indexdensity::density::rho;
use indexdensity::harness::{compare, scan, ScanOptions};
use indexdensity::lattice::{build_lattice, GroupSpec};

fn main() {
    let spec: GroupSpec = "-1,2".parse().unwrap();
    let x = 10_000_000u64;
    let m_max = 8u32;
    let hist = scan(&spec, x, m_max, ScanOptions::default()).unwrap();
    println!(
        "group <{}>, primes below {x}: counted {} (excluded {:?}), {:.2}s\n",
        hist.group, hist.total_primes, hist.excluded, hist.wall_seconds
    );

    let lat = build_lattice(&spec).unwrap();
    let densities: Vec<_> = (1..=m_max as u64)
        .map(|m| rho(&lat, m, 1e-9).unwrap())
        .collect();
    let report = compare(&hist, &densities);
    println!("{:>3} {:>9} {:>11} {:>11} {:>10} {:>6}", "m", "count", "measured", "predicted", "dev", "");
    for row in &report.rows {
        println!(
            "{:>3} {:>9} {:>11.7} {:>11.7} {:>10.2e} {:>6}",
            row.m,
            row.count,
            row.ratio,
            row.rho,
            row.deviation,
            if row.flagged { "DEV" } else { "ok" }
        );
    }

    // a vanishing pair: the index-2 bucket of <-1,27> stays empty
    let spec: GroupSpec = "-1,27".parse().unwrap();
    let hist = scan(&spec, 1_000_000, 4, ScanOptions::default()).unwrap();
    println!(
        "\n<-1,27>: counts by index below 10^6 = {:?} (index 2 is provably empty)",
        hist.counts
    );
}
