//! The Euler-product constants kappa_r behind every density in this crate,
//! with the rank-1 case pinned to the Artin constant.
//!
//!     cargo run --release --example artin_constant

use indexdensity::highprec::{decimal_string, euler_kappa, kappa_direct_oracle};

fn main() {
    println!("kappa_r = prod over odd primes l of (1 - 1/((l-1) l^r))\n");
    for r in 1..=4u32 {
        let table = euler_kappa(r, 1e-18).unwrap();
        println!(
            "kappa_{r} = {}  (error <= {:.1e})",
            decimal_string(&table.kappa_odd, 24, false),
            table.precision
        );
    }

    let artin = euler_kappa(1, 1e-18).unwrap().kappa_odd.div_u64(2);
    println!("\nArtin constant A = kappa_1 / 2 = {}", decimal_string(&artin, 24, false));
    println!("reference           A = 0.373955813619202288054...");

    // cross-check the series machinery against the plain truncated product
    let (oracle, tail) = kappa_direct_oracle(1, 1_000_000, 192);
    println!(
        "\ndirect product over primes below 10^6: {} (tail < {tail:.1e})",
        decimal_string(&oracle, 12, false)
    );
}
