//! Densities of primes by index for the torsion family <-1, a>, computed two
//! independent ways: the general lattice engine and the explicit rank-one
//! closed form. The rows for a = 2..8 reproduce the published reference
//! table.
//!
//!     cargo run --release --example density_table

use indexdensity::density::rho;
use indexdensity::lattice::{build_lattice, GroupSpec, Rational};
use indexdensity::rank_one::{decompose, minus_one_a_density};

fn main() {
    println!("rho(<-1,a>, m): density of primes p with [F_p* : <-1,a> mod p] = m\n");
    print!("{:>4}", "a\\m");
    for m in 1..=10u64 {
        print!("{m:>12}");
    }
    println!();
    for a in 2i128..=8 {
        let spec = GroupSpec::from_ints(&[-1, a]).unwrap();
        let lat = build_lattice(&spec).unwrap();
        let dec = decompose(Rational::from_int(a).unwrap()).unwrap();
        print!("{a:>4}");
        for m in 1..=10u64 {
            let engine = rho(&lat, m, 1e-9).unwrap();
            let closed = minus_one_a_density(&dec, m, 1e-9).unwrap();
            assert!(
                (engine.to_f64() - closed.to_f64()).abs() < 1e-9,
                "paths disagree at a={a} m={m}"
            );
            print!("{:>12}", engine.display(true));
        }
        println!();
    }
    println!("\nevery cell agreed across both code paths to 1e-9");
    println!("(row a=2, m=1 is 3A = 0.5609337..., twice the Artin constant times 3/4)");
}
