//! Densities for rank-2 groups, including ones with negative generators --
//! the sign column of the exponent lattice changes the entanglement groups
//! and with them the densities.
//!
//!     cargo run --release --example rank_two_groups

use indexdensity::density::rho;
use indexdensity::lattice::{build_lattice, GroupSpec};

fn main() {
    let groups = ["-1,2,3", "2,3", "2,-3", "-2,3", "-2,-3"];
    print!("{:>10}", "group\\m");
    for m in 1..=8u64 {
        print!("{m:>12}");
    }
    println!();
    for g in groups {
        let spec: GroupSpec = g.parse().unwrap();
        let lat = build_lattice(&spec).unwrap();
        print!("{g:>10}");
        for m in 1..=8u64 {
            let dv = rho(&lat, m, 1e-9).unwrap();
            print!("{:>12}", dv.display(true));
        }
        println!();
    }
    println!("\nnote <2,3> and <-2,3> coincide while <2,-3> differs: the coset of");
    println!("-3 has representative -3 = 1 mod 4, so sqrt(-3) already lies in the");
    println!("right cyclotomic field and shifts the m = 1 and m = 2 densities.");
}
