//! Degrees of the radical extensions Q(zeta_n, Γ^{1/d}) and the entanglement
//! groups that make them smaller than the generic phi(n)·|Γ(d)|.
//!
//!     cargo run --release --example kummer_degrees

use indexdensity::arith::euler_phi_u64;
use indexdensity::kummer::{kummer_degree, twist_subgroup};
use indexdensity::lattice::{build_lattice, GroupSpec};

fn main() {
    let spec: GroupSpec = "2".parse().unwrap();
    let lat = build_lattice(&spec).unwrap();
    println!("Γ = <2>:");
    for (n, d) in [(2u64, 2u64), (4, 2), (8, 2), (8, 8), (24, 2)] {
        let deg = kummer_degree(&lat, n, d).unwrap();
        let generic = euler_phi_u64(n) * lat.gamma_m_order(d).to_string().parse::<u64>().unwrap();
        let twist = twist_subgroup(&lat, n, d.trailing_zeros()).unwrap();
        println!(
            "  [Q(zeta_{n}, 2^(1/{d})) : Q] = {deg:>4}   generic {generic:>4}, entanglement order {}",
            twist.order()
        );
    }
    println!("  (sqrt 2 lies in Q(zeta_8), so n = 8 halves the generic degree)\n");

    let spec: GroupSpec = "-1,3".parse().unwrap();
    let lat = build_lattice(&spec).unwrap();
    println!("Γ = <-1,3>:");
    for (n, d) in [(2u64, 2u64), (6, 2), (12, 2), (12, 4)] {
        let deg = kummer_degree(&lat, n, d).unwrap();
        let twist = twist_subgroup(&lat, n, d.trailing_zeros()).unwrap();
        println!(
            "  [Q(zeta_{n}, Γ^(1/{d})) : Q] = {deg:>4}   entanglement order {}",
            twist.order()
        );
    }
    println!("  (sqrt -3 lies in Q(zeta_6): the coset of -3 enters at n = 6)");

    let spec: GroupSpec = "2,3".parse().unwrap();
    let lat = build_lattice(&spec).unwrap();
    let deg = kummer_degree(&lat, 4, 4).unwrap();
    println!("\nΓ = <2,3>: [Q(zeta_4, 2^(1/4), 3^(1/4)) : Q] = {deg}");
}
