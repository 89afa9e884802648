//! Densities of primes classified by the index of a finitely generated
//! multiplicative subgroup of the rationals.
//!
//! For Γ ⊂ Q* finitely generated and p outside the support of Γ, the
//! reduction Γ_p ⊂ F_p* has some index [F_p* : Γ_p]; under GRH the primes
//! with index exactly m have a density ρ(Γ, m) given by an Euler product
//! times a finite rational correction. This crate computes those densities
//! exactly-up-to-one-transcendental-constant, decides when they vanish, and
//! checks them against actual prime counts:
//!
//! - [`lattice`]: Γ as a sign-augmented exponent lattice over its support
//!   primes, with |Γ(m)|, 2-torsion and power-free representatives read off
//!   a Smith normal form.
//! - [`kummer`]: entanglement subgroups and degrees of Q(ζ_n, Γ^{1/d}).
//! - [`density`]: the main density formula ρ(Γ, m) = A(Γ,m)·(B_m − c·B_{2m}),
//!   with exact rational bookkeeping and a rigorous error interval, plus the
//!   inclusion-exclusion series oracle it is tested against.
//! - [`rank_one`]: closed forms for Γ = ⟨a⟩ and Γ = ⟨−1, a⟩.
//! - [`vanishing`]: combinatorial criteria for ρ(Γ, m) = 0 and finiteness of
//!   the corresponding prime set, no density evaluation required.
//! - [`harness`]: a segmented-sieve scanner that measures the empirical index
//!   histogram up to x and compares it with the predictions.
//! - [`highprec`]: fixed-point big-integer reals and the prime-zeta machinery
//!   behind the Euler-product constants.
//!
//! The `indexdensity` binary exposes all of it as subcommands; the crate's
//! examples/ directory walks through each capability.

pub mod arith;
pub mod cli;
pub mod density;
pub mod error;
pub mod factor;
pub mod harness;
pub mod highprec;
pub mod kummer;
pub mod lattice;
pub mod rank_one;
pub mod snf;
pub mod vanishing;

pub use cli::run_cli;
pub use error::{Error, Result};
pub use lattice::{build_lattice, CosetElement, ExponentLattice, GroupSpec, PowerFreeRep, Rational};
