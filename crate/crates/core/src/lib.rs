//! Exact verification that the blow-up `Y` of `(P^1)^r` at a
//! `mu_n`-stable point configuration has automorphism group `(Z/n)^r`.
//!
//! Everything is computed exactly: intersection numbers over the integers,
//! Möbius stabilizers and vector-field kernels over a prime field `F_q`
//! with `n | q - 1`.

pub mod blowup;
pub mod cone;
pub mod fieldgeom;
pub mod lattice;
pub mod report;
pub mod rigidity;
pub mod vectorfields;

pub use blowup::Blowup;
