//! Square-tiled surfaces (origamis) in the stratum H(2).
//!
//! The crate covers the full pipeline behind the Siegel–Veech constants of
//! regular cylinders on square-tiled surfaces:
//!
//! - [`origami`]: permutation-pair surfaces, stratum detection, primitivity,
//!   canonical relabeling and the `SL(2,Z)` action;
//! - [`orbit`]: breadth-first enumeration of `SL(2,Z)`-orbits and their
//!   partition into cusps (orbits of the horizontal shear);
//! - [`cylinders`]: horizontal cylinder decompositions and two-cylinder
//!   coordinates;
//! - [`census`]: exact cusp census and the constants `c̃(A_n)`, `c̃(B_n)`,
//!   both from the parameter sums and from the orbit enumeration;
//! - [`asymptotics`]: divisor-sum functions `F`, `S(n)` and their limits;
//! - [`geodesics`]: brute-force counting of cylinders of closed geodesics.
//!
//! Everything here is pure computation on immutable values. The crate is
//! `no_std` and only needs an allocator; IO and the command-line front end
//! live in the `origami-sv` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod asymptotics;
pub mod census;
pub mod cylinders;
mod error;
pub mod geodesics;
pub mod orbit;
pub mod origami;
pub mod perm;
pub mod sl2z;

pub use error::{Error, Result};
pub use num_rational::BigRational;
pub use num_bigint::BigInt;

/// Exact rational used for every census quantity.
pub type ExactRational = BigRational;
