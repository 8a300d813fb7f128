//! Exact elimination theory over the integers.
//!
//! The crate is `no_std` (it only needs `alloc`) and provides:
//!
//! * [`poly`] — sparse multivariate polynomials over arbitrary-precision
//!   integers, with block-aware degrees, Kronecker packing, GCD and
//!   square-free parts;
//! * [`polydet`] — determinants of polynomial matrices;
//! * [`resultant`] — Macaulay resultants, the generalized characteristic
//!   polynomial rescue, and multihomogeneous (Canny–Emiris) resultants;
//! * [`dimension`] — Monte Carlo solvability and dimension predicates;
//! * [`chow`], [`hurwitz`] — Chow and Hurwitz forms of projective varieties;
//! * [`multiproj`] — supports, multidegrees, hypersurface formats and
//!   multigraded Chow forms of multiprojective varieties;
//! * [`polymatroid`] — submodular functions, duality, truncation, elongation.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod chow;
pub mod dimension;
mod error;
pub mod hurwitz;
pub mod interp;
mod lp;
pub mod multiproj;
pub mod poly;
pub mod polydet;
pub mod polymatroid;
pub mod resultant;
pub mod rng;
pub mod upoly;

pub use error::{Error, Result};
pub use poly::{DegreeProfile, MPoly, VarTable};
pub use rng::RandomGrid;
