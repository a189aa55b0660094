#![no_std]

//! Stochastic analysis of greedy geographic routing in a sensor field whose
//! node density falls off as `λ/u` with sink distance `u`.
//!
//! The crate is `no_std` (it needs `alloc`) and carries no IO. It covers:
//!
//! - [`model`]: parameters, polar geometry, sink angles and circle intersections.
//! - [`elliptic`]: complex Carlson integrals `R_F`, `R_D` and the Legendre forms built on them.
//! - [`measure`]: mean measures of feasible regions (closed form, quadrature,
//!   asymptotic expansions, path-dependent and sleep-weighted variants).
//! - [`hop`]: single-hop laws, moments, void atoms and Kullback–Leibler divergence.
//! - [`multihop`]: joint hop/angle densities, distributions of `Z_n` and of the hop count `N`.
//! - [`qmc`]: leaped Halton and shifted rank-1 lattice rules, replicate error estimates
//!   and the importance-sampling transform used by the multihop integrals.
//! - [`sim`]: a greedy routing simulator used as an oracle.
//!
//! Lengths are in the same unit as the transmission radius `r`; all
//! operations are pure functions of their arguments unless they take an RNG.

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod elliptic;
pub mod error;
pub mod hop;
pub mod measure;
pub mod model;
pub mod multihop;
pub mod qmc;
pub mod quad;
pub mod sim;
pub mod stats;

pub use error::{Error, Result};
pub use measure::MeasureMode;
pub use model::{ModelParams, PathState, PolarPoint, RawParams};
pub use multihop::{MultihopConfig, PathModel};
pub use qmc::{Estimate, QmcRule, RuleKind};
