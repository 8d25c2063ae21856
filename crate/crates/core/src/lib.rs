//! Momentum-pair solver for two particles in a one-dimensional infinite well
//! coupled by a contact interaction `U·δ(x1 − x2)`.
//!
//! Lengths are measured in units of the well width and energies in units of
//! `ħ²/(2mL²)`, so the non-interacting momenta are `nπ` and the scaled energy
//! of a pair is `k1² + k2²`.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the
//! command-line front end live in the `pairwell` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cimethod;
mod error;
pub mod numerics;
pub mod perturb;
pub mod reduced;
pub mod solver;
pub mod transcend;
pub mod wavefn;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use transcend::{MomentumPair, ParityClass, RatioSign, StateLabel, TranscendentalCase};

