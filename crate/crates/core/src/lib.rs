//! Online allocation of a finite inventory to two fare classes when a
//! fraction of arrivals is randomly permuted and the rest is adversarial.
//!
//! The crate provides the arrival model, the allocation policies and their
//! simulator, a solver for the factor-revealing program that sets the
//! adaptive policy's guarantee, the single-item selection variant, and the
//! experiment drivers behind the `ppalloc` binary.

pub mod allocation;
pub mod arrival;
pub mod cli;
pub mod error;
pub mod experiments;
pub mod format;
pub mod mp1;
pub mod rng;
pub mod secretary;

pub use error::{Error, Result};
