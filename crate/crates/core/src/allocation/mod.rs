//! Offline optimum, the online policy contract, the simulator, and every
//! policy the toolkit ships.

mod adaptive;
mod mixture;
mod policy;
mod simulate;
mod threshold;

pub use adaptive::{alg2_policy, u_bounds, AdaptivePolicy};
pub use mixture::{mixture_policy, MixturePolicy};
pub use policy::{AcceptRule, Decision, Policy, PolicySpec};
pub use simulate::{
    run_arrivals, run_policy, write_trajectory_csv, AllocationOutcome, TrajectoryRow,
};
pub use threshold::{
    alg1_policy, ball_queyranne_policy, uniform_rate_policy, AcceptAll, BallQueyranne,
    NonAdaptivePolicy, RejectAll, UniformRate,
};

use crate::error::{Error, Result};

/// Inventory `b`, horizon `n`, type-2 revenue `a` and stochastic fraction `p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarketParams {
    pub b: usize,
    pub n: usize,
    pub a: f64,
    pub p: f64,
}

impl MarketParams {
    pub fn new(b: usize, n: usize, a: f64, p: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "n = {n} must be at least 3"
            )));
        }
        if b == 0 || b > n {
            return Err(Error::InvalidParameter(format!(
                "b = {b} must lie in 1..={n}"
            )));
        }
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "a = {a} must lie in (0, 1)"
            )));
        }
        crate::arrival::check_probability(p)?;
        Ok(Self { b, n, a, p })
    }

    pub fn lambda(&self, step: usize) -> f64 {
        step as f64 / self.n as f64
    }
}

/// Offline optimum: min{b, n₁} + a·min{n₂, (b − n₁)⁺}.
pub fn opt_offline(n1: usize, n2: usize, b: usize, a: f64) -> f64 {
    let high = n1.min(b);
    let low = n2.min(b.saturating_sub(n1));
    high as f64 + a * low as f64
}

/// `⌊x⌋` that forgives round-off just below an integer.
pub(crate) fn floor_tol(x: f64) -> i64 {
    (x + 1e-9).floor() as i64
}
