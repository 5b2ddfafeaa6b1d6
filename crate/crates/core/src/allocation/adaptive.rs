use super::{floor_tol, AcceptRule, Decision, MarketParams, Policy};
use crate::arrival::Customer;
use crate::error::{Error, Result};

/// Data-driven upper bounds (u₁, u₁,₂) on n₁ and n₁ + n₂ at step `step`.
///
/// Before λ reaches `delta` both bounds equal `b`. Afterwards each is the
/// smaller of the pure-rate extrapolation `o/(λp)` and the
/// adversary-aware bound `(o + (1−λ)(1−p)n)/(1−p+λp)`.
pub fn u_bounds(
    o1: usize,
    o2: usize,
    step: usize,
    params: &MarketParams,
    delta: f64,
) -> (f64, f64) {
    let b = params.b as f64;
    let n = params.n as f64;
    let lambda = step as f64 / n;
    if lambda < delta - 1e-12 {
        return (b, b);
    }
    let p = params.p;
    let bound = |observed: f64| {
        let rate = observed / (lambda * p);
        let mixed = (observed + (1.0 - lambda) * (1.0 - p) * n) / (1.0 - p + lambda * p);
        rate.min(mixed)
    };
    (bound(o1 as f64), bound((o1 + o2) as f64))
}

/// Adaptive threshold policy targeting competitive ratio `c`.
///
/// A type-2 customer is accepted when u₁,₂(λ) < b, or else when
/// q₂ ≤ ⌊φb + c(b − u₁(λ))⁺⌋ with φ = (1−c)/(1−a).
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptivePolicy {
    params: MarketParams,
    c: f64,
    phi: f64,
    delta: f64,
    /// Observed arrivals so far.
    pub o1: usize,
    pub o2: usize,
    pub q1: usize,
    pub q2: usize,
}

pub fn alg2_policy(c: f64, params: &MarketParams) -> Result<AdaptivePolicy> {
    if !(0.0..1.0).contains(&c) {
        return Err(Error::InvalidParameter(format!(
            "target ratio c = {c} must lie in [0, 1)"
        )));
    }
    if params.p <= 0.0 {
        return Err(Error::InvalidParameter(
            "the adaptive policy needs p > 0".into(),
        ));
    }
    let phi = (1.0 - c) / (1.0 - params.a);
    Ok(AdaptivePolicy {
        params: *params,
        c,
        phi,
        delta: phi * params.b as f64 / params.n as f64,
        o1: 0,
        o2: 0,
        q1: 0,
        q2: 0,
    })
}

impl AdaptivePolicy {
    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// ⌊φb + c(b − u₁)⁺⌋.
    pub fn reservation_threshold(&self, u1: f64) -> i64 {
        let b = self.params.b as f64;
        floor_tol(self.phi * b + self.c * (b - u1).max(0.0))
    }
}

impl Policy for AdaptivePolicy {
    fn decide(&mut self, step: usize, arrival: Customer, inventory_left: usize) -> Decision {
        match arrival {
            Customer::Type1 => self.o1 += 1,
            Customer::Type2 => self.o2 += 1,
            Customer::Empty => return Decision::Reject,
        }
        if inventory_left == 0 {
            return Decision::Reject;
        }
        if arrival == Customer::Type1 {
            self.q1 += 1;
            return Decision::Accept(AcceptRule::HighFare);
        }
        let (u1, u12) = u_bounds(self.o1, self.o2, step, &self.params, self.delta);
        let rule = if u12 < self.params.b as f64 {
            AcceptRule::Surplus
        } else if (self.q2 as i64) <= self.reservation_threshold(u1) {
            AcceptRule::Adaptive
        } else {
            return Decision::Reject;
        };
        self.q2 += 1;
        Decision::Accept(rule)
    }
}
