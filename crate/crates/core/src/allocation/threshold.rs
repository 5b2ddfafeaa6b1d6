use super::{floor_tol, AcceptRule, Decision, MarketParams, Policy};
use crate::arrival::Customer;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default)]
pub struct AcceptAll;

impl Policy for AcceptAll {
    fn decide(&mut self, _step: usize, arrival: Customer, inventory_left: usize) -> Decision {
        match (arrival, inventory_left) {
            (_, 0) => Decision::Reject,
            (Customer::Type1, _) => Decision::Accept(AcceptRule::HighFare),
            _ => Decision::Accept(AcceptRule::Basic),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RejectAll;

impl Policy for RejectAll {
    fn decide(&mut self, _: usize, _: Customer, _: usize) -> Decision {
        Decision::Reject
    }
}

/// Evolving-plus-fixed threshold policy.
///
/// Type-1 customers are always taken while inventory lasts. A type-2
/// customer is taken by the evolving rule when `q1 + q2e < ⌊λpb⌋`, otherwise
/// by the fixed rule when `q2f < ⌊θb⌋` with θ = (1−p)/(2−a).
#[derive(Debug, Clone, PartialEq)]
pub struct NonAdaptivePolicy {
    params: MarketParams,
    fixed_cap: usize,
    pub q1: usize,
    pub q2e: usize,
    pub q2f: usize,
}

pub fn alg1_policy(params: &MarketParams) -> Result<NonAdaptivePolicy> {
    if params.p >= 1.0 {
        return Err(Error::InvalidParameter(
            "the non-adaptive policy needs p < 1".into(),
        ));
    }
    Ok(NonAdaptivePolicy {
        params: *params,
        fixed_cap: floor_tol(NonAdaptivePolicy::theta(params) * params.b as f64) as usize,
        q1: 0,
        q2e: 0,
        q2f: 0,
    })
}

impl NonAdaptivePolicy {
    pub fn theta(params: &MarketParams) -> f64 {
        (1.0 - params.p) / (2.0 - params.a)
    }

    pub fn fixed_cap(&self) -> usize {
        self.fixed_cap
    }

    /// ⌊λpb⌋ at the given step.
    pub fn evolving_cap(&self, step: usize) -> usize {
        let MarketParams { b, n, p, .. } = self.params;
        floor_tol(step as f64 * p * b as f64 / n as f64).max(0) as usize
    }
}

impl Policy for NonAdaptivePolicy {
    fn decide(&mut self, step: usize, arrival: Customer, inventory_left: usize) -> Decision {
        if inventory_left == 0 {
            return Decision::Reject;
        }
        match arrival {
            Customer::Type1 => {
                self.q1 += 1;
                Decision::Accept(AcceptRule::HighFare)
            }
            Customer::Type2 if self.q1 + self.q2e < self.evolving_cap(step) => {
                self.q2e += 1;
                Decision::Accept(AcceptRule::Evolving)
            }
            Customer::Type2 if self.q2f < self.fixed_cap => {
                self.q2f += 1;
                Decision::Accept(AcceptRule::Fixed)
            }
            _ => Decision::Reject,
        }
    }
}

/// Single booking limit ⌊b/(2−a)⌋ on type-2 customers.
#[derive(Debug, Clone, PartialEq)]
pub struct BallQueyranne {
    cap: usize,
    pub q2: usize,
}

pub fn ball_queyranne_policy(params: &MarketParams) -> BallQueyranne {
    BallQueyranne {
        cap: floor_tol(params.b as f64 / (2.0 - params.a)) as usize,
        q2: 0,
    }
}

impl BallQueyranne {
    pub fn cap(&self) -> usize {
        self.cap
    }
}

impl Policy for BallQueyranne {
    fn decide(&mut self, _step: usize, arrival: Customer, inventory_left: usize) -> Decision {
        if inventory_left == 0 {
            return Decision::Reject;
        }
        match arrival {
            Customer::Type1 => Decision::Accept(AcceptRule::HighFare),
            Customer::Type2 if self.q2 < self.cap => {
                self.q2 += 1;
                Decision::Accept(AcceptRule::Fixed)
            }
            _ => Decision::Reject,
        }
    }
}

/// Spends inventory at a uniform rate: a type-2 customer is taken only while
/// the total accepted count is below ⌊λb⌋. Type-1 customers are taken while
/// inventory lasts.
#[derive(Debug, Clone, PartialEq)]
pub struct UniformRate {
    params: MarketParams,
    pub accepted: usize,
}

pub fn uniform_rate_policy(params: &MarketParams) -> UniformRate {
    UniformRate {
        params: *params,
        accepted: 0,
    }
}

impl Policy for UniformRate {
    fn decide(&mut self, step: usize, arrival: Customer, inventory_left: usize) -> Decision {
        if inventory_left == 0 {
            return Decision::Reject;
        }
        let cap = floor_tol(step as f64 * self.params.b as f64 / self.params.n as f64) as usize;
        match arrival {
            Customer::Type1 => {
                self.accepted += 1;
                Decision::Accept(AcceptRule::HighFare)
            }
            Customer::Type2 if self.accepted < cap => {
                self.accepted += 1;
                Decision::Accept(AcceptRule::Basic)
            }
            _ => Decision::Reject,
        }
    }
}
