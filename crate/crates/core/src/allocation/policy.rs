use std::fmt;
use std::str::FromStr;

use super::MarketParams;
use crate::arrival::Customer;
use crate::error::{Error, Result};
use crate::rng::TrialRng;

/// Which rule admitted a customer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AcceptRule {
    /// Type-1 customer with inventory left.
    HighFare,
    /// Time-proportional cap on type-2 acceptances.
    Evolving,
    /// Static booking limit on type-2 acceptances.
    Fixed,
    /// Type-2 accepted because the projected total demand fits the inventory.
    Surplus,
    /// Type-2 accepted under the data-driven reservation threshold.
    Adaptive,
    /// Anything else (rate caps, accept-all).
    Basic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Reject,
    Accept(AcceptRule),
}

impl Decision {
    pub fn is_accept(self) -> bool {
        matches!(self, Decision::Accept(_))
    }

    pub fn label(self) -> &'static str {
        match self {
            Decision::Reject => "reject",
            Decision::Accept(AcceptRule::HighFare) => "accept",
            Decision::Accept(AcceptRule::Evolving) => "accept-evolving",
            Decision::Accept(AcceptRule::Fixed) => "accept-fixed",
            Decision::Accept(AcceptRule::Surplus) => "accept-surplus",
            Decision::Accept(AcceptRule::Adaptive) => "accept-adaptive",
            Decision::Accept(AcceptRule::Basic) => "accept",
        }
    }
}

/// An online allocation rule.
///
/// A policy is queried once for every type-1 or type-2 arrival, in order,
/// with the 1-based step index and the inventory still on hand. It only ever
/// sees the arrival prefix. Returning an acceptance with no inventory left
/// is a contract violation that the simulator reports as an error.
pub trait Policy: Send {
    /// Called once before the first arrival of a run. Randomized policies
    /// draw their coins here.
    fn start(&mut self, _rng: &mut TrialRng) {}

    fn decide(&mut self, step: usize, arrival: Customer, inventory_left: usize) -> Decision;
}

impl<P: Policy + ?Sized> Policy for Box<P> {
    fn start(&mut self, rng: &mut TrialRng) {
        (**self).start(rng)
    }

    fn decide(&mut self, step: usize, arrival: Customer, inventory_left: usize) -> Decision {
        (**self).decide(step, arrival, inventory_left)
    }
}

/// A buildable description of a policy; one fresh instance per run.
#[derive(Debug, Clone, PartialEq)]
pub enum PolicySpec {
    AcceptAll,
    RejectAll,
    BallQueyranne,
    UniformRate,
    NonAdaptive,
    Adaptive { c: f64 },
    Mixture(Vec<(PolicySpec, f64)>),
}

impl PolicySpec {
    pub fn build(&self, params: &MarketParams) -> Result<Box<dyn Policy>> {
        Ok(match self {
            PolicySpec::AcceptAll => Box::new(super::AcceptAll),
            PolicySpec::RejectAll => Box::new(super::RejectAll),
            PolicySpec::BallQueyranne => Box::new(super::ball_queyranne_policy(params)),
            PolicySpec::UniformRate => Box::new(super::uniform_rate_policy(params)),
            PolicySpec::NonAdaptive => Box::new(super::alg1_policy(params)?),
            PolicySpec::Adaptive { c } => Box::new(super::alg2_policy(*c, params)?),
            PolicySpec::Mixture(parts) => {
                let built = parts
                    .iter()
                    .map(|(spec, w)| Ok((spec.build(params)?, *w)))
                    .collect::<Result<Vec<_>>>()?;
                Box::new(super::mixture_policy(built)?)
            }
        })
    }

    /// True when the policy draws random coins of its own.
    pub fn is_randomized(&self) -> bool {
        matches!(self, PolicySpec::Mixture(_))
    }
}

impl fmt::Display for PolicySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolicySpec::AcceptAll => write!(f, "accept-all"),
            PolicySpec::RejectAll => write!(f, "reject-all"),
            PolicySpec::BallQueyranne => write!(f, "ball"),
            PolicySpec::UniformRate => write!(f, "uniform"),
            PolicySpec::NonAdaptive => write!(f, "alg1"),
            PolicySpec::Adaptive { c } => write!(f, "alg2(c={c})"),
            PolicySpec::Mixture(parts) => {
                write!(f, "mixture(")?;
                for (i, (spec, w)) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "{w}*{spec}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Parses the simple names; `alg2` and `mixture` need extra arguments and
/// are assembled by the caller.
impl FromStr for PolicySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "accept-all" => Ok(PolicySpec::AcceptAll),
            "reject-all" => Ok(PolicySpec::RejectAll),
            "ball" => Ok(PolicySpec::BallQueyranne),
            "uniform" => Ok(PolicySpec::UniformRate),
            "alg1" => Ok(PolicySpec::NonAdaptive),
            other => Err(Error::InvalidParameter(format!("unknown policy {other:?}"))),
        }
    }
}
