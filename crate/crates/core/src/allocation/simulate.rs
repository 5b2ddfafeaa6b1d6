use std::io::{self, Write};

use super::{AcceptRule, Decision, MarketParams, Policy};
use crate::arrival::{Customer, Realization};
use crate::error::{Error, Result};
use crate::format::sig6;

/// Counters and decision after one step of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow {
    pub step: usize,
    pub arrival: Customer,
    /// `None` for empty periods, where the policy is not queried.
    pub decision: Option<Decision>,
    pub q1: usize,
    pub q2e: usize,
    pub q2f: usize,
    pub q2: usize,
    pub inventory_left: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AllocationOutcome {
    pub revenue: f64,
    pub q1: usize,
    pub q2: usize,
    /// Type-2 acceptances through the evolving rule.
    pub q2e: usize,
    /// Type-2 acceptances through the fixed rule.
    pub q2f: usize,
    /// Empty unless the run was recorded.
    pub trajectory: Vec<TrajectoryRow>,
}

/// Plays `policy` against a realization and records every step.
pub fn run_policy<P: Policy + ?Sized>(
    policy: &mut P,
    r: &Realization<'_>,
    params: &MarketParams,
) -> Result<AllocationOutcome> {
    if r.n() != params.n {
        return Err(Error::InvalidParameter(format!(
            "realization has {} steps but n = {}",
            r.n(),
            params.n
        )));
    }
    run_arrivals(policy, r.arrivals(), params, true)
}

/// The game loop over a raw arrival sequence. The policy must already have
/// been started.
pub fn run_arrivals<P: Policy + ?Sized>(
    policy: &mut P,
    arrivals: &[Customer],
    params: &MarketParams,
    record: bool,
) -> Result<AllocationOutcome> {
    if arrivals.len() != params.n {
        return Err(Error::InvalidParameter(format!(
            "arrival sequence has {} steps but n = {}",
            arrivals.len(),
            params.n
        )));
    }
    let mut out = AllocationOutcome {
        revenue: 0.0,
        q1: 0,
        q2: 0,
        q2e: 0,
        q2f: 0,
        trajectory: Vec::with_capacity(if record { params.n } else { 0 }),
    };
    let mut inventory = params.b;
    for (i, &arrival) in arrivals.iter().enumerate() {
        let step = i + 1;
        let decision = match arrival {
            Customer::Empty => None,
            kind => {
                let d = policy.decide(step, kind, inventory);
                if let Decision::Accept(rule) = d {
                    if inventory == 0 {
                        return Err(Error::ContractViolation { step });
                    }
                    inventory -= 1;
                    if kind == Customer::Type1 {
                        out.q1 += 1;
                    } else {
                        out.q2 += 1;
                        match rule {
                            AcceptRule::Evolving => out.q2e += 1,
                            AcceptRule::Fixed => out.q2f += 1,
                            _ => {}
                        }
                    }
                }
                Some(d)
            }
        };
        if record {
            out.trajectory.push(TrajectoryRow {
                step,
                arrival,
                decision,
                q1: out.q1,
                q2e: out.q2e,
                q2f: out.q2f,
                q2: out.q2,
                inventory_left: inventory,
            });
        }
    }
    out.revenue = out.q1 as f64 + params.a * out.q2 as f64;
    Ok(out)
}

pub const TRAJECTORY_HEADER: &str =
    "step,lambda,arrival_kind,decision,q1,q2e,q2f,q2,inventory_left";

pub fn write_trajectory_csv<W: Write>(
    out: &mut W,
    rows: &[TrajectoryRow],
    n: usize,
) -> io::Result<()> {
    writeln!(out, "{TRAJECTORY_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            row.step,
            sig6(row.step as f64 / n as f64),
            row.arrival.name(),
            row.decision.map_or("none", Decision::label),
            row.q1,
            row.q2e,
            row.q2f,
            row.q2,
            row.inventory_left
        )?;
    }
    Ok(())
}
