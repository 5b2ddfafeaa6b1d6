//! Single-item selection (b = 1) with distinct revenues under partially
//! predictable arrivals.

use rand::seq::SliceRandom;
use rayon::prelude::*;

use crate::arrival::{check_probability, StochasticAssignment};
use crate::error::{Error, Result};
use crate::rng::{self, rng_from_seed, trial_rng};

/// Adversary's ordering of `n` customers with distinct positive revenues.
#[derive(Debug, Clone, PartialEq)]
pub struct SecretaryInstance {
    revenues: Vec<f64>,
    best: usize,
}

impl SecretaryInstance {
    pub fn new(revenues: Vec<f64>) -> Result<Self> {
        if revenues.len() < 2 {
            return Err(Error::InvalidInstance("need at least two customers".into()));
        }
        if revenues.iter().any(|&v| !v.is_finite() || v <= 0.0) {
            return Err(Error::InvalidInstance("revenues must be positive".into()));
        }
        let mut sorted = revenues.clone();
        sorted.sort_by(f64::total_cmp);
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInstance("revenues must be distinct".into()));
        }
        let best = revenues
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .expect("non-empty");
        Ok(Self { revenues, best })
    }

    /// Revenues `n, n−1, …, 1` in the order given by `ranks` (rank 1 is the
    /// best customer).
    pub fn from_ranks(ranks: &[usize]) -> Result<Self> {
        let n = ranks.len();
        Self::new(ranks.iter().map(|&r| (n + 1 - r) as f64).collect())
    }

    pub fn revenues(&self) -> &[f64] {
        &self.revenues
    }

    pub fn n(&self) -> usize {
        self.revenues.len()
    }

    /// Position of the highest-revenue customer in the initial order.
    pub fn best_index(&self) -> usize {
        self.best
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OsaParams {
    pub gamma: f64,
}

impl OsaParams {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma = {gamma} must lie in (0, 1)"
            )));
        }
        Ok(Self { gamma })
    }

    pub fn observation_length(&self, n: usize) -> usize {
        (self.gamma * n as f64 + 1e-9).floor() as usize
    }
}

/// Outcome of one observe-then-select run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OsaRun {
    /// Arrival position of the selected customer, if any.
    pub selected: Option<usize>,
    pub success: bool,
}

/// Observe the first ⌊γn⌋ arrivals, then take the first one at least as good
/// as everything seen so far.
pub fn observe_then_select(arrivals: &[f64], observe: usize) -> Option<usize> {
    let observe = observe.min(arrivals.len());
    let v_max = arrivals[..observe].iter().copied().fold(0.0, f64::max);
    (observe..arrivals.len()).find(|&i| arrivals[i] >= v_max)
}

pub fn run_osa_with(
    inst: &SecretaryInstance,
    params: OsaParams,
    p: f64,
    rng: &mut rng::TrialRng,
) -> OsaRun {
    let assignment = StochasticAssignment::sample(inst.n(), p, rng);
    let arrivals = assignment.apply(inst.revenues());
    let best_position = assignment.sigma(inst.best_index());
    let selected = observe_then_select(&arrivals, params.observation_length(inst.n()));
    OsaRun {
        selected,
        success: selected == Some(best_position),
    }
}

/// One seeded run; true iff the best customer is selected.
pub fn run_osa(inst: &SecretaryInstance, gamma: f64, p: f64, seed: u64) -> Result<bool> {
    let params = OsaParams::new(gamma)?;
    check_probability(p)?;
    Ok(run_osa_with(inst, params, p, &mut rng_from_seed(seed)).success)
}

/// Limit success probability γp·ln(1/(γp + 1 − p)).
pub fn asymptotic_success(gamma: f64, p: f64) -> f64 {
    let gp = gamma * p;
    -gp * (gp + 1.0 - p).ln()
}

fn optimality_residual(gamma: f64, p: f64) -> f64 {
    let d = gamma * p + 1.0 - p;
    d.ln() + gamma * p / d
}

/// Root of ln(γp + 1 − p) + γp/(γp + 1 − p) = 0 on (0, 1).
///
/// The left-hand side is first scanned for sign changes; bisection only
/// runs when there is exactly one.
pub fn optimal_gamma(p: f64, tol: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "p = {p} must lie in (0, 1]"
        )));
    }
    if !(tol > 0.0 && tol <= 1e-6) {
        return Err(Error::InvalidParameter(format!(
            "tol = {tol} must lie in (0, 1e-6]"
        )));
    }
    let eps = 1e-9;
    let samples = 2000;
    let values: Vec<(f64, f64)> = (0..=samples)
        .map(|i| {
            let g = eps + (1.0 - 2.0 * eps) * i as f64 / samples as f64;
            (g, optimality_residual(g, p))
        })
        .collect();
    let changes: Vec<usize> = values
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].1.signum() != w[1].1.signum())
        .map(|(i, _)| i)
        .collect();
    if changes.len() != 1 {
        return Err(Error::Solver(format!(
            "expected one sign change of the optimality condition on (0, 1), found {}",
            changes.len()
        )));
    }
    let (mut lo, mut hi) = (values[changes[0]].0, values[changes[0] + 1].0);
    let lo_sign = optimality_residual(lo, p).signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let r = optimality_residual(mid, p);
        if r == 0.0 {
            return Ok(mid);
        }
        if r.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < tol * 1e-3 && r.abs() <= tol {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Success lower bound for running OSA at γ₁ with probability `q` and at γ₂
/// otherwise.
pub fn randomized_lower_bound(gamma1: f64, gamma2: f64, q: f64, p: f64) -> Result<f64> {
    if !(0.0 < gamma1 && gamma1 < gamma2 && gamma2 < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < gamma1 < gamma2 < 1, got {gamma1}, {gamma2}"
        )));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "q = {q} must lie in (0, 1)"
        )));
    }
    check_probability(p)?;
    let s1 = asymptotic_success(gamma1, p);
    let s2 = asymptotic_success(gamma2, p);
    let extra = ((1.0 - q) * p * (1.0 - p) * (1.0 - gamma2))
        .min(q * (1.0 - p) * (gamma2 - gamma1) / (1.0 - gamma1) * s1);
    Ok(q * s1 + (1.0 - q) * s2 + extra)
}

/// Adversarial order on which OSA_γ does no better than its limit: the best
/// customer first, the k-th best at position ⌊γn⌋ + k − 1 for
/// k = 2..=n − ⌊γn⌋ + 1, the rest filling positions 2..=⌊γn⌋ best-first.
pub fn adversarial_secretary_instance(n: usize, gamma: f64) -> Result<SecretaryInstance> {
    let params = OsaParams::new(gamma)?;
    let g = params.observation_length(n);
    if n < 2 || g == 0 {
        return Err(Error::InvalidParameter(format!(
            "gamma = {gamma} leaves no observation period at n = {n}"
        )));
    }
    let mut ranks = vec![0usize; n];
    ranks[0] = 1;
    // positions are 1-based in the construction; rank k ↦ position g + k − 1
    for k in 2..=(n - g + 1) {
        ranks[g + k - 2] = k;
    }
    for (slot, rank) in ranks.iter_mut().take(g).skip(1).zip(n - g + 2..) {
        *slot = rank;
    }
    SecretaryInstance::from_ranks(&ranks)
}

/// Kinds of generated instances for Monte Carlo runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    /// A fresh uniformly random initial order for every trial.
    UniformAdversary,
    /// The tightness construction at the run's γ.
    Tightness,
}

impl std::str::FromStr for InstanceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform-adversary" => Ok(Self::UniformAdversary),
            "tightness" => Ok(Self::Tightness),
            other => Err(Error::InvalidParameter(format!(
                "unknown instance kind {other:?}"
            ))),
        }
    }
}

impl std::fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::UniformAdversary => "uniform-adversary",
            Self::Tightness => "tightness",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuccessEstimate {
    pub estimate: f64,
    pub half_width_95: f64,
    pub trials: usize,
}

pub fn estimate_success(
    kind: InstanceKind,
    n: usize,
    gamma: f64,
    p: f64,
    trials: usize,
    seed: u64,
) -> Result<SuccessEstimate> {
    let params = OsaParams::new(gamma)?;
    check_probability(p)?;
    if trials < 1000 {
        return Err(Error::InvalidParameter(format!(
            "trials = {trials} must be at least 1000"
        )));
    }
    let fixed = match kind {
        InstanceKind::Tightness => Some(adversarial_secretary_instance(n, gamma)?),
        InstanceKind::UniformAdversary => None,
    };
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    let outcomes: Vec<bool> = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut arrivals_rng = trial_rng(seed, t, rng::ARRIVALS);
            match &fixed {
                Some(inst) => run_osa_with(inst, params, p, &mut arrivals_rng).success,
                None => {
                    let mut ranks: Vec<usize> = (1..=n).collect();
                    ranks.shuffle(&mut trial_rng(seed, t, rng::INSTANCE));
                    let inst = SecretaryInstance::from_ranks(&ranks).expect("distinct ranks");
                    run_osa_with(&inst, params, p, &mut arrivals_rng).success
                }
            }
        })
        .collect();
    let hits = outcomes.iter().filter(|&&s| s).count();
    let estimate = hits as f64 / trials as f64;
    Ok(SuccessEstimate {
        estimate,
        half_width_95: 1.96 * (estimate * (1.0 - estimate) / trials as f64).sqrt(),
        trials,
    })
}
