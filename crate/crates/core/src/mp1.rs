//! The factor-revealing program certifying the adaptive policy.
//!
//! Decision variables are `(λ, n₁, n₂, η₁, η₂)`; the program minimizes the
//! smallest `c` for which some instance in the feasible region still beats
//! the adaptive policy. Everything is continuous and degree-1 homogeneous in
//! `(b, n)`, so the canonical normalization is `n = 1, b = κ`.
//!
//! The solver is a dense grid over the 5-dimensional box followed by a
//! compass search (all 3⁵ − 1 sign directions, halving step) started from
//! the best grid cells. It is approximate: the reported minimum is the value
//! of an actual feasible point, so it can only overestimate the true one.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Slack allowed on the `ũ₁,₂ ≥ b` constraint.
pub const U12_TOLERANCE: f64 = 1e-9;
/// Slack allowed on the linear constraints.
const LINEAR_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mp1Params {
    pub a: f64,
    pub p: f64,
    /// Inventory-to-horizon ratio b/n.
    pub kappa: f64,
}

impl Mp1Params {
    pub fn new(a: f64, p: f64, kappa: f64) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "a = {a} must lie in (0, 1)"
            )));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "p = {p} must lie in (0, 1)"
            )));
        }
        if !(kappa > 0.0 && kappa <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "kappa = {kappa} must lie in (0, 1]"
            )));
        }
        Ok(Self { a, p, kappa })
    }

    /// The normalized problem, n = 1 and b = κ.
    pub fn problem(&self) -> Mp1Problem {
        self.scaled(1.0)
    }

    /// The same program with explicit `(b, n) = (tκ, t)`.
    pub fn scaled(&self, t: f64) -> Mp1Problem {
        Mp1Problem {
            a: self.a,
            p: self.p,
            b: self.kappa * t,
            n: t,
        }
    }
}

/// The program at an explicit scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mp1Problem {
    pub a: f64,
    pub p: f64,
    pub b: f64,
    pub n: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mp1Point {
    pub lambda: f64,
    pub n1: f64,
    pub n2: f64,
    pub eta1: f64,
    pub eta2: f64,
}

impl Mp1Point {
    pub fn new(lambda: f64, n1: f64, n2: f64, eta1: f64, eta2: f64) -> Self {
        Self {
            lambda,
            n1,
            n2,
            eta1,
            eta2,
        }
    }

    fn to_array(self) -> [f64; 5] {
        [self.lambda, self.n1, self.n2, self.eta1, self.eta2]
    }

    fn from_array(x: [f64; 5]) -> Self {
        Self::new(x[0], x[1], x[2], x[3], x[4])
    }

    /// Multiplies the count coordinates (not λ) by `t`.
    pub fn scale_counts(self, t: f64) -> Self {
        Self::new(
            self.lambda,
            self.n1 * t,
            self.n2 * t,
            self.eta1 * t,
            self.eta2 * t,
        )
    }
}

/// Deterministic approximations and the derived upper bounds at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mp1Tilde {
    pub o1: f64,
    pub o2: f64,
    pub u1: f64,
    pub u12: f64,
}

pub fn mp1_tilde(point: &Mp1Point, problem: &Mp1Problem) -> Result<Mp1Tilde> {
    if point.lambda.is_nan() || point.lambda <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "lambda = {} must be positive",
            point.lambda
        )));
    }
    Ok(tilde(point, problem))
}

fn tilde(point: &Mp1Point, problem: &Mp1Problem) -> Mp1Tilde {
    let Mp1Problem { p, n, .. } = *problem;
    let l = point.lambda;
    let o1 = (1.0 - p) * point.eta1 + p * point.n1 * l;
    let o2 = (1.0 - p) * point.eta2 + p * point.n2 * l;
    let bound = |o: f64| (o / (l * p)).min((o + (1.0 - l) * (1.0 - p) * n) / (1.0 - p + l * p));
    Mp1Tilde {
        o1,
        o2,
        u1: bound(o1),
        u12: bound(o1 + o2),
    }
}

fn linear_feasible(x: &Mp1Point, problem: &Mp1Problem) -> bool {
    let tol = LINEAR_TOLERANCE * problem.n.max(1.0);
    let n = problem.n;
    x.lambda > 0.0
        && x.lambda <= 1.0 + LINEAR_TOLERANCE
        && x.n1 >= -tol
        && x.n2 >= -tol
        && x.eta1 >= -tol
        && x.eta2 >= -tol
        && x.eta1 + x.eta2 <= x.lambda * n + tol
        && x.eta1 <= x.n1 + tol
        && x.eta2 <= x.n2 + tol
        && x.n1 <= problem.b + tol
        && x.n1 + x.n2 <= n + tol
        && x.n1 + x.n2 <= x.eta1 + x.eta2 + (1.0 - x.lambda) * n + tol
}

/// All constraints except the objective one.
pub fn mp1_feasible(point: &Mp1Point, problem: &Mp1Problem) -> bool {
    linear_feasible(point, problem)
        && tilde(point, problem).u12 >= problem.b - U12_TOLERANCE * problem.n.max(1.0)
}

/// Smallest `c` compatible with the point (right-hand side of the objective
/// constraint).
pub fn mp1_objective(point: &Mp1Point, problem: &Mp1Problem) -> f64 {
    let Mp1Problem { a, b, .. } = *problem;
    let t = tilde(point, problem);
    let numerator = a * (point.n2 - t.o2 + b / (1.0 - a)) + point.n1;
    let denominator = a * (point.n1 + point.n2).min(b)
        + (1.0 - a) * point.n1
        + a * a * b / (1.0 - a)
        + a * t.u1.min(b);
    numerator / denominator
}

/// c* ≥ p + (1−p)/(2−a).
pub fn mp1_lower_bound(a: f64, p: f64) -> f64 {
    p + (1.0 - p) / (2.0 - a)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mp1Solution {
    pub c_star: f64,
    /// Normalized minimizer (counts divided by n).
    pub argmin: Mp1Point,
    /// Best value found on the grid, before refinement.
    pub grid_best: f64,
    pub grid_resolution: usize,
    pub refinement_tolerance: f64,
}

const STARTS_GLOBAL: usize = 24;

pub fn solve_mp1(params: &Mp1Params, grid: usize, refine_tolerance: f64) -> Result<Mp1Solution> {
    solve_mp1_scaled(params, 1.0, grid, refine_tolerance)
}

/// Solves the program at scale `(b, n) = (tκ, t)`; the reported argmin is
/// normalized back to n = 1.
pub fn solve_mp1_scaled(
    params: &Mp1Params,
    t: f64,
    grid: usize,
    refine_tolerance: f64,
) -> Result<Mp1Solution> {
    if grid < 20 {
        return Err(Error::InvalidParameter(format!(
            "grid = {grid} must be at least 20"
        )));
    }
    if !(refine_tolerance > 0.0 && refine_tolerance <= 1e-4) {
        return Err(Error::InvalidParameter(format!(
            "refine tolerance {refine_tolerance} must lie in (0, 1e-4]"
        )));
    }
    if t.is_nan() || t <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "scale t = {t} must be positive"
        )));
    }
    let problem = params.scaled(t);
    let candidates = grid_candidates(&problem, grid);
    let Some(&(grid_best, _)) = candidates.first() else {
        return Err(Error::Solver(format!(
            "no feasible grid point for a={}, p={}, kappa={} at grid {grid}",
            params.a, params.p, params.kappa
        )));
    };

    let initial_step = problem.n / grid as f64;
    let min_step = refine_tolerance * 1e-2 * problem.n;
    let refined: Vec<(f64, Mp1Point)> = candidates
        .par_iter()
        .map(|&(v, x)| compass_search(&problem, x, v, initial_step, min_step))
        .collect();
    let (c_star, best) = refined
        .into_iter()
        .chain(candidates.iter().copied())
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("non-empty");
    Ok(Mp1Solution {
        c_star,
        argmin: best.scale_counts(1.0 / problem.n),
        grid_best,
        grid_resolution: grid,
        refinement_tolerance: refine_tolerance,
    })
}

/// Best grid point of every λ slice plus the global top cells, sorted by
/// value.
fn grid_candidates(problem: &Mp1Problem, grid: usize) -> Vec<(f64, Mp1Point)> {
    let g = grid as f64;
    let n = problem.n;
    let coord = |i: usize| i as f64 / g * n;
    let slices: Vec<Vec<(f64, Mp1Point)>> = (1..=grid)
        .into_par_iter()
        .map(|il| {
            let lambda = il as f64 / g;
            let mut slice: Vec<(f64, Mp1Point)> = Vec::new();
            let mut worst_kept = f64::INFINITY;
            for i1 in 0..=grid {
                let n1 = coord(i1);
                if n1 > problem.b + 1e-12 * n {
                    break;
                }
                for i2 in 0..=(grid - i1) {
                    let n2 = coord(i2);
                    // η₁ ≤ min(n₁, λn), η₂ ≤ n₂, η₁ + η₂ ≤ λn
                    for e1 in 0..=i1.min(il) {
                        let max_e2 = i2.min(il - e1);
                        // n₁ + n₂ ≤ η₁ + η₂ + (1−λ)n needs e2 ≥ i1 + i2 − e1 − (grid − il)
                        let min_e2 = (i1 + i2 + il).saturating_sub(e1 + grid);
                        for e2 in min_e2..=max_e2 {
                            let x = Mp1Point::new(lambda, n1, n2, coord(e1), coord(e2));
                            if !mp1_feasible(&x, problem) {
                                continue;
                            }
                            let v = mp1_objective(&x, problem);
                            if slice.len() < STARTS_GLOBAL || v < worst_kept {
                                slice.push((v, x));
                                if slice.len() > STARTS_GLOBAL {
                                    slice.sort_by(|a, b| a.0.total_cmp(&b.0));
                                    slice.truncate(STARTS_GLOBAL);
                                }
                                worst_kept =
                                    slice.iter().map(|s| s.0).fold(f64::NEG_INFINITY, f64::max);
                            }
                        }
                    }
                }
            }
            slice.sort_by(|a, b| a.0.total_cmp(&b.0));
            slice
        })
        .collect();

    let mut starts: Vec<(f64, Mp1Point)> =
        slices.iter().filter_map(|s| s.first().copied()).collect();
    let mut pooled: Vec<(f64, Mp1Point)> = slices.into_iter().flatten().collect();
    pooled.sort_by(|a, b| a.0.total_cmp(&b.0));
    pooled.truncate(STARTS_GLOBAL);
    starts.extend(pooled);
    starts.sort_by(|a, b| a.0.total_cmp(&b.0));
    starts.dedup_by(|a, b| a.1 == b.1);
    starts
}

fn directions() -> Vec<[f64; 5]> {
    let mut dirs = Vec::with_capacity(242);
    for code in 0..243usize {
        let mut d = [0.0; 5];
        let mut c = code;
        for slot in d.iter_mut() {
            *slot = (c % 3) as f64 - 1.0;
            c /= 3;
        }
        if d.iter().any(|&v| v != 0.0) {
            dirs.push(d);
        }
    }
    dirs
}

/// Clamps a trial point into the box `λ ∈ (0, 1]`, counts in `[0, n]`.
fn project(x: [f64; 5], n: f64, lambda_floor: f64) -> [f64; 5] {
    let mut y = x;
    y[0] = y[0].clamp(lambda_floor, 1.0);
    for v in &mut y[1..] {
        *v = v.clamp(0.0, n);
    }
    y
}

fn compass_search(
    problem: &Mp1Problem,
    start: Mp1Point,
    start_value: f64,
    initial_step: f64,
    min_step: f64,
) -> (f64, Mp1Point) {
    let dirs = directions();
    let mut x = start.to_array();
    let mut fx = start_value;
    let mut step = initial_step;
    let lambda_floor = 1e-9;
    while step >= min_step {
        let mut best: Option<([f64; 5], f64)> = None;
        for d in &dirs {
            let mut trial = x;
            for k in 0..5 {
                // λ lives on [0, 1], counts on [0, n]
                let unit = if k == 0 { step / problem.n } else { step };
                trial[k] += d[k] * unit;
            }
            let trial = project(trial, problem.n, lambda_floor);
            let point = Mp1Point::from_array(trial);
            if !mp1_feasible(&point, problem) {
                continue;
            }
            let v = mp1_objective(&point, problem);
            if v < best.map_or(fx, |b| b.1) - 1e-15 {
                best = Some((trial, v));
            }
        }
        match best {
            Some((y, v)) => {
                x = y;
                fx = v;
            }
            None => step *= 0.5,
        }
    }
    (fx, Mp1Point::from_array(x))
}
