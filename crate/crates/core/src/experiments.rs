//! Instance generators, Monte Carlo ratio estimation and the drivers that
//! regenerate the reference tables and figure data.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use crate::allocation::{opt_offline, run_arrivals, MarketParams, PolicySpec};
use crate::arrival::{
    concentration_event_holds, Customer, InitialSequence, InstanceFile, Realization,
};
use crate::error::{Error, Result};
use crate::format::sig6;
use crate::mp1::{mp1_lower_bound, solve_mp1, Mp1Params};
use crate::rng::{self, trial_rng};
use crate::secretary::{asymptotic_success, optimal_gamma};

/// Smallest number of Monte Carlo trials accepted by the estimators.
pub const MIN_TRIALS: usize = 1000;

const Z95: f64 = 1.96;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioEstimate {
    pub mean_ratio: f64,
    pub ci_half_width_95: f64,
    pub trials: usize,
    pub opt_value: f64,
}

/// Everything that determines a simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub params: MarketParams,
    pub policy: PolicySpec,
    pub instance: InstanceSpec,
    pub trials: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Canonical one-line serialization, used as the report header.
    pub fn canonical(&self) -> String {
        format!(
            "policy={} a={} p={} b={} n={} instance={} trials={} seed={}",
            self.policy,
            self.params.a,
            self.params.p,
            self.params.b,
            self.params.n,
            self.instance,
            self.trials,
            self.seed
        )
    }

    pub fn run(&self) -> Result<RatioEstimate> {
        let seq = self.instance.resolve(self.params.b, self.params.n)?;
        estimate_ratio(&self.policy, &seq, &self.params, self.trials, self.seed)
    }
}

/// Named or literal initial sequences.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSpec {
    /// `b` type-2 slots followed by empties.
    Table2,
    /// First instance of the impossibility pair.
    PairV,
    /// Second instance of the impossibility pair.
    PairW,
    AllType2,
    File(PathBuf),
    /// Comma-separated slot tokens.
    Tokens(String),
}

impl InstanceSpec {
    pub fn resolve(&self, b: usize, n: usize) -> Result<InitialSequence> {
        match self {
            InstanceSpec::Table2 => table2_instance(b, n),
            InstanceSpec::PairV => Ok(impossibility_pair(b, n)?.0),
            InstanceSpec::PairW => Ok(impossibility_pair(b, n)?.1),
            InstanceSpec::AllType2 => InitialSequence::from_blocks(n, &[(Customer::Type2, n)]),
            InstanceSpec::File(path) => {
                let seq = InstanceFile::read(path)?.sequence;
                check_length(&seq, n)?;
                Ok(seq)
            }
            InstanceSpec::Tokens(tokens) => {
                let seq = InitialSequence::from_tokens(tokens)?;
                check_length(&seq, n)?;
                Ok(seq)
            }
        }
    }
}

fn check_length(seq: &InitialSequence, n: usize) -> Result<()> {
    if seq.n() != n {
        return Err(Error::InvalidInstance(format!(
            "instance has {} slots but n = {n}",
            seq.n()
        )));
    }
    Ok(())
}

impl FromStr for InstanceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "table2" => InstanceSpec::Table2,
            "pair-v" => InstanceSpec::PairV,
            "pair-w" => InstanceSpec::PairW,
            "all-type2" => InstanceSpec::AllType2,
            _ => match s.strip_prefix("file:") {
                Some(path) => InstanceSpec::File(PathBuf::from(path)),
                None if s.contains(',') => InstanceSpec::Tokens(s.to_string()),
                None => return Err(Error::Parse(format!("unknown instance {s:?}"))),
            },
        })
    }
}

impl std::fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InstanceSpec::Table2 => f.write_str("table2"),
            InstanceSpec::PairV => f.write_str("pair-v"),
            InstanceSpec::PairW => f.write_str("pair-w"),
            InstanceSpec::AllType2 => f.write_str("all-type2"),
            InstanceSpec::File(path) => write!(f, "file:{}", path.display()),
            InstanceSpec::Tokens(tokens) => f.write_str(tokens),
        }
    }
}

fn check_trials(trials: usize) -> Result<()> {
    if trials < MIN_TRIALS {
        return Err(Error::InvalidParameter(format!(
            "trials = {trials} must be at least {MIN_TRIALS}"
        )));
    }
    Ok(())
}

/// Mean and normal-approximation 95% half-width, summed in trial order so
/// the result does not depend on how trials were scheduled.
fn mean_and_half_width(samples: &[f64]) -> (f64, f64) {
    let t = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / t;
    if samples.iter().all(|&x| x == samples[0]) {
        return (samples[0], 0.0);
    }
    let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (t - 1.0);
    (mean, Z95 * (var / t).sqrt())
}

/// Revenue of one seeded trial.
pub fn simulate_trial(
    spec: &PolicySpec,
    seq: &InitialSequence,
    params: &MarketParams,
    seed: u64,
    trial: u64,
) -> Result<f64> {
    let realization =
        Realization::sample_with(seq, params.p, &mut trial_rng(seed, trial, rng::ARRIVALS))?;
    let mut policy = spec.build(params)?;
    policy.start(&mut trial_rng(seed, trial, rng::POLICY));
    Ok(run_arrivals(&mut policy, realization.arrivals(), params, false)?.revenue)
}

/// Monte Carlo estimate of E[ALG]/OPT with fresh realizations (and policy
/// coins) per trial.
pub fn estimate_ratio(
    spec: &PolicySpec,
    seq: &InitialSequence,
    params: &MarketParams,
    trials: usize,
    seed: u64,
) -> Result<RatioEstimate> {
    check_trials(trials)?;
    if seq.n() != params.n {
        return Err(Error::InvalidParameter(format!(
            "instance has {} slots but n = {}",
            seq.n(),
            params.n
        )));
    }
    let opt = opt_offline(seq.n1(), seq.n2(), params.b, params.a);
    if opt <= 0.0 {
        return Err(Error::DegenerateInstance(
            "offline optimum is zero; the ratio is undefined".into(),
        ));
    }
    let ratios = (0..trials as u64)
        .into_par_iter()
        .map(|t| simulate_trial(spec, seq, params, seed, t).map(|rev| rev / opt))
        .collect::<Result<Vec<f64>>>()?;
    let (mean_ratio, ci_half_width_95) = mean_and_half_width(&ratios);
    Ok(RatioEstimate {
        mean_ratio,
        ci_half_width_95,
        trials,
        opt_value: opt,
    })
}

/// `b` type-2 slots followed by `n − b` empties.
pub fn table2_instance(b: usize, n: usize) -> Result<InitialSequence> {
    if b > n {
        return Err(Error::InvalidParameter(format!("b = {b} exceeds n = {n}")));
    }
    InitialSequence::from_blocks(n, &[(Customer::Type2, b)])
}

/// Two instances sharing a length-`b` type-2 prefix: the first continues
/// with empties, the second with `b` type-1 customers.
pub fn impossibility_pair(b: usize, n: usize) -> Result<(InitialSequence, InitialSequence)> {
    if 2 * b > n {
        return Err(Error::InvalidParameter(format!(
            "2b = {} exceeds n = {n}",
            2 * b
        )));
    }
    let v = InitialSequence::from_blocks(n, &[(Customer::Type2, b)])?;
    let w = InitialSequence::from_blocks(n, &[(Customer::Type2, b), (Customer::Type1, b)])?;
    Ok((v, w))
}

/// p + (1−p)/(2−a) + 3pb²/n.
pub fn impossibility_bound(b: usize, n: usize, a: f64, p: f64) -> f64 {
    mp1_lower_bound(a, p) + 3.0 * p * (b * b) as f64 / n as f64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperBoundCheck {
    pub min_ratio: f64,
    /// Half-width of the estimate attaining the minimum.
    pub min_ci: f64,
    pub bound: f64,
    pub first: RatioEstimate,
    pub second: RatioEstimate,
}

/// Plays `spec` on both instances of the impossibility pair and compares the
/// worse ratio against the analytic ceiling.
pub fn upper_bound_check(
    spec: &PolicySpec,
    b: usize,
    n: usize,
    a: f64,
    p: f64,
    trials: usize,
    seed: u64,
) -> Result<UpperBoundCheck> {
    let params = MarketParams::new(b, n, a, p)?;
    let (v, w) = impossibility_pair(b, n)?;
    let first = estimate_ratio(spec, &v, &params, trials, seed)?;
    let second = estimate_ratio(spec, &w, &params, trials, seed)?;
    let worse = if first.mean_ratio <= second.mean_ratio {
        first
    } else {
        second
    };
    Ok(UpperBoundCheck {
        min_ratio: worse.mean_ratio,
        min_ci: worse.ci_half_width_95,
        bound: impossibility_bound(b, n, a, p),
        first,
        second,
    })
}

/// Fraction of realizations falling outside the concentration event.
pub fn empirical_concentration_rate(
    seq: &InitialSequence,
    p: f64,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    check_trials(trials)?;
    let misses = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let r = Realization::sample_with(seq, p, &mut trial_rng(seed, t, rng::ARRIVALS))?;
            Ok(!concentration_event_holds(&r, p))
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(misses.iter().filter(|&&m| m).count() as f64 / trials as f64)
}

/// A CSV table with a leading config comment.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub config: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    plot: PlotLayout,
}

/// Which columns label a series and which hold x and y in the plot variant.
#[derive(Debug, Clone, PartialEq)]
struct PlotLayout {
    series: Vec<usize>,
    x: usize,
    y: usize,
}

impl Report {
    /// `series` columns label the blocks of the plot variant, whose two
    /// columns are `x` and `y`.
    pub fn new(config: String, columns: &[&str], series: &[usize], x: usize, y: usize) -> Self {
        Self {
            config,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            plot: PlotLayout {
                series: series.to_vec(),
                x,
                y,
            },
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# config: {}\n{}\n", self.config, self.columns.join(","));
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Two-column blocks, one per series, separated by blank lines.
    pub fn to_plot_data(&self) -> String {
        let mut out = format!("# config: {}\n", self.config);
        let mut current: Option<Vec<&str>> = None;
        for row in &self.rows {
            let key: Vec<&str> = self.plot.series.iter().map(|&i| row[i].as_str()).collect();
            if current.as_ref() != Some(&key) {
                if current.is_some() {
                    out.push_str("\n\n");
                }
                let label: Vec<String> = self
                    .plot
                    .series
                    .iter()
                    .zip(&key)
                    .map(|(&i, v)| format!("{}={v}", self.columns[i]))
                    .collect();
                let _ = writeln!(out, "# {}", label.join(" "));
                current = Some(key);
            }
            let _ = writeln!(out, "{} {}", row[self.plot.x], row[self.plot.y]);
        }
        out
    }

    /// Column index by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

fn join_list(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

/// p ∈ {0.05, 0.10, …, 0.95}.
pub fn default_p_grid() -> Vec<f64> {
    (1..=19).map(|i| i as f64 / 20.0).collect()
}

/// p ∈ {0.1, 0.2, …, 1.0}.
pub fn table3_p_grid() -> Vec<f64> {
    (1..=10).map(|i| i as f64 / 10.0).collect()
}

/// c* against p for each (a, κ), followed by the non-adaptive reference
/// line for each a (reported with κ = `none`).
pub fn reproduce_figure2(
    a_list: &[f64],
    kappa_list: &[f64],
    p_grid: &[f64],
    grid: usize,
    tolerance: f64,
) -> Result<Report> {
    let config = format!(
        "report=fig2 a={} kappa={} p={} grid={grid} tol={tolerance}",
        join_list(a_list),
        join_list(kappa_list),
        join_list(p_grid)
    );
    let mut report = Report::new(
        config,
        &["series", "a", "kappa", "p", "c_star"],
        &[0, 1, 2],
        3,
        4,
    );
    for &a in a_list {
        for &kappa in kappa_list {
            for &p in p_grid {
                let c = solve_mp1(&Mp1Params::new(a, p, kappa)?, grid, tolerance)?.c_star;
                report.push(vec![
                    "mp1".into(),
                    a.to_string(),
                    kappa.to_string(),
                    p.to_string(),
                    sig6(c),
                ]);
            }
        }
        for &p in p_grid {
            report.push(vec![
                "alg1".into(),
                a.to_string(),
                "none".into(),
                p.to_string(),
                sig6(mp1_lower_bound(a, p)),
            ]);
        }
    }
    Ok(report)
}

/// c* and its minimizer for every (a, p, κ) combination.
pub fn mp1_report(
    a_list: &[f64],
    p_list: &[f64],
    kappa_list: &[f64],
    grid: usize,
    tolerance: f64,
) -> Result<Report> {
    let config = format!(
        "report=mp1 a={} p={} kappa={} grid={grid} tol={tolerance}",
        join_list(a_list),
        join_list(p_list),
        join_list(kappa_list)
    );
    let mut report = Report::new(
        config,
        &[
            "a", "p", "kappa", "c_star", "lambda", "n1", "n2", "eta1", "eta2",
        ],
        &[0, 2],
        1,
        3,
    );
    for &a in a_list {
        for &kappa in kappa_list {
            for &p in p_list {
                let sol = solve_mp1(&Mp1Params::new(a, p, kappa)?, grid, tolerance)?;
                let x = sol.argmin;
                report.push(vec![
                    a.to_string(),
                    p.to_string(),
                    kappa.to_string(),
                    sig6(sol.c_star),
                    sig6(x.lambda),
                    sig6(x.n1),
                    sig6(x.n2),
                    sig6(x.eta1),
                    sig6(x.eta2),
                ]);
            }
        }
    }
    Ok(report)
}

/// The threshold used for the adaptive policy: c* at κ = b/n, capped at
/// 0.99; falls back to the analytic lower bound when the grid is too coarse
/// to resolve κ.
pub fn adaptive_threshold(a: f64, p: f64, b: usize, n: usize, grid: usize) -> Result<f64> {
    let kappa = b as f64 / n as f64;
    let c = match solve_mp1(&Mp1Params::new(a, p, kappa)?, grid, 1e-6) {
        Ok(sol) => sol.c_star,
        Err(Error::Solver(_)) => mp1_lower_bound(a, p),
        Err(e) => return Err(e),
    };
    Ok(c.min(0.99))
}

/// Ratio estimates on the front-loaded type-2 instance for every policy,
/// beside the analytic value each should approach.
pub fn reproduce_table2(
    a: f64,
    p: f64,
    b: usize,
    n: usize,
    trials: usize,
    seed: u64,
    grid: usize,
) -> Result<Report> {
    let params = MarketParams::new(b, n, a, p)?;
    let seq = table2_instance(b, n)?;
    let c = adaptive_threshold(a, p, b, n, grid)?;
    let rate = b as f64 / n as f64;
    let uniform_value = p + rate * (1.0 - p);
    let rows: Vec<(&str, PolicySpec, f64, &str)> = vec![
        ("ball", PolicySpec::BallQueyranne, 1.0 / (2.0 - a), "approx"),
        ("uniform", PolicySpec::UniformRate, uniform_value, "upper"),
        (
            "mixture",
            PolicySpec::Mixture(vec![
                (PolicySpec::BallQueyranne, 1.0 - p),
                (PolicySpec::UniformRate, p),
            ]),
            (1.0 - p) / (2.0 - a) + p * uniform_value,
            "approx",
        ),
        (
            "alg1",
            PolicySpec::NonAdaptive,
            mp1_lower_bound(a, p),
            "approx",
        ),
        ("alg2", PolicySpec::Adaptive { c }, 1.0, "approx"),
    ];
    let config = format!(
        "report=table2 a={a} p={p} b={b} n={n} trials={trials} seed={seed} grid={grid} alg2_c={}",
        sig6(c)
    );
    let mut report = Report::new(
        config,
        &[
            "policy",
            "ratio",
            "ci_half_width",
            "analytic",
            "analytic_kind",
        ],
        &[],
        0,
        1,
    );
    for (name, spec, analytic, kind) in rows {
        let est = estimate_ratio(&spec, &seq, &params, trials, seed)?;
        report.push(vec![
            name.into(),
            sig6(est.mean_ratio),
            sig6(est.ci_half_width_95),
            sig6(analytic),
            kind.into(),
        ]);
    }
    Ok(report)
}

/// Optimal observation fraction and its limiting success probability.
pub fn reproduce_table3(p_grid: &[f64]) -> Result<Report> {
    let mut report = Report::new(
        format!("report=table3 p={}", join_list(p_grid)),
        &["p", "gamma_star", "success"],
        &[],
        0,
        2,
    );
    for &p in p_grid {
        let gamma = optimal_gamma(p, 1e-9)?;
        report.push(vec![
            p.to_string(),
            sig6(gamma),
            sig6(asymptotic_success(gamma, p)),
        ]);
    }
    Ok(report)
}

/// Worst ratio over the impossibility pair for the baseline and both
/// proposed policies, beside the analytic ceiling.
pub fn reproduce_bound61(
    a: f64,
    p: f64,
    n: usize,
    b: Option<usize>,
    trials: usize,
    seed: u64,
) -> Result<Report> {
    let b = b.unwrap_or_else(|| (n as f64).powf(0.4).floor() as usize);
    let c = mp1_lower_bound(a, p).min(0.99);
    let config = format!(
        "report=bound61 a={a} p={p} b={b} n={n} trials={trials} seed={seed} alg2_c={}",
        sig6(c)
    );
    let mut report = Report::new(
        config,
        &[
            "policy",
            "ratio_v",
            "ratio_w",
            "min_ratio",
            "ci_half_width",
            "bound",
        ],
        &[],
        0,
        3,
    );
    let policies = [
        ("ball", PolicySpec::BallQueyranne),
        ("alg1", PolicySpec::NonAdaptive),
        ("alg2", PolicySpec::Adaptive { c }),
    ];
    for (name, spec) in policies {
        let check = upper_bound_check(&spec, b, n, a, p, trials, seed)?;
        report.push(vec![
            name.into(),
            sig6(check.first.mean_ratio),
            sig6(check.second.mean_ratio),
            sig6(check.min_ratio),
            sig6(check.min_ci),
            sig6(check.bound),
        ]);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(b: usize, n: usize) -> MarketParams {
        MarketParams::new(b, n, 0.5, 0.5).unwrap()
    }

    #[test]
    fn table2_instance_examples() {
        assert_eq!(
            table2_instance(4, 8).unwrap().to_tokens(),
            "a,a,a,a,0,0,0,0"
        );
        assert_eq!(table2_instance(0, 5).unwrap().n2(), 0);
        assert_eq!(table2_instance(5, 5).unwrap().n2(), 5);
        assert!(table2_instance(6, 5).is_err());
    }

    #[test]
    fn impossibility_pair_examples() {
        let (v, w) = impossibility_pair(2, 6).unwrap();
        assert_eq!(v.to_tokens(), "a,a,0,0,0,0");
        assert_eq!(w.to_tokens(), "a,a,1,1,0,0");
        assert_eq!(opt_offline(v.n1(), v.n2(), 2, 0.3), 0.6);
        assert_eq!(opt_offline(w.n1(), w.n2(), 2, 0.3), 2.0);
        assert!(impossibility_pair(4, 7).is_err());
    }

    #[test]
    fn trivial_ratios() {
        let seq = InitialSequence::from_tokens("a,1,0,a,0,0,0,0").unwrap();
        let p = params(4, 8);
        let all = estimate_ratio(&PolicySpec::AcceptAll, &seq, &p, 1000, 3).unwrap();
        assert_eq!(all.mean_ratio, 1.0);
        assert_eq!(all.ci_half_width_95, 0.0);
        let none = estimate_ratio(&PolicySpec::RejectAll, &seq, &p, 1000, 3).unwrap();
        assert_eq!(none.mean_ratio, 0.0);
    }

    #[test]
    fn estimator_argument_checks() {
        let seq = InitialSequence::empty(8).unwrap();
        let p = params(4, 8);
        assert!(matches!(
            estimate_ratio(&PolicySpec::AcceptAll, &seq, &p, 1000, 0),
            Err(Error::DegenerateInstance(_))
        ));
        let seq = table2_instance(4, 8).unwrap();
        assert!(estimate_ratio(&PolicySpec::AcceptAll, &seq, &p, 999, 0).is_err());
        assert!(estimate_ratio(&PolicySpec::AcceptAll, &seq, &params(4, 9), 1000, 0).is_err());
    }

    #[test]
    fn estimates_are_reproducible() {
        let seq = table2_instance(20, 100).unwrap();
        let p = params(20, 100);
        let spec = PolicySpec::Mixture(vec![
            (PolicySpec::BallQueyranne, 0.5),
            (PolicySpec::UniformRate, 0.5),
        ]);
        let x = estimate_ratio(&spec, &seq, &p, 2000, 11).unwrap();
        let y = estimate_ratio(&spec, &seq, &p, 2000, 11).unwrap();
        assert_eq!(x, y);
        let z = estimate_ratio(&spec, &seq, &p, 2000, 12).unwrap();
        assert_ne!(x.mean_ratio, z.mean_ratio);
    }

    #[test]
    fn instance_spec_round_trip() {
        for text in [
            "table2",
            "pair-v",
            "pair-w",
            "all-type2",
            "file:/tmp/x.txt",
            "a,0,1",
        ] {
            let spec: InstanceSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!("bogus".parse::<InstanceSpec>().is_err());
        let seq = InstanceSpec::Tokens("a,0,1".into()).resolve(1, 3).unwrap();
        assert_eq!(seq.n1(), 1);
        assert!(InstanceSpec::Tokens("a,0,1".into()).resolve(1, 4).is_err());
        assert_eq!(InstanceSpec::PairW.resolve(2, 6).unwrap().n1(), 2);
    }

    #[test]
    fn report_formats() {
        let mut r = Report::new("k=v".into(), &["s", "x", "y"], &[0], 1, 2);
        r.push(vec!["u".into(), "1".into(), "2".into()]);
        r.push(vec!["u".into(), "2".into(), "3".into()]);
        r.push(vec!["w".into(), "1".into(), "5".into()]);
        assert_eq!(r.to_csv(), "# config: k=v\ns,x,y\nu,1,2\nu,2,3\nw,1,5\n");
        assert_eq!(
            r.to_plot_data(),
            "# config: k=v\n# s=u\n1 2\n2 3\n\n\n# s=w\n1 5\n"
        );
        assert_eq!(r.column("y"), Some(2));
    }

    #[test]
    fn table3_report_rows() {
        let r = reproduce_table3(&[0.2, 0.9, 1.0]).unwrap();
        let g: f64 = r.rows[0][1].parse().unwrap();
        let s: f64 = r.rows[0][2].parse().unwrap();
        assert!((g - 0.4863).abs() < 1e-3 && (s - 0.0105).abs() < 1e-3);
        let g: f64 = r.rows[1][1].parse().unwrap();
        let s: f64 = r.rows[1][2].parse().unwrap();
        assert!((g - 0.3975).abs() < 1e-3 && (s - 0.2796).abs() < 1e-3);
        let e = (-1.0f64).exp();
        let g: f64 = r.rows[2][1].parse().unwrap();
        assert!((g - e).abs() < 1e-5);
    }

    #[test]
    fn figure2_reference_line() {
        let r = reproduce_figure2(&[0.7], &[], &[0.25], 20, 1e-5).unwrap();
        assert_eq!(
            r.rows,
            vec![vec!["alg1", "0.7", "none", "0.25", "0.826923"]]
        );
    }

    #[test]
    fn concentration_rate_vacuous_below_thresholds() {
        let seq = InitialSequence::from_tokens("1,a,0,0,0,0,0,0,0,0").unwrap();
        assert_eq!(
            empirical_concentration_rate(&seq, 0.5, 1000, 1).unwrap(),
            0.0
        );
    }
}
