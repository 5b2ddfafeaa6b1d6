//! Command-line frontend. Every subcommand writes CSV with a leading
//! `# config:` line that records the effective arguments.
//!
//! Exit codes: 0 on success, 1 on runtime failures, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{ArgAction, Args, Parser, Subcommand};

use crate::allocation::{run_policy, write_trajectory_csv, MarketParams, PolicySpec};
use crate::arrival::Realization;
use crate::error::{Error, Result};
use crate::experiments::{
    adaptive_threshold, default_p_grid, estimate_ratio, mp1_report, reproduce_bound61,
    reproduce_figure2, reproduce_table2, reproduce_table3, table3_p_grid, ExperimentConfig,
    InstanceSpec, Report,
};
use crate::format::sig6;
use crate::rng::{self, trial_rng};
use crate::secretary::{asymptotic_success, estimate_success, optimal_gamma, InstanceKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "ppalloc",
    version,
    about = "Online allocation under partially predictable arrivals"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Estimate a policy's revenue ratio, or dump one trajectory.
    #[command(args_override_self = true)]
    Simulate(SimulateArgs),
    /// Solve the factor-revealing program over a parameter sweep.
    #[command(args_override_self = true)]
    Mp1(Mp1Args),
    /// Single-item selection: limit formula and Monte Carlo estimate.
    #[command(args_override_self = true)]
    Secretary(SecretaryArgs),
    /// Regenerate a reference table or figure data set.
    #[command(subcommand)]
    Reproduce(Reproduce),
}

#[derive(Debug, Subcommand)]
pub enum Reproduce {
    /// c* against p for each (a, κ).
    #[command(args_override_self = true)]
    Fig2(Fig2Args),
    /// Policy comparison on the front-loaded type-2 instance.
    #[command(args_override_self = true)]
    Table2(Table2Args),
    /// Optimal observation fraction and its success probability.
    #[command(args_override_self = true)]
    Table3(Table3Args),
    /// Worst ratio over the impossibility pair against its ceiling.
    #[command(args_override_self = true)]
    Bound61(Bound61Args),
}

/// Flags shared by every subcommand.
#[derive(Debug, Args)]
pub struct Common {
    /// Output path; `-` (the default) is standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
    /// Worker threads; 0 uses every core. Output does not depend on it.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    /// key=value file of default flags; explicit flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// alg1, alg2, ball, uniform, mixture, accept-all or reject-all.
    #[arg(long)]
    pub policy: String,
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub b: usize,
    #[arg(long)]
    pub n: usize,
    /// Threshold for alg2; defaults to min(c*, 0.99) at κ = b/n.
    #[arg(long)]
    pub c: Option<f64>,
    /// table2, pair-v, pair-w, all-type2, file:<path> or comma-separated tokens.
    #[arg(long, default_value = "table2")]
    pub instance: String,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Dump the per-step trajectory of a single run instead.
    #[arg(long)]
    pub trace: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Mp1Args {
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', required = true)]
    pub a: Vec<f64>,
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', required = true)]
    pub p: Vec<f64>,
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', required = true)]
    pub kappa: Vec<f64>,
    #[arg(long, default_value_t = 40)]
    pub grid: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Emit gnuplot-ready `p c_star` blocks.
    #[arg(long)]
    pub plot_data: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
#[group(id = "observation", required = true, args = ["gamma", "optimal"])]
pub struct SecretaryArgs {
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Use the success-maximizing observation fraction.
    #[arg(long)]
    pub optimal: bool,
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// uniform-adversary or tightness.
    #[arg(long, default_value = "uniform-adversary")]
    pub instance: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Fig2Args {
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', default_values_t = [0.5, 0.7])]
    pub a: Vec<f64>,
    #[arg(long, action = ArgAction::Set, value_delimiter = ',', default_values_t = [0.5, 0.7, 0.9])]
    pub kappa: Vec<f64>,
    /// Defaults to 0.05, 0.10, …, 0.95.
    #[arg(long, action = ArgAction::Set, value_delimiter = ',')]
    pub p: Vec<f64>,
    #[arg(long, default_value_t = 40)]
    pub grid: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long)]
    pub plot_data: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Table2Args {
    #[arg(long, default_value_t = 0.5)]
    pub a: f64,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 5000)]
    pub b: usize,
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Grid resolution of the program solve that sets alg2's threshold.
    #[arg(long, default_value_t = 40)]
    pub grid: usize,
    #[arg(long)]
    pub plot_data: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Table3Args {
    /// Defaults to 0.1, 0.2, …, 1.0.
    #[arg(long, action = ArgAction::Set, value_delimiter = ',')]
    pub p: Vec<f64>,
    #[arg(long)]
    pub plot_data: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Bound61Args {
    #[arg(long, default_value_t = 0.5)]
    pub a: f64,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    /// Defaults to ⌊n^0.4⌋.
    #[arg(long)]
    pub b: Option<usize>,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub plot_data: bool,
    #[command(flatten)]
    pub common: Common,
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Simulate(x) => &x.common,
            Command::Mp1(x) => &x.common,
            Command::Secretary(x) => &x.common,
            Command::Reproduce(Reproduce::Fig2(x)) => &x.common,
            Command::Reproduce(Reproduce::Table2(x)) => &x.common,
            Command::Reproduce(Reproduce::Table3(x)) => &x.common,
            Command::Reproduce(Reproduce::Bound61(x)) => &x.common,
        }
    }
}

/// Splices the `--config` file's entries in front of the explicit flags so
/// that later (explicit) occurrences override them.
pub fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>> {
    let strings: Vec<String> = args
        .iter()
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let mut path = None;
    for (i, arg) in strings.iter().enumerate() {
        if arg == "--config" {
            path = strings.get(i + 1).cloned();
        } else if let Some(rest) = arg.strip_prefix("--config=") {
            path = Some(rest.to_string());
        }
    }
    let Some(path) = path else {
        return Ok(args);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Error::Parse(format!("config file {path}: {e}")))?;
    let mut injected = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::Parse(format!(
                "config file {path}, line {}: expected key=value",
                lineno + 1
            ))
        })?;
        let (key, value) = (key.trim().replace('_', "-"), value.trim());
        if key == "config" {
            return Err(Error::Parse(
                "config files cannot include other config files".into(),
            ));
        }
        match value {
            "true" => injected.push(format!("--{key}")),
            "false" => {}
            _ => {
                injected.push(format!("--{key}"));
                injected.push(value.to_string());
            }
        }
    }
    // program name, subcommand, and the nested report name for `reproduce`
    let mut at = 2.min(args.len());
    if strings.get(1).map(String::as_str) == Some("reproduce")
        && strings.get(2).is_some_and(|s| !s.starts_with('-'))
    {
        at = 3;
    }
    let mut out = args;
    out.splice(at..at, injected.into_iter().map(OsString::from));
    Ok(out)
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter(_) | Error::Parse(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match expand_config(args) {
        Ok(args) => args,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let common = cli.command.common();
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(common.threads)
        .build()
    {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return EXIT_FAILURE;
        }
    };
    let result = pool
        .install(|| execute(&cli.command))
        .and_then(|text| emit(&common.out, &text));
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(out: &str, text: &str) -> Result<()> {
    let io_err = |e: std::io::Error| Error::Parse(format!("{out}: {e}"));
    if out == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(text.as_bytes()).map_err(io_err)?;
        stdout.flush().map_err(io_err)
    } else {
        std::fs::write(out, text).map_err(io_err)
    }
}

fn render(report: &Report, plot_data: bool) -> String {
    if plot_data {
        report.to_plot_data()
    } else {
        report.to_csv()
    }
}

/// Runs a parsed command and returns the text it would write.
pub fn execute(command: &Command) -> Result<String> {
    match command {
        Command::Simulate(args) => simulate(args),
        Command::Mp1(args) => {
            let report = mp1_report(&args.a, &args.p, &args.kappa, args.grid, args.tol)?;
            Ok(render(&report, args.plot_data))
        }
        Command::Secretary(args) => secretary(args),
        Command::Reproduce(Reproduce::Fig2(args)) => {
            let p = if args.p.is_empty() {
                default_p_grid()
            } else {
                args.p.clone()
            };
            let report = reproduce_figure2(&args.a, &args.kappa, &p, args.grid, args.tol)?;
            Ok(render(&report, args.plot_data))
        }
        Command::Reproduce(Reproduce::Table2(args)) => {
            let report = reproduce_table2(
                args.a,
                args.p,
                args.b,
                args.n,
                args.trials,
                args.seed,
                args.grid,
            )?;
            Ok(render(&report, args.plot_data))
        }
        Command::Reproduce(Reproduce::Table3(args)) => {
            let p = if args.p.is_empty() {
                table3_p_grid()
            } else {
                args.p.clone()
            };
            Ok(render(&reproduce_table3(&p)?, args.plot_data))
        }
        Command::Reproduce(Reproduce::Bound61(args)) => {
            let report = reproduce_bound61(args.a, args.p, args.n, args.b, args.trials, args.seed)?;
            Ok(render(&report, args.plot_data))
        }
    }
}

fn policy_spec(args: &SimulateArgs, params: &MarketParams) -> Result<PolicySpec> {
    match args.policy.as_str() {
        "alg2" => {
            let c = match args.c {
                Some(c) => c,
                None => adaptive_threshold(params.a, params.p, params.b, params.n, 40)?,
            };
            Ok(PolicySpec::Adaptive { c })
        }
        "mixture" => Ok(PolicySpec::Mixture(vec![
            (PolicySpec::BallQueyranne, 1.0 - params.p),
            (PolicySpec::UniformRate, params.p),
        ])),
        other => other.parse(),
    }
}

fn simulate(args: &SimulateArgs) -> Result<String> {
    let params = MarketParams::new(args.b, args.n, args.a, args.p)?;
    let config = ExperimentConfig {
        params,
        policy: policy_spec(args, &params)?,
        instance: args.instance.parse::<InstanceSpec>()?,
        trials: args.trials,
        seed: args.seed,
        output: (args.common.out != "-").then(|| PathBuf::from(&args.common.out)),
    };
    let mut out = format!("# config: {}", config.canonical());
    if args.trace {
        out.push_str(" trace=true\n");
        let seq = config.instance.resolve(params.b, params.n)?;
        let realization =
            Realization::sample_with(&seq, params.p, &mut trial_rng(args.seed, 0, rng::ARRIVALS))?;
        let mut policy = config.policy.build(&params)?;
        policy.start(&mut trial_rng(args.seed, 0, rng::POLICY));
        let outcome = run_policy(&mut policy, &realization, &params)?;
        let mut buf = Vec::new();
        write_trajectory_csv(&mut buf, &outcome.trajectory, params.n)
            .map_err(|e| Error::Parse(e.to_string()))?;
        out.push_str(&String::from_utf8_lossy(&buf));
        return Ok(out);
    }
    out.push('\n');
    let seq = config.instance.resolve(params.b, params.n)?;
    let est = estimate_ratio(&config.policy, &seq, &params, config.trials, config.seed)?;
    out.push_str("policy,mean_ratio,ci_half_width,trials,opt\n");
    out.push_str(&format!(
        "{},{},{},{},{}\n",
        config.policy,
        sig6(est.mean_ratio),
        sig6(est.ci_half_width_95),
        est.trials,
        sig6(est.opt_value)
    ));
    Ok(out)
}

fn secretary(args: &SecretaryArgs) -> Result<String> {
    let kind: InstanceKind = args.instance.parse()?;
    let gamma = match (args.gamma, args.optimal) {
        (_, true) => optimal_gamma(args.p, 1e-9)?,
        (Some(g), false) => g,
        (None, false) => {
            return Err(Error::InvalidParameter(
                "either --gamma or --optimal is required".into(),
            ))
        }
    };
    let est = estimate_success(kind, args.n, gamma, args.p, args.trials, args.seed)?;
    Ok(format!(
        "# config: p={} gamma={} n={} trials={} seed={} instance={kind}\n\
         p,gamma,formula_value,mc_estimate,ci_half_width\n{},{},{},{},{}\n",
        args.p,
        sig6(gamma),
        args.n,
        args.trials,
        args.seed,
        args.p,
        sig6(gamma),
        sig6(asymptotic_success(gamma, args.p)),
        sig6(est.estimate),
        sig6(est.half_width_95)
    ))
}
