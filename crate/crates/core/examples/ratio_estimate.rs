//! Monte Carlo estimate of E[ALG]/OPT for every policy on one instance.
//!
//!     cargo run --release --example ratio_estimate -- [b] [n] [trials]

use ppalloc::allocation::{MarketParams, PolicySpec};
use ppalloc::experiments::{adaptive_threshold, estimate_ratio, table2_instance};

fn main() -> ppalloc::Result<()> {
    let mut args = std::env::args().skip(1);
    let b: usize = args.next().map_or(400, |s| s.parse().expect("b"));
    let n: usize = args.next().map_or(10_000, |s| s.parse().expect("n"));
    let trials: usize = args.next().map_or(2_000, |s| s.parse().expect("trials"));
    let (a, p) = (0.5, 0.5);

    let params = MarketParams::new(b, n, a, p)?;
    let seq = table2_instance(b, n)?;
    let c = adaptive_threshold(a, p, b, n, 40)?;
    let specs = [
        PolicySpec::BallQueyranne,
        PolicySpec::UniformRate,
        PolicySpec::Mixture(vec![
            (PolicySpec::BallQueyranne, 1.0 - p),
            (PolicySpec::UniformRate, p),
        ]),
        PolicySpec::NonAdaptive,
        PolicySpec::Adaptive { c },
    ];
    println!("b = {b}, n = {n}, {trials} trials");
    for spec in specs {
        let est = estimate_ratio(&spec, &seq, &params, trials, 42)?;
        println!(
            "{spec:<32} {:.4} ± {:.4}",
            est.mean_ratio, est.ci_half_width_95
        );
    }
    Ok(())
}
