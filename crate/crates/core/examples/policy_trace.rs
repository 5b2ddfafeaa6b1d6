//! Plays each policy on one realization and prints its step-by-step
//! trajectory.
//!
//!     cargo run --example policy_trace

use ppalloc::allocation::{run_policy, write_trajectory_csv, MarketParams, PolicySpec};
use ppalloc::arrival::{InitialSequence, Realization};
use ppalloc::rng::rng_from_seed;

fn main() -> ppalloc::Result<()> {
    let seq = InitialSequence::from_tokens("a,a,a,1,a,0,a,1,1,a,0,a,1,a,a,0")?;
    let params = MarketParams::new(6, seq.n(), 0.5, 0.5)?;
    let realization = Realization::sample(&seq, params.p, 3)?;
    println!(
        "arrivals: {}",
        realization
            .arrivals()
            .iter()
            .map(|c| c.token())
            .collect::<Vec<_>>()
            .join(",")
    );

    for spec in [
        PolicySpec::BallQueyranne,
        PolicySpec::UniformRate,
        PolicySpec::NonAdaptive,
        PolicySpec::Adaptive { c: 0.85 },
    ] {
        let mut policy = spec.build(&params)?;
        policy.start(&mut rng_from_seed(0));
        let outcome = run_policy(&mut policy, &realization, &params)?;
        println!("\n{spec}: revenue {}", outcome.revenue);
        write_trajectory_csv(&mut std::io::stdout().lock(), &outcome.trajectory, params.n)
            .expect("stdout");
    }
    Ok(())
}
