//! Worst ratio of each policy over the pair of instances that no online
//! policy can tell apart early enough, against the analytic ceiling.
//!
//!     cargo run --release --example impossibility -- [n] [trials]

use ppalloc::experiments::reproduce_bound61;

fn main() -> ppalloc::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(10_000, |s| s.parse().expect("n"));
    let trials: usize = args.next().map_or(5_000, |s| s.parse().expect("trials"));
    print!(
        "{}",
        reproduce_bound61(0.5, 0.5, n, None, trials, 3)?.to_csv()
    );
    Ok(())
}
