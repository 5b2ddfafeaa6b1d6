//! How often sampled realizations leave the concentration event.
//!
//!     cargo run --release --example concentration -- [n] [trials]

use ppalloc::arrival::{ConcentrationConstants, Customer, InitialSequence};
use ppalloc::experiments::empirical_concentration_rate;

fn main() -> ppalloc::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(10_000, |s| s.parse().expect("n"));
    let trials: usize = args.next().map_or(1_000, |s| s.parse().expect("trials"));

    let third = n / 3;
    let seq =
        InitialSequence::from_blocks(n, &[(Customer::Type1, third), (Customer::Type2, third)])?;
    let consts = ConcentrationConstants::standard();
    println!("tolerated violation rate {:.4}", consts.eps_bar);
    for p in [0.25, 0.5, 0.75, 1.0] {
        let rate = empirical_concentration_rate(&seq, p, trials, 5)?;
        println!(
            "p = {p:<4}  count threshold {:>7.1}  violation rate {rate:.4}",
            consts.count_threshold(p, n)
        );
    }
    Ok(())
}
