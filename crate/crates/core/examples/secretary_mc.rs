//! Monte Carlo success rate of the observe-then-select rule next to its
//! limiting value, on random orders and on the adversarial construction.
//!
//!     cargo run --release --example secretary_mc -- [p] [n] [trials]

use ppalloc::secretary::{asymptotic_success, estimate_success, optimal_gamma, InstanceKind};

fn main() -> ppalloc::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: f64 = args.next().map_or(0.5, |s| s.parse().expect("p"));
    let n: usize = args.next().map_or(2_000, |s| s.parse().expect("n"));
    let trials: usize = args.next().map_or(20_000, |s| s.parse().expect("trials"));

    let gamma = optimal_gamma(p, 1e-9)?;
    println!(
        "p = {p}, gamma* = {gamma:.4}, limit {:.4}",
        asymptotic_success(gamma, p)
    );
    for kind in [InstanceKind::UniformAdversary, InstanceKind::Tightness] {
        let est = estimate_success(kind, n, gamma, p, trials, 9)?;
        println!("{kind:<18} {:.4} ± {:.4}", est.estimate, est.half_width_95);
    }
    Ok(())
}
