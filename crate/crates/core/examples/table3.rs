//! Optimal observation fraction of the observe-then-select rule and its
//! limiting success probability.
//!
//!     cargo run --example table3

use ppalloc::experiments::{reproduce_table3, table3_p_grid};
use ppalloc::secretary::{asymptotic_success, optimal_gamma, randomized_lower_bound};

fn main() -> ppalloc::Result<()> {
    print!("{}", reproduce_table3(&table3_p_grid())?.to_csv());
    let deterministic = asymptotic_success(optimal_gamma(0.5, 1e-9)?, 0.5);
    let randomized = randomized_lower_bound(0.427, 0.69, 0.824, 0.5)?;
    println!("\np = 0.5: best single fraction {deterministic:.4}, randomized mix {randomized:.4}");
    Ok(())
}
