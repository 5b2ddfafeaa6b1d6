//! Certified ratio of the adaptive policy against p, one series per
//! inventory share, beside the non-adaptive guarantee.
//!
//!     cargo run --release --example figure2 > fig2.csv

use ppalloc::experiments::{default_p_grid, reproduce_figure2};

fn main() -> ppalloc::Result<()> {
    let report = reproduce_figure2(&[0.5, 0.7], &[0.5, 0.7, 0.9], &default_p_grid(), 40, 1e-6)?;
    print!("{}", report.to_csv());
    Ok(())
}
