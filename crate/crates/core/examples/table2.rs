//! Policy comparison on the front-loaded type-2 instance.
//!
//!     cargo run --release --example table2 -- [b] [n] [trials]

use ppalloc::experiments::reproduce_table2;

fn main() -> ppalloc::Result<()> {
    let mut args = std::env::args().skip(1);
    let b: usize = args.next().map_or(5_000, |s| s.parse().expect("b"));
    let n: usize = args.next().map_or(10_000, |s| s.parse().expect("n"));
    let trials: usize = args.next().map_or(10_000, |s| s.parse().expect("trials"));
    print!(
        "{}",
        reproduce_table2(0.5, 0.5, b, n, trials, 1, 40)?.to_csv()
    );
    Ok(())
}
