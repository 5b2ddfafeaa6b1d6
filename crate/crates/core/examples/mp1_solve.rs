//! Solves the factor-revealing program for one parameter triple and shows
//! the worst-case scenario it finds.
//!
//!     cargo run --release --example mp1_solve -- [a] [p] [kappa]

use ppalloc::mp1::{mp1_lower_bound, mp1_tilde, solve_mp1, Mp1Params};

fn main() -> ppalloc::Result<()> {
    let mut args = std::env::args().skip(1);
    let a: f64 = args.next().map_or(0.5, |s| s.parse().expect("a"));
    let p: f64 = args.next().map_or(0.5, |s| s.parse().expect("p"));
    let kappa: f64 = args.next().map_or(0.5, |s| s.parse().expect("kappa"));

    let params = Mp1Params::new(a, p, kappa)?;
    let start = std::time::Instant::now();
    let sol = solve_mp1(&params, 40, 1e-6)?;
    let x = sol.argmin;
    let tilde = mp1_tilde(&x, &params.problem())?;
    println!(
        "c* = {:.5}  (grid best {:.5}, {:.2?})",
        sol.c_star,
        sol.grid_best,
        start.elapsed()
    );
    println!(
        "analytic floor p + (1-p)/(2-a) = {:.5}",
        mp1_lower_bound(a, p)
    );
    println!(
        "argmin: lambda {:.4}  n1 {:.4}  n2 {:.4}  eta1 {:.4}  eta2 {:.4}",
        x.lambda, x.n1, x.n2, x.eta1, x.eta2
    );
    println!(
        "        ~u1 {:.4}  ~u12 {:.4}  (b = {kappa})",
        tilde.u1, tilde.u12
    );
    Ok(())
}
