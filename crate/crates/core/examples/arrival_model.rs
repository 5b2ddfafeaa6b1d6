//! Samples partially permuted realizations of a small instance and compares
//! the observed prefix counts with their deterministic approximations.
//!
//!     cargo run --example arrival_model -- [p] [seed]

use ppalloc::arrival::{deterministic_approx, InitialSequence, InstanceFile, Realization};

fn main() -> ppalloc::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: f64 = args.next().map_or(0.5, |s| s.parse().expect("p"));
    let seed: u64 = args.next().map_or(1, |s| s.parse().expect("seed"));

    let seq = InitialSequence::from_tokens("1,0,1,a,1,a,1,0")?;
    println!(
        "initial order   {}  (n1 = {}, n2 = {})",
        seq.to_tokens(),
        seq.n1(),
        seq.n2()
    );
    for offset in 0..3 {
        let r = Realization::sample(&seq, p, seed + offset)?;
        let members: Vec<String> = r
            .assignment()
            .members()
            .iter()
            .map(|m| (m + 1).to_string())
            .collect();
        println!(
            "seed {:>3}: group {{{}}} -> arrivals {}",
            seed + offset,
            members.join(","),
            r.arrivals()
                .iter()
                .map(|c| c.token())
                .collect::<Vec<_>>()
                .join(",")
        );
    }

    let r = Realization::sample(&seq, p, seed)?;
    println!("\nstep  o1  o2  ~o1     ~o2");
    for step in 1..=seq.n() {
        let (o1, o2) = r.observed_counts(step)?;
        let approx = deterministic_approx(&seq, p, step);
        println!(
            "{step:>4} {o1:>3} {o2:>3}  {:<6.3} {:<6.3}",
            approx.o1, approx.o2
        );
    }

    println!("\ninstance file:\n{}", InstanceFile::new(seq, 0.5));
    Ok(())
}
