//! Shallow over general error ratios for a range of primes.
//!
//! `cargo run --release --example compare_ratios -- 3 200`

use shallow_qfa::optimize::{compare_experiment, DescentConfig};
use shallow_qfa::zmod::primes_in;
use shallow_qfa::PrimeModulus;

fn main() -> shallow_qfa::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().map_or(3, |a| a.parse().expect("m"));
    let hi: u64 = args.next().map_or(100, |a| a.parse().expect("p max"));
    let primes = primes_in(1 << m, hi)
        .into_iter()
        .map(PrimeModulus::new)
        .collect::<Result<Vec<_>, _>>()?;
    let cfg = DescentConfig {
        seed: 7,
        restarts: 3,
        ..DescentConfig::default()
    };
    let records = compare_experiment(&primes, m, &cfg)?;
    println!("p     general   shallow   ratio");
    for r in &records {
        println!(
            "{:<5} {:.6}  {:.6}  {:.3}",
            r.p, r.general.epsilon, r.shallow.epsilon, r.ratio
        );
    }
    Ok(())
}
