//! Exact error of cyclic and random coefficient sets of equal size.
//!
//! `cargo run --example cyclic_vs_random -- 1013 16`

use shallow_qfa::analysis::epsilon_of;
use shallow_qfa::coeffsets::{gen_cyclic, gen_random};
use shallow_qfa::PrimeModulus;

fn main() -> shallow_qfa::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: u64 = args.next().map_or(1013, |a| a.parse().expect("p"));
    let d: usize = args.next().map_or(16, |a| a.parse().expect("d"));
    let p = PrimeModulus::new(p)?;

    let cyclic = gen_cyclic(p, d)?;
    let eps = epsilon_of(&cyclic);
    println!(
        "cyclic  g={:?} eps={:.6} at x={}",
        cyclic.params().g,
        eps.epsilon,
        eps.argmax_x
    );

    let mut best = f64::INFINITY;
    for seed in 0..20 {
        let e = epsilon_of(&gen_random(p, d, seed)?).epsilon;
        best = best.min(e);
        println!("random  seed={seed:<2} eps={e:.6}");
    }
    println!("best random eps={best:.6}");
    Ok(())
}
