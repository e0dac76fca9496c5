//! Proper GAP search, the energy identity, and the reported error ceiling.

use shallow_qfa::analysis::{additive_energy, analyze, gap_epsilon_bound, representation_counts};
use shallow_qfa::coeffsets::{gap_theorem_generators, gen_gap};
use shallow_qfa::PrimeModulus;

fn main() -> shallow_qfa::Result<()> {
    let p = PrimeModulus::new(1013)?;
    for m in 2..=6 {
        let fp = gen_gap(p, m, 11, 1_000_000)?;
        let energy = additive_energy(&fp.expanded, &fp.expanded)?;
        let max_r = representation_counts(&fp.expanded)?
            .into_values()
            .max()
            .unwrap_or(0);
        let report = analyze(&fp.expanded)?;
        println!(
            "m={m} t0={} T={:?} tries={} E={energy} (6^m={}) max R={max_r} eps={:.4} ceiling={:.4}",
            fp.t0,
            fp.generators,
            fp.tries,
            6u64.pow(m as u32),
            report.epsilon,
            gap_epsilon_bound(p.get(), m as u32)
        );
    }

    let m = gap_theorem_generators(p, 0.5);
    match gen_gap(p, m, 11, 1000) {
        Ok(_) => println!("eps=0.5 gives m={m}: found a proper GAP"),
        Err(e) => println!("eps=0.5 gives m={m}: {e}"),
    }
    Ok(())
}
