//! AIKPS sets under base-2 and natural logarithms.

use shallow_qfa::analysis::epsilon_of;
use shallow_qfa::circuit::{aikps_block_width, build_aikps, depth};
use shallow_qfa::coeffsets::{gen_aikps_with_base, LogBase};
use shallow_qfa::PrimeModulus;

fn main() -> shallow_qfa::Result<()> {
    for p in [257, 1013, 65537] {
        let p = PrimeModulus::new(p)?;
        for base in [LogBase::Two, LogBase::Natural] {
            for eps in [0.25, 0.5] {
                let set = match gen_aikps_with_base(p, eps, base) {
                    Ok(s) => s,
                    Err(e) => {
                        println!("p={p} base={base:?} eps={eps}: {e}");
                        continue;
                    }
                };
                let circuit = build_aikps(&set, 1);
                println!(
                    "p={p} base={base:?} eps={eps} R={:?} |S|={} d={} w={} depth={} error={:.4}",
                    set.primes,
                    set.s_max,
                    set.coefficients.len(),
                    aikps_block_width(&set),
                    depth(&circuit),
                    epsilon_of(&set.coefficients).epsilon
                );
            }
        }
    }
    Ok(())
}
