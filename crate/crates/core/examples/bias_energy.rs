//! Fourier bias against additive energy for random sets of distinct residues.

use shallow_qfa::analysis::{additive_energy, check_bias_energy_chain, epsilon_of, fourier_bias};
use shallow_qfa::rng::SplitMix64;
use shallow_qfa::{CoefficientSet, PrimeModulus};

fn main() -> shallow_qfa::Result<()> {
    let p = PrimeModulus::new(101)?;
    let mut rng = SplitMix64::new(3);
    for size in [2, 4, 8, 16, 32] {
        let mut pool: Vec<u64> = (0..p.get()).collect();
        for i in 0..size {
            let j = i + rng.below(p.get() - i as u64) as usize;
            pool.swap(i, j);
        }
        let set = CoefficientSet::explicit(p, pool[..size].to_vec())?;
        let bias = fourier_bias(&set);
        let energy = additive_energy(&set, &set)?;
        let eps = epsilon_of(&set).epsilon;
        println!("|A|={size:<3} bias={bias:.5} E={energy:<6} eps={eps:.5}");
        for check in check_bias_energy_chain(&set)? {
            println!(
                "    {:<32} {:.3e} <= {:.3e}  {}",
                check.name, check.lhs, check.rhs, check.holds
            );
        }
    }
    Ok(())
}
