//! Coordinate descent in both modes, with the coordinate-wise audit.

use shallow_qfa::optimize::{audit_single_coordinate, coordinate_descent, DescentConfig, Mode};
use shallow_qfa::PrimeModulus;

fn main() -> shallow_qfa::Result<()> {
    let p = PrimeModulus::new(127)?;
    for (mode, size) in [(Mode::General, 8), (Mode::Shallow, 3)] {
        let cfg = DescentConfig {
            seed: 7,
            mode,
            restarts: 3,
            ..DescentConfig::default()
        };
        let r = coordinate_descent(p, size, &cfg)?;
        println!(
            "{} start={:?} best={:?}",
            mode.as_str(),
            r.start,
            r.best_point
        );
        for (sweep, eps) in &r.history {
            println!("  sweep {sweep}: eps={eps:.6}");
        }
        let audit = audit_single_coordinate(&r, 1e-12)?;
        println!(
            "  evaluations={} converged={} audit={audit:?}",
            r.evaluations, r.converged
        );
    }
    Ok(())
}
