//! Deep and shallow circuits for the same subset-sum set: metrics and QASM.

use shallow_qfa::circuit::{
    build_deep, build_shallow, emit_qasm, statevector, stats, target_block, CostModel,
};
use shallow_qfa::coeffsets::gen_gap;
use shallow_qfa::PrimeModulus;

fn main() -> shallow_qfa::Result<()> {
    let p = PrimeModulus::new(257)?;
    let fp = gen_gap(p, 3, 5, 100_000)?;
    let x = 10;
    let deep = build_deep(&fp.expanded, x);
    let shallow = build_shallow(&fp, x);
    let model = CostModel::default();
    for c in [&deep, &shallow] {
        let s = stats(c, &model)?;
        println!(
            "{:<24} qubits={} gates={} depth={} cx_lnn={}",
            s.label, s.num_qubits, s.gates, s.depth, s.cx_lnn
        );
    }
    let a = target_block(&statevector(&deep)?);
    let b = target_block(&statevector(&shallow)?);
    let diff = a
        .iter()
        .zip(&b)
        .map(|(u, v)| (u - v).abs())
        .fold(0.0, f64::max);
    println!("max amplitude difference {diff:.2e}\n");
    print!("{}", emit_qasm(&shallow));
    Ok(())
}
