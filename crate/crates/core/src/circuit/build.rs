//! Deep, shallow and AIKPS circuit layouts.

use super::{Circuit, Control, Gate, Polarity};
use crate::coeffsets::{pad_to_power_of_two, AikpsSet, CoefficientSet, GapFingerprint};
use crate::zmod::mul_mod;

/// `R_y` angle `4 pi k x / p`, taken from the reduced residue `k x mod p`.
/// `R_y` has period `4 pi`, so the reduction does not change the gate.
pub fn rotation_angle(k: u64, x: u64, p: u64) -> f64 {
    let r = mul_mod(k % p, x % p, p);
    2.0 * std::f64::consts::TAU * r as f64 / p as f64
}

/// `m` Hadamards, then one `R_y(4 pi k_j x / p)` per coefficient controlled
/// on the `m`-bit pattern `j` (wire `i` positive iff bit `i` of `j` is set).
///
/// Sets whose size is not a power of two (and singletons) are padded by
/// repeating the last coefficient; the label records the padding.
pub fn build_deep(set: &CoefficientSet, x: u64) -> Circuit {
    let (padded, added) = pad_to_power_of_two(set);
    let d = padded.len();
    let m = d.trailing_zeros() as usize;
    let p = set.modulus();
    let mut label = format!("deep m={m} p={p} x={x}");
    if added > 0 {
        label.push_str(&format!(" padded={added}"));
    }
    let mut c = Circuit::new(m + 1, label);
    for wire in 0..m {
        c.push(Gate::H { target: wire }).expect("in range");
    }
    for (j, &k) in padded.coefficients().iter().enumerate() {
        let controls = (0..m)
            .map(|wire| {
                let polarity = if j >> wire & 1 == 1 {
                    Polarity::Positive
                } else {
                    Polarity::Negative
                };
                Control::new(wire, polarity)
            })
            .collect();
        c.push(Gate::Cry {
            target: m,
            angle: rotation_angle(k, x, p),
            controls,
        })
        .expect("in range");
    }
    c
}

/// Shallow layout for a [`GapFingerprint`]; see [`build_shallow_parts`].
pub fn build_shallow(fp: &GapFingerprint, x: u64) -> Circuit {
    build_shallow_parts(fp.t0, &fp.generators, fp.p.get(), x)
}

/// `m` Hadamards, `R_y(4 pi t_j x / p)` controlled by wire `j - 1`, then the
/// uncontrolled offset rotation `R_0 = R_y(4 pi t_0 x / p)`.
///
/// With `m = 0` the circuit is the single offset rotation on one wire.
pub fn build_shallow_parts(t0: u64, generators: &[u64], p: u64, x: u64) -> Circuit {
    let m = generators.len();
    let mut c = Circuit::new(m + 1, format!("shallow m={m} p={p} x={x}"));
    for wire in 0..m {
        c.push(Gate::H { target: wire }).expect("in range");
    }
    for (wire, &t) in generators.iter().enumerate() {
        let gate = Gate::Cry {
            target: m,
            angle: rotation_angle(t, x, p),
            controls: vec![Control::positive(wire)],
        };
        c.push(gate).expect("in range");
    }
    c.push(Gate::Ry {
        target: m,
        angle: rotation_angle(t0, x, p),
    })
    .expect("in range");
    c
}

/// Wires per AIKPS block, `w = ceil(log2 |S|) + 1`: `w - 1` control wires
/// encode `s - 1` in binary.
pub fn aikps_block_width(set: &AikpsSet) -> usize {
    let s = set.s_max.max(1);
    (u64::BITS - (s - 1).leading_zeros()) as usize + 1
}

/// One block per prime `r_j`: `w - 1` rotations `R_y(2^(k-1) 4 pi r_j^-1 x / p)`,
/// each controlled by its own wire, then `R_y(4 pi r_j^-1 x / p)`. Blocks use
/// disjoint control wires and share the target.
pub fn build_aikps(set: &AikpsSet, x: u64) -> Circuit {
    let p = set.p.get();
    let w = aikps_block_width(set);
    let per_block = w - 1;
    let blocks = set.primes.len();
    let target = blocks * per_block;
    let mut c = Circuit::new(
        target + 1,
        format!("aikps blocks={blocks} w={w} p={p} x={x} eps={}", set.eps),
    );
    for wire in 0..target {
        c.push(Gate::H { target: wire }).expect("in range");
    }
    for (j, inv) in set.inverses().into_iter().enumerate() {
        let mut weight = inv;
        for k in 0..per_block {
            let gate = Gate::Cry {
                target,
                angle: rotation_angle(weight, x, p),
                controls: vec![Control::positive(j * per_block + k)],
            };
            c.push(gate).expect("in range");
            weight = mul_mod(weight, 2, p);
        }
        c.push(Gate::Ry {
            target,
            angle: rotation_angle(inv, x, p),
        })
        .expect("in range");
    }
    c
}
