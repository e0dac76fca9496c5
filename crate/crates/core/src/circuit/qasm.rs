//! OpenQASM 2.0 output.
//!
//! `H` and `R_y` map to `h` and `ry`. A singly-controlled rotation becomes
//! `cry`. A rotation under `k >= 2` controls is rewritten exactly as
//! `2^k` pairs `ry(theta_i) t; cx c_b(i), t;` with
//! `theta_i = (-1)^popcount(gray(i)) * theta / 2^k`, where `b(i)` is the
//! bit flipped between `gray(i)` and `gray(i + 1)` (the top control for the
//! last pair). Negative controls are wrapped in `x` gates.

use std::fmt::Write;

use super::{Circuit, Control, Gate, Polarity};
use crate::fmt::float17;

fn wrap_negatives(out: &mut String, controls: &[Control]) {
    for c in controls.iter().filter(|c| c.polarity == Polarity::Negative) {
        writeln!(out, "x q[{}];", c.qubit).unwrap();
    }
}

fn gray(i: usize) -> usize {
    i ^ (i >> 1)
}

fn emit_multicontrolled(out: &mut String, target: usize, angle: f64, controls: &[Control]) {
    let k = controls.len();
    let n = 1usize << k;
    let share = angle / n as f64;
    for i in 0..n {
        let theta = if gray(i).count_ones().is_multiple_of(2) {
            share
        } else {
            -share
        };
        let flip = if i + 1 < n {
            (i + 1).trailing_zeros() as usize
        } else {
            k - 1
        };
        writeln!(out, "ry({}) q[{target}];", float17(theta)).unwrap();
        writeln!(out, "cx q[{}],q[{target}];", controls[flip].qubit).unwrap();
    }
}

/// Byte-stable OpenQASM 2.0 text for `c`.
pub fn emit_qasm(c: &Circuit) -> String {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    writeln!(out, "// {}", c.label()).unwrap();
    writeln!(out, "qreg q[{}];", c.num_qubits()).unwrap();
    for gate in c.gates() {
        match gate {
            Gate::H { target } => writeln!(out, "h q[{target}];").unwrap(),
            Gate::Ry { target, angle } => {
                writeln!(out, "ry({}) q[{target}];", float17(*angle)).unwrap()
            }
            Gate::Cry {
                target,
                angle,
                controls,
            } => {
                wrap_negatives(&mut out, controls);
                if let [single] = controls.as_slice() {
                    writeln!(
                        out,
                        "cry({}) q[{}],q[{target}];",
                        float17(*angle),
                        single.qubit
                    )
                    .unwrap();
                } else {
                    emit_multicontrolled(&mut out, *target, *angle, controls);
                }
                wrap_negatives(&mut out, controls);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::build_shallow_parts;

    #[test]
    fn empty_circuit() {
        let text = emit_qasm(&Circuit::new(3, "empty"));
        assert_eq!(
            text,
            "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n// empty\nqreg q[3];\n"
        );
    }

    #[test]
    fn shallow_line_counts() {
        let text = emit_qasm(&build_shallow_parts(2, &[5], 11, 3));
        let count = |prefix: &str| text.lines().filter(|l| l.starts_with(prefix)).count();
        assert_eq!(count("h "), 1);
        assert_eq!(count("cry("), 1);
        assert_eq!(count("ry("), 1);
    }

    #[test]
    fn gray_decomposition_shape() {
        let mut c = Circuit::new(3, "deep m=2");
        c.push(Gate::Cry {
            target: 2,
            angle: 1.0,
            controls: vec![Control::positive(0), Control::new(1, Polarity::Negative)],
        })
        .unwrap();
        let text = emit_qasm(&c);
        let body: Vec<&str> = text.lines().skip(4).collect();
        assert_eq!(
            body,
            [
                "x q[1];",
                "ry(2.5000000000000000e-1) q[2];",
                "cx q[0],q[2];",
                "ry(-2.5000000000000000e-1) q[2];",
                "cx q[1],q[2];",
                "ry(2.5000000000000000e-1) q[2];",
                "cx q[0],q[2];",
                "ry(-2.5000000000000000e-1) q[2];",
                "cx q[1],q[2];",
                "x q[1];",
            ]
        );
    }
}
