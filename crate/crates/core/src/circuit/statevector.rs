use std::f64::consts::FRAC_1_SQRT_2;

use super::{Circuit, Gate};
use crate::error::{Error, Result};

pub const MAX_STATEVECTOR_QUBITS: usize = 20;

/// Real amplitudes after running `c` from `|0...0>`. All supported gates
/// are real orthogonal, so no imaginary parts arise.
pub fn statevector(c: &Circuit) -> Result<Vec<f64>> {
    let n = c.num_qubits();
    if n > MAX_STATEVECTOR_QUBITS {
        return Err(Error::QubitBudget {
            qubits: n,
            max: MAX_STATEVECTOR_QUBITS,
        });
    }
    let mut amps = vec![0.0; 1 << n];
    amps[0] = 1.0;
    for gate in c.gates() {
        let bit = 1usize << gate.target();
        let (cos, sin) = match gate {
            Gate::H { .. } => (FRAC_1_SQRT_2, FRAC_1_SQRT_2),
            Gate::Ry { angle, .. } | Gate::Cry { angle, .. } => {
                let (s, c) = (angle / 2.0).sin_cos();
                (c, s)
            }
        };
        for i in (0..amps.len()).filter(|i| i & bit == 0) {
            if !gate.controls().iter().all(|ctl| ctl.fires(i)) {
                continue;
            }
            let (a0, a1) = (amps[i], amps[i | bit]);
            match gate {
                Gate::H { .. } => {
                    amps[i] = (a0 + a1) * FRAC_1_SQRT_2;
                    amps[i | bit] = (a0 - a1) * FRAC_1_SQRT_2;
                }
                _ => {
                    amps[i] = cos * a0 - sin * a1;
                    amps[i | bit] = sin * a0 + cos * a1;
                }
            }
        }
    }
    Ok(amps)
}

/// Target-qubit amplitudes in fingerprint block order:
/// `(amp[c], amp[c + 2^m])` for every control pattern `c`, where the
/// target is the top wire `m`.
pub fn target_block(amps: &[f64]) -> Vec<f64> {
    let half = amps.len() / 2;
    (0..half).flat_map(|c| [amps[c], amps[c + half]]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{build_deep, Control};
    use crate::coeffsets::CoefficientSet;
    use crate::qfa::fingerprint;
    use crate::zmod::PrimeModulus;

    #[test]
    fn basic_states() {
        assert_eq!(
            statevector(&Circuit::new(2, "empty")).unwrap(),
            vec![1.0, 0.0, 0.0, 0.0]
        );
        let mut c = Circuit::new(1, "h");
        c.push(Gate::H { target: 0 }).unwrap();
        assert_eq!(statevector(&c).unwrap(), vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        assert!(matches!(
            statevector(&Circuit::new(21, "big")),
            Err(Error::QubitBudget { .. })
        ));
    }

    #[test]
    fn negative_control_fires_on_zero() {
        let mut c = Circuit::new(2, "t");
        let pi = std::f64::consts::PI;
        c.push(Gate::Cry {
            target: 1,
            angle: pi,
            controls: vec![Control::new(0, super::super::Polarity::Negative)],
        })
        .unwrap();
        let s = statevector(&c).unwrap();
        assert!((s[2] - 1.0).abs() < 1e-15 && s[0].abs() < 1e-15);
    }

    #[test]
    fn deep_reproduces_fingerprint() {
        let k =
            CoefficientSet::explicit(PrimeModulus::new(31).unwrap(), vec![1, 5, 7, 30]).unwrap();
        for x in 0..31 {
            let amps = statevector(&build_deep(&k, x)).unwrap();
            let norm: f64 = amps.iter().map(|a| a * a).sum();
            assert!((norm - 1.0).abs() < 1e-12);
            for (a, b) in target_block(&amps).iter().zip(fingerprint(&k, x)) {
                assert!((a - b).abs() < 1e-12, "x={x}");
            }
        }
    }
}
