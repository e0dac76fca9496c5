//! Gate-level circuits for fingerprint evaluation.
//!
//! Qubit `q` corresponds to bit `q` of a basis-state index. Every builder
//! places its control register on the low wires and the rotated target on
//! the highest wire, so the target-block of a statevector for control
//! pattern `c` sits at indices `c` (target `|0>`) and `c + 2^m`
//! (target `|1>`).

mod build;
mod metrics;
mod qasm;
mod statevector;

pub use build::{
    aikps_block_width, build_aikps, build_deep, build_shallow, build_shallow_parts, rotation_angle,
};
pub use metrics::{cx_count_lnn, depth, fingerprint_width, stats, CircuitStats, CostModel};
pub use qasm::emit_qasm;
pub use statevector::{statevector, target_block, MAX_STATEVECTOR_QUBITS};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    /// Fires on `|1>`.
    Positive,
    /// Fires on `|0>`.
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    pub fn new(qubit: usize, polarity: Polarity) -> Self {
        Self { qubit, polarity }
    }

    pub fn positive(qubit: usize) -> Self {
        Self::new(qubit, Polarity::Positive)
    }

    #[inline]
    pub(crate) fn fires(&self, index: usize) -> bool {
        let bit = index >> self.qubit & 1 == 1;
        bit == (self.polarity == Polarity::Positive)
    }
}

/// `H`, `R_y(angle)`, or `R_y(angle)` under one or more controls.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H {
        target: usize,
    },
    Ry {
        target: usize,
        angle: f64,
    },
    Cry {
        target: usize,
        angle: f64,
        controls: Vec<Control>,
    },
}

impl Gate {
    pub fn target(&self) -> usize {
        match self {
            Gate::H { target } | Gate::Ry { target, .. } | Gate::Cry { target, .. } => *target,
        }
    }

    pub fn controls(&self) -> &[Control] {
        match self {
            Gate::Cry { controls, .. } => controls,
            _ => &[],
        }
    }

    pub fn is_controlled(&self) -> bool {
        matches!(self, Gate::Cry { .. })
    }

    /// Every qubit the gate touches.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.target()).chain(self.controls().iter().map(|c| c.qubit))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
    label: String,
}

impl Circuit {
    pub fn new(num_qubits: usize, label: impl Into<String>) -> Self {
        Self {
            num_qubits,
            gates: Vec::new(),
            label: label.into(),
        }
    }

    /// Appends a gate after checking its indices.
    pub fn push(&mut self, gate: Gate) -> Result<()> {
        for q in gate.support() {
            if q >= self.num_qubits {
                return Err(Error::QubitIndex {
                    qubit: q,
                    num_qubits: self.num_qubits,
                });
            }
        }
        if let Gate::Cry {
            target,
            controls,
            angle,
        } = &gate
        {
            if controls.is_empty() {
                return Err(Error::InvalidParameter(
                    "controlled rotation without controls".into(),
                ));
            }
            if let Some(c) = controls.iter().find(|c| c.qubit == *target) {
                return Err(Error::ControlIsTarget(c.qubit));
            }
            let mut seen: Vec<usize> = controls.iter().map(|c| c.qubit).collect();
            seen.sort_unstable();
            if seen.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter("repeated control qubit".into()));
            }
            if !angle.is_finite() {
                return Err(Error::InvalidParameter("non-finite rotation angle".into()));
            }
        }
        if let Gate::Ry { angle, .. } = &gate {
            if !angle.is_finite() {
                return Err(Error::InvalidParameter("non-finite rotation angle".into()));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Builder family: the label up to the first space.
    pub fn family(&self) -> &str {
        self.label.split_whitespace().next().unwrap_or("")
    }

    pub fn controlled_gate_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_controlled()).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_validates() {
        let mut c = Circuit::new(2, "test");
        assert!(c.push(Gate::H { target: 1 }).is_ok());
        assert!(c.push(Gate::H { target: 2 }).is_err());
        let bad = Gate::Cry {
            target: 1,
            angle: 0.1,
            controls: vec![Control::positive(1)],
        };
        assert_eq!(c.push(bad), Err(Error::ControlIsTarget(1)));
        assert!(c
            .push(Gate::Ry {
                target: 0,
                angle: f64::NAN
            })
            .is_err());
        assert!(c
            .push(Gate::Cry {
                target: 0,
                angle: 1.0,
                controls: vec![]
            })
            .is_err());
        assert_eq!(c.gates().len(), 1);
    }
}
