//! Depth, width and nearest-neighbor CX cost.

use serde::Serialize;

use super::{Circuit, Gate};
use crate::error::{Error, Result};

/// Greedy layering depth: a gate lands one layer above the latest layer on
/// any qubit it touches.
pub fn depth(c: &Circuit) -> usize {
    let mut level = vec![0usize; c.num_qubits()];
    let mut deepest = 0;
    for gate in c.gates() {
        let layer = gate.support().map(|q| level[q]).max().unwrap_or(0) + 1;
        for q in gate.support() {
            level[q] = layer;
        }
        deepest = deepest.max(layer);
    }
    deepest
}

/// Number of fingerprint coefficients the circuit evaluates.
pub fn fingerprint_width(c: &Circuit) -> usize {
    let hadamards = c
        .gates()
        .iter()
        .filter(|g| matches!(g, Gate::H { .. }))
        .count();
    match c.family() {
        "aikps" => {
            let blocks = c
                .gates()
                .iter()
                .filter(|g| matches!(g, Gate::Ry { .. }))
                .count();
            let per_block = hadamards.checked_div(blocks).unwrap_or(0);
            blocks << per_block
        }
        _ => 1 << hadamards,
    }
}

/// CX counts for a linear nearest-neighbor layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostModel {
    /// CX gates per singly-controlled `R_y`, including routing next to the target.
    pub cx_per_controlled_ry_lnn: u64,
    /// Extra CX gates for the final offset rotation and register cleanup.
    pub cx_overhead_final: u64,
}

impl Default for CostModel {
    fn default() -> Self {
        Self {
            cx_per_controlled_ry_lnn: 3,
            cx_overhead_final: 3,
        }
    }
}

impl CostModel {
    /// `d * ceil(log2 d)` CX gates for a bank of `d` uniformly controlled rotations.
    pub fn multicontrolled_bank_cx(&self, d: u64) -> u64 {
        if d <= 1 {
            return 0;
        }
        d * (u64::BITS - (d - 1).leading_zeros()) as u64
    }
}

/// CX count under `model`, chosen by the circuit's builder family.
pub fn cx_count_lnn(c: &Circuit, model: &CostModel) -> Result<u64> {
    let controlled = c.controlled_gate_count() as u64;
    match c.family() {
        "shallow" => Ok(controlled * model.cx_per_controlled_ry_lnn + model.cx_overhead_final),
        "deep" => Ok(model.multicontrolled_bank_cx(controlled)),
        "aikps" => Ok(controlled * model.cx_per_controlled_ry_lnn),
        other => Err(Error::UnknownCircuitLabel(other.to_string())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircuitStats {
    pub label: String,
    pub num_qubits: usize,
    pub gates: usize,
    pub depth: usize,
    pub cx_lnn: u64,
}

pub fn stats(c: &Circuit, model: &CostModel) -> Result<CircuitStats> {
    Ok(CircuitStats {
        label: c.label().to_string(),
        num_qubits: c.num_qubits(),
        gates: c.gates().len(),
        depth: depth(c),
        cx_lnn: cx_count_lnn(c, model)?,
    })
}
