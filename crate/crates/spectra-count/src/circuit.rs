//! JSON export of the counting-register circuit: the CNOT permutation
//! followed by the QFT.
//!
//! ```json
//! [{"gate": "cnot", "control": 3, "target": 0},
//!  {"gate": "h", "qubit": 3},
//!  {"gate": "cp", "control": 2, "target": 3, "angle_over_pi": 0.5},
//!  {"gate": "swap", "qubits": [0, 3]}]
//! ```

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use spectra_core::augmented::permutation_as_cnots;
use spectra_core::quantum::{qft_gates, Gate};

use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "lowercase")]
pub enum GateRecord {
    Cnot { control: usize, target: usize },
    H { qubit: usize },
    Cp { control: usize, target: usize, angle_over_pi: f64 },
    Swap { qubits: [usize; 2] },
}

impl From<&Gate> for GateRecord {
    fn from(g: &Gate) -> Self {
        match *g {
            Gate::Cnot { control, target } => GateRecord::Cnot { control, target },
            Gate::Hadamard { qubit } => GateRecord::H { qubit },
            Gate::ControlledPhase { control, target, angle } => {
                GateRecord::Cp { control, target, angle_over_pi: angle / PI }
            }
            Gate::Swap { a, b } => GateRecord::Swap { qubits: [a, b] },
        }
    }
}

impl From<&GateRecord> for Gate {
    fn from(r: &GateRecord) -> Self {
        match *r {
            GateRecord::Cnot { control, target } => Gate::Cnot { control, target },
            GateRecord::H { qubit } => Gate::Hadamard { qubit },
            GateRecord::Cp { control, target, angle_over_pi } => {
                Gate::ControlledPhase { control, target, angle: angle_over_pi * PI }
            }
            GateRecord::Swap { qubits: [a, b] } => Gate::Swap { a, b },
        }
    }
}

/// Permutation CNOTs then QFT gates on `qubits` counting qubits.
pub fn counting_register_circuit(qubits: u32) -> Vec<Gate> {
    let mut gates = permutation_as_cnots(qubits);
    gates.extend(qft_gates(qubits));
    gates
}

pub fn circuit_to_json(gates: &[Gate]) -> Result<String> {
    let records: Vec<GateRecord> = gates.iter().map(GateRecord::from).collect();
    let mut s = serde_json::to_string_pretty(&records)?;
    s.push('\n');
    Ok(s)
}

pub fn circuit_from_json(text: &str) -> Result<Vec<Gate>> {
    let records: Vec<GateRecord> = serde_json::from_str(text)?;
    Ok(records.iter().map(Gate::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_shapes() {
        let json = circuit_to_json(&counting_register_circuit(4)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let arr = v.as_array().unwrap();
        assert_eq!(arr[0], serde_json::json!({"gate": "cnot", "control": 3, "target": 0}));
        assert_eq!(arr[3], serde_json::json!({"gate": "h", "qubit": 3}));
        assert_eq!(arr[4], serde_json::json!({"gate": "cp", "control": 2, "target": 3, "angle_over_pi": 0.5}));
        assert_eq!(arr.last().unwrap(), &serde_json::json!({"gate": "swap", "qubits": [1, 2]}));
        // 3 CNOTs, 4 H, 6 CP, 2 SWAP
        assert_eq!(arr.len(), 15);
    }

    #[test]
    fn json_round_trip() {
        let gates = counting_register_circuit(5);
        assert_eq!(circuit_from_json(&circuit_to_json(&gates).unwrap()).unwrap(), gates);
    }
}
