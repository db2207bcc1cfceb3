//! Seeded random circuits and states for fuzzing the evaluators.

use crate::circuit::{Circuit, Gate, Stage};
use crate::error::Result;
use crate::linalg::{Complex, StateVector};
use crate::measure::RandomSource;

#[derive(Debug, Clone, Copy)]
pub struct RandomCircuitSpec {
    /// Largest register dimension D.
    pub max_dim: usize,
    pub min_stages: usize,
    pub max_stages: usize,
}

impl Default for RandomCircuitSpec {
    fn default() -> Self {
        Self {
            max_dim: 64,
            min_stages: 1,
            max_stages: 4,
        }
    }
}

fn pick(rng: &mut RandomSource, n: usize) -> usize {
    rng.range_inclusive(0, n as u64 - 1) as usize
}

/// Register of 1–6 wires with dimensions 2 or 3 and product at most `max_dim`.
pub fn random_register(rng: &mut RandomSource, max_dim: usize) -> Vec<usize> {
    let target_wires = 1 + pick(rng, 6);
    let mut dims = Vec::new();
    let mut total = 1;
    while dims.len() < target_wires {
        let d = 2 + pick(rng, 2);
        if total * d > max_dim {
            if total * 2 <= max_dim {
                dims.push(2);
                total *= 2;
                continue;
            }
            break;
        }
        dims.push(d);
        total *= d;
    }
    if dims.is_empty() {
        dims.push(2);
    }
    dims
}

/// A uniformly shuffled permutation gate over `dims`.
pub fn random_permutation_gate(rng: &mut RandomSource, dims: Vec<usize>) -> Gate {
    let size: usize = dims.iter().product();
    let mut perm: Vec<usize> = (0..size).collect();
    for i in (1..size).rev() {
        perm.swap(i, pick(rng, i + 1));
    }
    Gate::permutation("perm", dims, &perm).expect("shuffle is a bijection")
}

/// A stage covering `dims`, drawing gates from NOT, Hadamard, CNOT, QFT,
/// identity, and random permutations over one or two wires.
pub fn random_stage(rng: &mut RandomSource, dims: &[usize]) -> Stage {
    let mut gates = Vec::new();
    let mut w = 0;
    while w < dims.len() {
        let qubit_run = dims[w..].iter().take_while(|&&d| d == 2).count();
        let gate = loop {
            match pick(rng, 6) {
                0 if qubit_run > 0 => break Gate::not(1 + pick(rng, qubit_run.min(2))),
                1 if qubit_run > 0 => break Gate::hadamard(1 + pick(rng, qubit_run.min(2))),
                2 if qubit_run >= 2 => break Gate::cnot(),
                3 => break Gate::qft(dims[w]),
                4 => break Gate::identity(dims[w]),
                5 => {
                    let span = if w + 1 < dims.len() {
                        1 + pick(rng, 2)
                    } else {
                        1
                    };
                    break random_permutation_gate(rng, dims[w..w + span].to_vec());
                }
                _ => continue,
            }
        };
        w += gate.wire_dims().len();
        gates.push(gate);
    }
    Stage::new(gates)
}

pub fn random_circuit(rng: &mut RandomSource, spec: RandomCircuitSpec) -> Result<Circuit> {
    let dims = random_register(rng, spec.max_dim);
    let span = spec.max_stages - spec.min_stages;
    let stages = spec.min_stages + pick(rng, span + 1);
    let stages = (0..stages).map(|_| random_stage(rng, &dims)).collect();
    Circuit::new(dims, stages)
}

/// A normalized state with independent random amplitudes.
pub fn random_state(rng: &mut RandomSource, dims: &[usize]) -> Result<StateVector> {
    let size: usize = dims.iter().product();
    let amps: Vec<Complex> = (0..size)
        .map(|_| Complex::new(rng.uniform() * 2.0 - 1.0, rng.uniform() * 2.0 - 1.0))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::new(dims.to_vec(), amps.into_iter().map(|a| a / norm).collect())
}
