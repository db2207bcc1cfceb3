//! Gates, stages and circuits.
//!
//! A [`Stage`] is a parallel row of gates whose wire spans, concatenated top
//! to bottom, cover the register. A [`Circuit`] is an ordered sequence of
//! stages; each stage consumes the previous stage's output.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Result, SimError};
use crate::linalg::{tensor_product, unitary_deviation, Complex, SquareMatrix, VALIDATION_TOL};

/// A named unitary acting on a contiguous group of wires.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    name: String,
    wire_dims: Vec<usize>,
    matrix: SquareMatrix,
    /// Unitarity deviation measured at construction; zero for gates that
    /// are unitary by construction.
    deviation: f64,
}

impl Gate {
    /// Wraps an arbitrary matrix, rejecting anything that is not unitary
    /// within [`VALIDATION_TOL`] or whose size disagrees with `wire_dims`.
    pub fn custom(
        name: impl Into<String>,
        wire_dims: Vec<usize>,
        matrix: SquareMatrix,
    ) -> Result<Self> {
        let name = name.into();
        if wire_dims.is_empty() {
            return Err(SimError::InvalidInput(format!(
                "gate `{name}` spans no wires"
            )));
        }
        if let Some(&d) = wire_dims.iter().find(|&&d| d < 2) {
            return Err(SimError::InvalidWireDim(d));
        }
        let dim: usize = wire_dims.iter().product();
        if matrix.dim() != dim {
            return Err(SimError::DimensionMismatch {
                expected: dim,
                found: matrix.dim(),
            });
        }
        let deviation = unitary_deviation(&matrix);
        if deviation > VALIDATION_TOL {
            return Err(SimError::NonUnitary { name, deviation });
        }
        Ok(Self {
            name,
            wire_dims,
            matrix,
            deviation,
        })
    }

    /// Basis-state permutation gate: column `j` has its single 1 in row `perm[j]`.
    pub fn permutation(
        name: impl Into<String>,
        wire_dims: Vec<usize>,
        perm: &[usize],
    ) -> Result<Self> {
        let dim: usize = wire_dims.iter().product();
        if perm.len() != dim {
            return Err(SimError::DimensionMismatch {
                expected: dim,
                found: perm.len(),
            });
        }
        let mut seen = vec![false; dim];
        for &target in perm {
            if target >= dim || std::mem::replace(&mut seen[target], true) {
                return Err(SimError::NotBijective { dim });
            }
        }
        if let Some(&d) = wire_dims.iter().find(|&&d| d < 2) {
            return Err(SimError::InvalidWireDim(d));
        }
        let mut entries = vec![Complex::new(0.0, 0.0); dim * dim];
        for (src, &dst) in perm.iter().enumerate() {
            entries[dst * dim + src] = Complex::new(1.0, 0.0);
        }
        Ok(Self {
            name: name.into(),
            wire_dims,
            matrix: SquareMatrix::from_entries(dim, entries)?,
            deviation: 0.0,
        })
    }

    /// `k`-qubit NOT: the k-fold tensor power of the Pauli X matrix.
    pub fn not(k: usize) -> Self {
        Self::qubit_power("not", k, &pauli_x())
    }

    /// `k`-qubit Hadamard: the k-fold tensor power of the one-qubit Hadamard.
    pub fn hadamard(k: usize) -> Self {
        Self::qubit_power("h", k, &hadamard_1())
    }

    /// Controlled NOT with the high-order (first) wire as control.
    pub fn cnot() -> Self {
        let m = SquareMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ])
        .expect("4x4 literal");
        Self::trusted("cnot", vec![2, 2], m)
    }

    /// Identity on a single wire of dimension `d`.
    pub fn identity(d: usize) -> Self {
        assert!(d >= 2, "wire dimension must be at least 2");
        Self::trusted("id", vec![d], SquareMatrix::identity(d))
    }

    /// Identity over a group of wires.
    pub fn identity_on(wire_dims: Vec<usize>) -> Self {
        assert!(
            !wire_dims.is_empty() && wire_dims.iter().all(|&d| d >= 2),
            "wire dimensions must be at least 2"
        );
        let dim = wire_dims.iter().product();
        Self::trusted("id", wire_dims, SquareMatrix::identity(dim))
    }

    /// Fourier transform over Z_d on one `d`-dimensional wire:
    /// entry `(x, y)` is `exp(2πi·xy/d) / √d`.
    pub fn qft(d: usize) -> Self {
        assert!(d >= 2, "wire dimension must be at least 2");
        let scale = 1.0 / (d as f64).sqrt();
        let m = SquareMatrix::from_fn(d, |x, y| {
            // Reduce the exponent first so large products keep full phase precision.
            let phase = 2.0 * PI * ((x * y) % d) as f64 / d as f64;
            Complex::from_polar(scale, phase)
        });
        Self::trusted("qft", vec![d], m)
    }

    fn qubit_power(name: &str, k: usize, one: &SquareMatrix) -> Self {
        assert!(k >= 1, "gate must span at least one qubit");
        let mut m = one.clone();
        for _ in 1..k {
            m = tensor_product(&m, one);
        }
        Self::trusted(name, vec![2; k], m)
    }

    fn trusted(name: &str, wire_dims: Vec<usize>, matrix: SquareMatrix) -> Self {
        Self {
            name: name.to_owned(),
            wire_dims,
            matrix,
            deviation: 0.0,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn wire_dims(&self) -> &[usize] {
        &self.wire_dims
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }
}

fn pauli_x() -> SquareMatrix {
    SquareMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("2x2 literal")
}

fn hadamard_1() -> SquareMatrix {
    let s = FRAC_1_SQRT_2;
    SquareMatrix::from_real_rows(&[&[s, s], &[s, -s]]).expect("2x2 literal")
}

/// Parallel composition of gates, listed top (high-order) to bottom.
#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    gates: Vec<Gate>,
}

impl Stage {
    pub fn new(gates: Vec<Gate>) -> Self {
        Self { gates }
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    /// Concatenated wire dimensions of all gates.
    pub fn wire_dims(&self) -> Vec<usize> {
        self.gates
            .iter()
            .flat_map(|g| g.wire_dims.iter().copied())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.gates.iter().map(Gate::dim).product()
    }
}

impl FromIterator<Gate> for Stage {
    fn from_iter<I: IntoIterator<Item = Gate>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    register_dims: Vec<usize>,
    stages: Vec<Stage>,
}

impl Circuit {
    /// Builds and validates a circuit.
    pub fn new(register_dims: Vec<usize>, stages: Vec<Stage>) -> Result<Self> {
        let c = Self {
            register_dims,
            stages,
        };
        c.validate()?;
        Ok(c)
    }

    /// Empty circuit on `n` qubits.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n], Vec::new())
    }

    /// Appends a stage, checking it against the register layout.
    pub fn push_stage(&mut self, stage: Stage) -> Result<()> {
        check_stage(&self.register_dims, &stage, self.stages.len())?;
        self.stages.push(stage);
        Ok(())
    }

    /// Checks that every stage spans the register exactly and every gate
    /// is unitary.
    pub fn validate(&self) -> Result<()> {
        if self.register_dims.is_empty() {
            return Err(SimError::InvalidInput("register has no wires".into()));
        }
        if let Some(&d) = self.register_dims.iter().find(|&&d| d < 2) {
            return Err(SimError::InvalidWireDim(d));
        }
        for (i, stage) in self.stages.iter().enumerate() {
            check_stage(&self.register_dims, stage, i)?;
        }
        Ok(())
    }

    pub fn register_dims(&self) -> &[usize] {
        &self.register_dims
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    /// Total register dimension D.
    pub fn dim(&self) -> usize {
        self.register_dims.iter().product()
    }
}

fn check_stage(register_dims: &[usize], stage: &Stage, index: usize) -> Result<()> {
    if stage.wire_dims() != register_dims {
        return Err(SimError::StageDimensionMismatch { stage: index });
    }
    if let Some(g) = stage.gates.iter().find(|g| g.deviation > VALIDATION_TOL) {
        return Err(SimError::NonUnitary {
            name: g.name.clone(),
            deviation: g.deviation,
        });
    }
    Ok(())
}
