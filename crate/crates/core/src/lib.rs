//! A stage-lattice quantum circuit simulator.
//!
//! Circuits are sequences of stages; each stage is a parallel row of gates
//! whose tensor product spans the whole register. Registers are mixed-radix:
//! every wire has its own dimension `d ≥ 2`, so qubit circuits and
//! `(p−1)`-dimensional discrete-log registers share one model.
//!
//! Two evaluators are provided ([`eval::eval_naive`] and
//! [`eval::eval_efficient`]), with instrumentation of their workspace, plus
//! measurement and drivers for Simon's algorithm and a discrete-log circuit.

pub mod circuit;
pub mod error;
pub mod eval;
pub mod gf2;
pub mod linalg;
pub mod measure;
pub mod numtheory;
pub mod random;
pub mod shor;
pub mod simon;

pub use circuit::{Circuit, Gate, Stage};
pub use error::{Result, SimError};
pub use eval::{
    apply_stage_streamed, eval_efficient, eval_naive, eval_naive_capped, evaluate, run_benchmark,
    BenchOutcome, BenchRow, EvalMetrics, EvalMode, StageTemplate, DEFAULT_NAIVE_MAX_DIM,
};
pub use gf2::{gf2_nullspace, Gf2Vector};
pub use linalg::{
    is_unitary, mat_mul, mat_vec, tensor_product, Complex, SquareMatrix, StateVector,
};
pub use measure::{
    measure_full, measure_partial, probabilities, sample_histogram, MeasurementOutcome,
    RandomSource,
};
