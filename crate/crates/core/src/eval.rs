//! Circuit evaluation.
//!
//! Two evaluators are provided:
//!
//! * [`eval_naive`] tensors each stage into a full `D × D` stage matrix,
//!   multiplies the stage matrices into one circuit matrix and applies it
//!   to the input. Workspace is `Θ(D²)`.
//! * [`eval_efficient`] never forms a stage matrix. Output entry `i` of a
//!   stage is the dot product of the input with row `i` of the stage
//!   matrix, and that row is the tensor product of one row from each gate
//!   (`i` split into per-gate digits). Only one such row is materialized
//!   at a time, so workspace is `Θ(D)`.
//!
//! Both evaluators spend `Θ(D²)` multiply-adds per stage; the streaming
//! evaluator trades nothing in time for its memory saving, but it does not
//! recover the `O(D·A)` cost of gate-local updates either.
//!
//! [`EvalMetrics::peak_live_cells`] counts complex cells held as evaluation
//! workspace. The caller's input vector and the returned output vector are
//! not counted; intermediate state vectors between stages are. For the
//! streaming evaluator the peak never exceeds
//! [`STREAMING_WORKSPACE_FACTOR`]` · D`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::circuit::{Circuit, Gate, Stage};
use crate::error::{Result, SimError};
use crate::linalg::{
    index_to_digits, mat_mul, mat_vec, tensor_product, Complex, SquareMatrix, StateVector,
};

/// Largest register dimension the naive evaluator accepts by default
/// (12 qubits). A 13-qubit circuit matrix alone needs 1 GiB.
pub const DEFAULT_NAIVE_MAX_DIM: usize = 1 << 12;

/// Upper bound on streaming workspace in units of D: two row buffers plus
/// the intermediate input and output vectors of an inner stage.
pub const STREAMING_WORKSPACE_FACTOR: usize = 4;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalMetrics {
    pub peak_live_cells: usize,
    pub madds: u64,
    pub stages_processed: usize,
}

#[derive(Debug, Default)]
struct CellTracker {
    live: usize,
    peak: usize,
}

impl CellTracker {
    fn alloc(&mut self, cells: usize) {
        self.live += cells;
        self.peak = self.peak.max(self.live);
    }

    fn free(&mut self, cells: usize) {
        debug_assert!(cells <= self.live);
        self.live -= cells;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalMode {
    Naive,
    Efficient,
}

impl fmt::Display for EvalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EvalMode::Naive => "naive",
            EvalMode::Efficient => "efficient",
        })
    }
}

impl FromStr for EvalMode {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(EvalMode::Naive),
            "efficient" => Ok(EvalMode::Efficient),
            other => Err(SimError::InvalidInput(format!("unknown mode `{other}`"))),
        }
    }
}

/// Evaluates with either evaluator; `naive_max_dim` only affects naive mode.
pub fn evaluate(
    mode: EvalMode,
    circuit: &Circuit,
    input: &StateVector,
    naive_max_dim: usize,
) -> Result<(StateVector, EvalMetrics)> {
    match mode {
        EvalMode::Naive => eval_naive_capped(circuit, input, naive_max_dim),
        EvalMode::Efficient => eval_efficient(circuit, input),
    }
}

fn check_input(circuit: &Circuit, input: &StateVector) -> Result<()> {
    if input.dims() != circuit.register_dims() {
        return Err(SimError::DimensionMismatch {
            expected: circuit.dim(),
            found: input.len(),
        });
    }
    input.ensure_normalized()
}

/// Full-matrix evaluation with the default dimension cap.
pub fn eval_naive(circuit: &Circuit, input: &StateVector) -> Result<(StateVector, EvalMetrics)> {
    eval_naive_capped(circuit, input, DEFAULT_NAIVE_MAX_DIM)
}

pub fn eval_naive_capped(
    circuit: &Circuit,
    input: &StateVector,
    max_dim: usize,
) -> Result<(StateVector, EvalMetrics)> {
    circuit.validate()?;
    check_input(circuit, input)?;
    let dim = circuit.dim();
    if dim > max_dim {
        return Err(SimError::ResourceLimit { dim, cap: max_dim });
    }

    let mut cells = CellTracker::default();
    let mut metrics = EvalMetrics::default();
    let mut circuit_matrix: Option<SquareMatrix> = None;

    for stage in circuit.stages() {
        let stage_matrix = stage_matrix(stage, &mut cells, &mut metrics.madds);
        circuit_matrix = Some(match circuit_matrix {
            None => stage_matrix,
            Some(acc) => {
                cells.alloc(dim * dim);
                let product = mat_mul(&stage_matrix, &acc)?;
                metrics.madds += (dim * dim * dim) as u64;
                cells.free(2 * dim * dim);
                product
            }
        });
        metrics.stages_processed += 1;
    }

    let output = match circuit_matrix {
        None => input.clone(),
        Some(m) => {
            metrics.madds += (dim * dim) as u64;
            mat_vec(&m, input)?
        }
    };
    metrics.peak_live_cells = cells.peak;
    Ok((output, metrics))
}

/// Tensors a stage's gates top to bottom, tracking every partial product.
fn stage_matrix(stage: &Stage, cells: &mut CellTracker, madds: &mut u64) -> SquareMatrix {
    let mut gates = stage.gates().iter();
    let first = gates.next().expect("validated stage has at least one gate");
    let mut acc = first.matrix().clone();
    cells.alloc(cells_of(&acc));
    for g in gates {
        let next = tensor_product(&acc, g.matrix());
        let n = cells_of(&next);
        cells.alloc(n);
        *madds += n as u64;
        cells.free(cells_of(&acc));
        acc = next;
    }
    acc
}

fn cells_of(m: &SquareMatrix) -> usize {
    m.dim() * m.dim()
}

/// Streaming evaluation: one stage-matrix row live at a time.
pub fn eval_efficient(
    circuit: &Circuit,
    input: &StateVector,
) -> Result<(StateVector, EvalMetrics)> {
    circuit.validate()?;
    check_input(circuit, input)?;
    let dim = circuit.dim();
    let last = circuit.stages().len().saturating_sub(1);

    let mut cells = CellTracker::default();
    let mut metrics = EvalMetrics::default();
    let mut current: Option<Vec<Complex>> = None;

    for (s, stage) in circuit.stages().iter().enumerate() {
        if s < last {
            // This stage's output is an intermediate vector.
            cells.alloc(dim);
        }
        let src = current.as_deref().unwrap_or(input.amps());
        let out = stream_stage(stage, src, &mut cells, &mut metrics.madds);
        if s > 0 {
            cells.free(dim);
        }
        current = Some(out);
        metrics.stages_processed += 1;
    }

    metrics.peak_live_cells = cells.peak;
    let output = match current {
        None => input.clone(),
        Some(amps) => StateVector::from_parts_unchecked(input.dims().to_vec(), amps),
    };
    Ok((output, metrics))
}

/// Streams a single stage over `input`.
pub fn apply_stage_streamed(
    stage: &Stage,
    input: &StateVector,
) -> Result<(StateVector, EvalMetrics)> {
    if stage.gates().is_empty() || stage.dim() != input.len() {
        return Err(SimError::DimensionMismatch {
            expected: stage.dim(),
            found: input.len(),
        });
    }
    let mut cells = CellTracker::default();
    let mut madds = 0;
    let out = stream_stage(stage, input.amps(), &mut cells, &mut madds);
    let metrics = EvalMetrics {
        peak_live_cells: cells.peak,
        madds,
        stages_processed: 1,
    };
    Ok((
        StateVector::from_parts_unchecked(input.dims().to_vec(), out),
        metrics,
    ))
}

fn stream_stage(
    stage: &Stage,
    input: &[Complex],
    cells: &mut CellTracker,
    madds: &mut u64,
) -> Vec<Complex> {
    let gates: &[Gate] = stage.gates();
    let gate_dims: Vec<usize> = gates.iter().map(Gate::dim).collect();
    let dim = input.len();
    debug_assert_eq!(dim, gate_dims.iter().product::<usize>());

    // Two row buffers of capacity D, reused for every output entry.
    let mut row = Vec::with_capacity(dim);
    let mut scratch = Vec::with_capacity(dim);
    cells.alloc(2 * dim);

    let mut out = Vec::with_capacity(dim);
    for i in 0..dim {
        let digits = index_to_digits(i, &gate_dims);
        row.clear();
        row.extend_from_slice(gates[0].matrix().row(digits[0]));
        for (g, &d) in gates.iter().zip(&digits).skip(1) {
            let factor = g.matrix().row(d);
            scratch.clear();
            for &a in &row {
                scratch.extend(factor.iter().map(|&b| a * b));
            }
            *madds += scratch.len() as u64;
            std::mem::swap(&mut row, &mut scratch);
        }
        out.push(row.iter().zip(input).map(|(m, v)| m * v).sum());
        *madds += dim as u64;
    }
    cells.free(2 * dim);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageTemplate {
    /// `stages` identical stages of one-qubit Hadamard gates on every wire.
    Hadamard { stages: usize },
}

impl Default for StageTemplate {
    fn default() -> Self {
        StageTemplate::Hadamard { stages: 1 }
    }
}

impl StageTemplate {
    pub fn build(&self, qubits: usize) -> Result<Circuit> {
        match *self {
            StageTemplate::Hadamard { stages } => {
                let stage: Stage = (0..qubits).map(|_| Gate::hadamard(1)).collect();
                Circuit::new(vec![2; qubits], vec![stage; stages])
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BenchOutcome {
    Completed {
        elapsed_ms: f64,
        peak_live_cells: usize,
        madds: u64,
    },
    /// The naive evaluator refused the dimension.
    Crash,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchRow {
    pub qubits: usize,
    pub mode: EvalMode,
    pub outcome: BenchOutcome,
}

pub const BENCH_CSV_HEADER: &str = "qubits,mode,elapsed_ms,peak_live_cells,madds";

impl BenchRow {
    pub fn peak_live_cells(&self) -> Option<usize> {
        match self.outcome {
            BenchOutcome::Completed {
                peak_live_cells, ..
            } => Some(peak_live_cells),
            BenchOutcome::Crash => None,
        }
    }

    pub fn to_csv(&self) -> String {
        match self.outcome {
            BenchOutcome::Completed {
                elapsed_ms,
                peak_live_cells,
                madds,
            } => format!(
                "{},{},{:.3},{},{}",
                self.qubits, self.mode, elapsed_ms, peak_live_cells, madds
            ),
            BenchOutcome::Crash => format!("{},{},Crash,Crash,Crash", self.qubits, self.mode),
        }
    }

    pub fn to_text(&self) -> String {
        match self.outcome {
            BenchOutcome::Completed {
                elapsed_ms,
                peak_live_cells,
                madds,
            } => format!(
                "{:>6}  {:<9}  {:>12.3}  {:>15}  {:>15}",
                self.qubits, self.mode, elapsed_ms, peak_live_cells, madds
            ),
            BenchOutcome::Crash => format!(
                "{:>6}  {:<9}  {:>12}  {:>15}  {:>15}",
                self.qubits, self.mode, "Crash", "Crash", "Crash"
            ),
        }
    }
}

pub fn bench_text_header() -> String {
    format!(
        "{:>6}  {:<9}  {:>12}  {:>15}  {:>15}",
        "qubits", "mode", "elapsed_ms", "peak_live_cells", "madds"
    )
}

/// Evaluates the template circuit on `|0…0⟩` for every qubit count in
/// `n_min..=n_max`. Naive runs above `naive_max_dim` yield a crash row.
pub fn run_benchmark(
    n_min: usize,
    n_max: usize,
    template: StageTemplate,
    mode: EvalMode,
    naive_max_dim: usize,
) -> Result<Vec<BenchRow>> {
    if n_min == 0 || n_min > n_max {
        return Err(SimError::InvalidInput(format!(
            "invalid qubit range {n_min}..={n_max}"
        )));
    }
    (n_min..=n_max)
        .map(|qubits| {
            let circuit = template.build(qubits)?;
            let input = StateVector::zero_qubits(qubits)?;
            let start = Instant::now();
            let outcome = match evaluate(mode, &circuit, &input, naive_max_dim) {
                Ok((_, m)) => BenchOutcome::Completed {
                    elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
                    peak_live_cells: m.peak_live_cells,
                    madds: m.madds,
                },
                Err(SimError::ResourceLimit { .. }) => BenchOutcome::Crash,
                Err(e) => return Err(e),
            };
            Ok(BenchRow {
                qubits,
                mode,
                outcome,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    fn assert_close(v: &StateVector, want: &[f64], tol: f64) {
        assert_eq!(v.len(), want.len());
        for (a, &w) in v.amps().iter().zip(want) {
            assert!((a - c(w)).norm() <= tol, "{a} vs {w}");
        }
    }

    fn bell() -> Circuit {
        Circuit::new(
            vec![2, 2],
            vec![
                Stage::new(vec![Gate::hadamard(1), Gate::identity(2)]),
                Stage::new(vec![Gate::cnot()]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn single_hadamard() {
        let circuit = Circuit::new(vec![2], vec![Stage::new(vec![Gate::hadamard(1)])]).unwrap();
        let input = StateVector::basis(vec![2], 0).unwrap();
        for (out, _) in [
            eval_naive(&circuit, &input).unwrap(),
            eval_efficient(&circuit, &input).unwrap(),
        ] {
            assert_close(&out, &[FRAC_1_SQRT_2, FRAC_1_SQRT_2], 1e-15);
        }
    }

    #[test]
    fn empty_circuit_is_identity() {
        let circuit = Circuit::qubits(2).unwrap();
        let input = StateVector::new(
            vec![2, 2],
            vec![c(0.5), c(0.5), c(-0.5), Complex::new(0.0, 0.5)],
        )
        .unwrap();
        let (a, ma) = eval_naive(&circuit, &input).unwrap();
        let (b, mb) = eval_efficient(&circuit, &input).unwrap();
        assert_eq!(a, input);
        assert_eq!(b, input);
        assert_eq!(ma.stages_processed, 0);
        assert_eq!(mb.peak_live_cells, 0);
    }

    #[test]
    fn bell_state_preparation() {
        let input = StateVector::basis(vec![2, 2], 0).unwrap();
        let want = [FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2];
        let (a, _) = eval_naive(&bell(), &input).unwrap();
        let (b, _) = eval_efficient(&bell(), &input).unwrap();
        assert_close(&a, &want, 1e-15);
        assert_close(&b, &want, 1e-15);
    }

    #[test]
    fn streamed_stage_examples() {
        let v = StateVector::new(vec![2], vec![c(0.6), c(0.8)]).unwrap();
        let (out, m) = apply_stage_streamed(&Stage::new(vec![Gate::not(1)]), &v).unwrap();
        assert_close(&out, &[0.8, 0.6], 0.0);
        assert_eq!(m.peak_live_cells, 4);

        let zero = StateVector::basis(vec![2, 2], 0).unwrap();
        let hh = Stage::new(vec![Gate::hadamard(1), Gate::hadamard(1)]);
        let (out, _) = apply_stage_streamed(&hh, &zero).unwrap();
        assert_close(&out, &[0.5; 4], 1e-15);

        let v = StateVector::new(
            vec![2, 2],
            vec![c(0.1), c(0.7), Complex::new(0.0, 0.1), c(-0.7)],
        )
        .unwrap();
        let ii = Stage::new(vec![Gate::identity(2), Gate::identity(2)]);
        assert_eq!(apply_stage_streamed(&ii, &v).unwrap().0, v);

        assert!(matches!(
            apply_stage_streamed(&hh, &StateVector::basis(vec![2], 0).unwrap()),
            Err(SimError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn input_validation() {
        let circuit = bell();
        let wrong_dims = StateVector::basis(vec![4], 0).unwrap();
        assert!(matches!(
            eval_efficient(&circuit, &wrong_dims),
            Err(SimError::DimensionMismatch { .. })
        ));
        let unnormalized = StateVector::new(vec![2, 2], vec![c(1.0); 4]).unwrap();
        assert!(matches!(
            eval_naive(&circuit, &unnormalized),
            Err(SimError::NotNormalized { .. })
        ));
    }

    #[test]
    fn naive_cap() {
        let circuit = StageTemplate::default().build(4).unwrap();
        let input = StateVector::zero_qubits(4).unwrap();
        assert_eq!(
            eval_naive_capped(&circuit, &input, 8).unwrap_err(),
            SimError::ResourceLimit { dim: 16, cap: 8 }
        );
        assert!(eval_naive_capped(&circuit, &input, 16).is_ok());
    }

    #[test]
    fn workspace_accounting() {
        // Two stages on 8 dimensions: the naive evaluator holds two 64-cell
        // stage matrices and their product at once.
        let stage: Stage = (0..3).map(|_| Gate::hadamard(1)).collect();
        let circuit = Circuit::new(vec![2; 3], vec![stage.clone(), stage]).unwrap();
        let input = StateVector::zero_qubits(3).unwrap();
        let (_, naive) = eval_naive(&circuit, &input).unwrap();
        let (_, eff) = eval_efficient(&circuit, &input).unwrap();
        assert_eq!(naive.peak_live_cells, 3 * 64);
        assert_eq!(eff.peak_live_cells, 3 * 8);
        assert!(eff.peak_live_cells < naive.peak_live_cells);
        assert_eq!(naive.stages_processed, 2);
        assert_eq!(eff.stages_processed, 2);
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("naive".parse::<EvalMode>().unwrap(), EvalMode::Naive);
        assert_eq!(
            "efficient".parse::<EvalMode>().unwrap(),
            EvalMode::Efficient
        );
        assert!("fast".parse::<EvalMode>().is_err());
    }

    #[test]
    fn benchmark_rows() {
        let rows = run_benchmark(2, 4, StageTemplate::default(), EvalMode::Naive, 8).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(matches!(rows[0].outcome, BenchOutcome::Completed { .. }));
        assert_eq!(rows[2].outcome, BenchOutcome::Crash);
        assert_eq!(rows[2].to_csv(), "4,naive,Crash,Crash,Crash");
        assert!(rows[0].to_csv().starts_with("2,naive,"));
        assert!(run_benchmark(5, 4, StageTemplate::default(), EvalMode::Naive, 8).is_err());
    }
}
