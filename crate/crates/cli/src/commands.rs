//! Command implementations. Each returns its full output so that nothing is
//! printed when a command fails part-way.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use qlattice::eval::{bench_text_header, BENCH_CSV_HEADER};
use qlattice::shor::{factor, shor_dlog, DlogInstance};
use qlattice::simon::{default_repetitions, simon_trials, FunctionTable, Promise};
use qlattice::{
    evaluate, run_benchmark, sample_histogram, EvalMode, RandomSource, StageTemplate, StateVector,
};

use crate::document::{load_circuit, read};
use crate::error::CliError;
use crate::input::{basis_label, parse_input};

/// Fixed-point formatting that never prints `-0.000…`.
fn fixed(x: f64, places: usize) -> String {
    let half_ulp = 0.5 * 10f64.powi(-(places as i32));
    let x = if x.abs() < half_ulp { 0.0 } else { x };
    format!("{x:.places$}")
}

fn evaluate_file(
    file: &Path,
    input: &str,
    mode: EvalMode,
    max_dim: usize,
) -> Result<(StateVector, qlattice::EvalMetrics, f64), CliError> {
    let (_, circuit) = load_circuit(file)?;
    let input = parse_input(input, circuit.register_dims())?;
    let start = Instant::now();
    let (out, metrics) = evaluate(mode, &circuit, &input, max_dim)?;
    Ok((out, metrics, start.elapsed().as_secs_f64() * 1e3))
}

pub fn cmd_run(
    file: &Path,
    input: &str,
    mode: EvalMode,
    max_dim: usize,
) -> Result<String, CliError> {
    let (state, metrics, elapsed_ms) = evaluate_file(file, input, mode, max_dim)?;
    let mut out = String::new();
    writeln!(
        out,
        "{:<12} {:>12} {:>12} {:>11}",
        "basis", "re", "im", "probability"
    )
    .unwrap();
    for (i, a) in state.amps().iter().enumerate() {
        writeln!(
            out,
            "{:<12} {:>12} {:>12} {:>11}",
            basis_label(i, state.dims()),
            fixed(a.re, 6),
            fixed(a.im, 6),
            fixed(a.norm_sqr(), 4)
        )
        .unwrap();
    }
    writeln!(out, "mode {mode}").unwrap();
    writeln!(out, "stages {}", metrics.stages_processed).unwrap();
    writeln!(out, "peak_live_cells {}", metrics.peak_live_cells).unwrap();
    writeln!(out, "madds {}", metrics.madds).unwrap();
    writeln!(out, "elapsed_ms {elapsed_ms:.3}").unwrap();
    Ok(out)
}

pub fn cmd_sample(
    file: &Path,
    input: &str,
    mode: EvalMode,
    max_dim: usize,
    trials: usize,
    seed: u64,
) -> Result<String, CliError> {
    if trials == 0 {
        return Err(CliError::Input("--trials must be at least 1".into()));
    }
    let (state, _, _) = evaluate_file(file, input, mode, max_dim)?;
    let counts = sample_histogram(&state, trials, &mut RandomSource::from_seed(seed))?;
    let mut out = String::new();
    writeln!(out, "{:<12} {:>10}", "outcome", "count").unwrap();
    for (index, count) in &counts {
        writeln!(
            out,
            "{:<12} {:>10}",
            basis_label(*index, state.dims()),
            count
        )
        .unwrap();
    }
    writeln!(out, "trials {trials}").unwrap();
    writeln!(out, "seed {seed}").unwrap();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BenchFormat {
    Csv,
    Text,
}

pub fn cmd_bench(
    n_min: usize,
    n_max: usize,
    mode: EvalMode,
    max_dim: usize,
    stages: usize,
    format: BenchFormat,
) -> Result<String, CliError> {
    if stages == 0 {
        return Err(CliError::Input("--stages must be at least 1".into()));
    }
    let rows = run_benchmark(
        n_min,
        n_max,
        StageTemplate::Hadamard { stages },
        mode,
        max_dim,
    )?;
    let mut out = String::new();
    match format {
        BenchFormat::Csv => {
            writeln!(out, "{BENCH_CSV_HEADER}").unwrap();
            for r in &rows {
                writeln!(out, "{}", r.to_csv()).unwrap();
            }
        }
        BenchFormat::Text => {
            writeln!(out, "{}", bench_text_header()).unwrap();
            for r in &rows {
                writeln!(out, "{}", r.to_text()).unwrap();
            }
        }
    }
    Ok(out)
}

pub fn cmd_simon(
    table: &Path,
    trials: usize,
    seed: u64,
    repetitions: Option<usize>,
) -> Result<String, CliError> {
    if trials == 0 {
        return Err(CliError::Input("--trials must be at least 1".into()));
    }
    let f = FunctionTable::parse(&read(table)?)?;
    let reps = repetitions.unwrap_or_else(|| default_repetitions(f.n()));
    let summary = simon_trials(&f, trials, reps, &mut RandomSource::from_seed(seed))?;
    let mut out = String::new();
    writeln!(out, "n {}", f.n()).unwrap();
    match f.promise() {
        Promise::OneToOne => writeln!(out, "promise one-to-one").unwrap(),
        Promise::TwoToOne { mask } => {
            writeln!(out, "promise two-to-one").unwrap();
            writeln!(out, "mask {mask:0width$b}", width = f.n()).unwrap();
        }
    }
    writeln!(out, "repetitions {reps}").unwrap();
    writeln!(out, "trials {trials}").unwrap();
    writeln!(out, "successes {}", summary.successes).unwrap();
    writeln!(out, "success_rate {:.4}", summary.success_rate()).unwrap();
    Ok(out)
}

pub fn cmd_factor(n: u64, seed: u64, max_attempts: usize) -> Result<String, CliError> {
    let result = factor(n, &mut RandomSource::from_seed(seed), max_attempts)?;
    let mut out = String::new();
    writeln!(out, "factor {}", result.factor).unwrap();
    writeln!(out, "cofactor {}", n / result.factor).unwrap();
    writeln!(out, "base {}", result.base).unwrap();
    match result.order {
        Some(r) => writeln!(out, "order {r}").unwrap(),
        None => writeln!(out, "order - (base shares a factor with n)").unwrap(),
    }
    writeln!(out, "attempts {}", result.attempts).unwrap();
    Ok(out)
}

pub fn cmd_dlog(p: u64, g: u64, x: u64, seed: u64, max_tries: usize) -> Result<String, CliError> {
    let inst = DlogInstance::new(p, g, x)?;
    let result = shor_dlog(&inst, &mut RandomSource::from_seed(seed), max_tries)?;
    let r = result.r.expect("successful runs carry an exponent");
    let mut out = String::new();
    writeln!(out, "r {r}").unwrap();
    writeln!(out, "c {}", result.c).unwrap();
    writeln!(out, "d {}", result.d).unwrap();
    writeln!(out, "tries {}", result.tries).unwrap();
    writeln!(
        out,
        "check {g}^{r} mod {p} = {}",
        qlattice::numtheory::mod_pow(g, r, p)
    )
    .unwrap();
    Ok(out)
}

pub fn cmd_validate(file: &Path) -> Result<String, CliError> {
    let (_, circuit) = load_circuit(file)?;
    let gates: usize = circuit.stages().iter().map(|s| s.gates().len()).sum();
    Ok(format!(
        "ok: {} wires, dimension {}, {} stages, {} gates\n",
        circuit.register_dims().len(),
        circuit.dim(),
        circuit.stages().len(),
        gates
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_point_formatting() {
        assert_eq!(fixed(std::f64::consts::FRAC_1_SQRT_2, 6), "0.707107");
        assert_eq!(fixed(-1e-17, 6), "0.000000");
        assert_eq!(fixed(-0.25, 4), "-0.2500");
        assert_eq!(fixed(0.49999, 4), "0.5000");
    }
}
