//! Simon's algorithm: decide whether `f: {0,1}^n → {0,1}^n` is one-to-one or
//! two-to-one with a hidden XOR mask `t`, and recover `t`.
//!
//! The register has `2n` qubit wires. The top `n` wires (high-order) hold
//! `x`, the bottom `n` hold `y`. The circuit is `H⊗ⁿ ⊗ I`, the oracle
//! `|x, y⟩ → |x, y ⊕ f(x)⟩`, and `H⊗ⁿ ⊗ I` again; each repetition measures
//! the top wires, and every outcome `y` satisfies `t·y ≡ 0 (mod 2)`.

use std::collections::HashMap;

use crate::circuit::{Circuit, Gate, Stage};
use crate::error::{Result, SimError};
use crate::eval::eval_efficient;
use crate::gf2::{gf2_nullspace, Gf2Vector};
use crate::linalg::StateVector;
use crate::measure::{marginal_probabilities, measure_partial, RandomSource};

/// Which side of the promise a table falls on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Promise {
    OneToOne,
    TwoToOne { mask: usize },
}

/// Truth table of `f` over `n`-bit inputs, satisfying Simon's promise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    n: usize,
    values: Vec<usize>,
    promise: Promise,
}

/// Inputs are capped so that the `2n`-qubit simulation stays desk-sized.
pub const MAX_TABLE_BITS: usize = 10;

impl FunctionTable {
    pub fn new(n: usize, values: Vec<usize>) -> Result<Self> {
        if n == 0 || n > MAX_TABLE_BITS {
            return Err(SimError::MalformedTable(format!(
                "n = {n} is outside 1..={MAX_TABLE_BITS}"
            )));
        }
        let size = 1usize << n;
        if values.len() != size {
            return Err(SimError::MalformedTable(format!(
                "expected {size} values, found {}",
                values.len()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| v >= size) {
            return Err(SimError::MalformedTable(format!(
                "value {v} needs more than {n} bits"
            )));
        }
        let promise = detect_promise(&values).ok_or_else(|| {
            SimError::MalformedTable(
                "f is neither one-to-one nor two-to-one under an XOR mask".into(),
            )
        })?;
        Ok(Self { n, values, promise })
    }

    /// Parses the text format: a line holding `n`, then `2^n` lines `x f(x)`
    /// in decimal, in any order. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (_, header) = lines
            .next()
            .ok_or_else(|| SimError::MalformedTable("empty table".into()))?;
        let n: usize = header
            .parse()
            .map_err(|_| SimError::MalformedTable(format!("bad bit count `{header}`")))?;
        if n == 0 || n > MAX_TABLE_BITS {
            return Err(SimError::MalformedTable(format!(
                "n = {n} is outside 1..={MAX_TABLE_BITS}"
            )));
        }
        let size = 1usize << n;
        let mut values = vec![None; size];
        for (line_no, line) in lines {
            let bad = || {
                SimError::MalformedTable(format!("line {line_no}: expected `x f(x)`, got `{line}`"))
            };
            let mut parts = line.split_whitespace();
            let (Some(x), Some(fx), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(bad());
            };
            let x: usize = x.parse().map_err(|_| bad())?;
            let fx: usize = fx.parse().map_err(|_| bad())?;
            let slot = values.get_mut(x).ok_or_else(|| {
                SimError::MalformedTable(format!("line {line_no}: input {x} out of range"))
            })?;
            if slot.replace(fx).is_some() {
                return Err(SimError::MalformedTable(format!(
                    "line {line_no}: input {x} listed twice"
                )));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(x, v)| {
                v.ok_or_else(|| SimError::MalformedTable(format!("missing value for input {x}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, values)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (x, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{x} {v}\n"));
        }
        out
    }

    /// A random two-to-one table with mask `mask`.
    pub fn random_two_to_one(n: usize, mask: usize, rng: &mut RandomSource) -> Result<Self> {
        if n == 0 || n > MAX_TABLE_BITS || mask == 0 || mask >= 1 << n {
            return Err(SimError::InvalidInput(format!(
                "mask {mask} is not a nonzero {n}-bit value"
            )));
        }
        let mut outputs = shuffled(1 << n, rng);
        let mut values = vec![usize::MAX; 1 << n];
        for x in 0..1usize << n {
            if values[x] == usize::MAX {
                let v = outputs.pop().expect("one output per coset");
                values[x] = v;
                values[x ^ mask] = v;
            }
        }
        Self::new(n, values)
    }

    /// A random bijection.
    pub fn random_one_to_one(n: usize, rng: &mut RandomSource) -> Result<Self> {
        if n == 0 || n > MAX_TABLE_BITS {
            return Err(SimError::InvalidInput(format!("n = {n} is out of range")));
        }
        Self::new(n, shuffled(1 << n, rng))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn eval(&self, x: usize) -> usize {
        self.values[x]
    }

    pub fn promise(&self) -> &Promise {
        &self.promise
    }

    /// The hidden mask, when `f` is two-to-one.
    pub fn mask(&self) -> Option<usize> {
        match self.promise {
            Promise::TwoToOne { mask } => Some(mask),
            Promise::OneToOne => None,
        }
    }
}

fn shuffled(size: usize, rng: &mut RandomSource) -> Vec<usize> {
    let mut v: Vec<usize> = (0..size).collect();
    for i in (1..size).rev() {
        let j = rng.range_inclusive(0, i as u64) as usize;
        v.swap(i, j);
    }
    v
}

fn detect_promise(values: &[usize]) -> Option<Promise> {
    let mut preimages: HashMap<usize, Vec<usize>> = HashMap::new();
    for (x, &v) in values.iter().enumerate() {
        preimages.entry(v).or_default().push(x);
    }
    if preimages.len() == values.len() {
        return Some(Promise::OneToOne);
    }
    let mask = preimages[&values[0]].iter().copied().find(|&x| x != 0)?;
    let ok = preimages
        .values()
        .all(|xs| xs.len() == 2 && xs[0] ^ xs[1] == mask);
    ok.then_some(Promise::TwoToOne { mask })
}

/// Permutation gate `|x, y⟩ → |x, y ⊕ f(x)⟩` on `2n` qubits.
pub fn build_simon_oracle(f: &FunctionTable) -> Result<Gate> {
    let n = f.n;
    let low = (1usize << n) - 1;
    let perm: Vec<usize> = (0..1usize << (2 * n))
        .map(|j| {
            let (x, y) = (j >> n, j & low);
            (x << n) | (y ^ f.values[x])
        })
        .collect();
    Gate::permutation("simon_oracle", vec![2; 2 * n], &perm)
}

pub fn build_simon_circuit(f: &FunctionTable) -> Result<Circuit> {
    let n = f.n;
    let spread = Stage::new(vec![Gate::hadamard(n), Gate::identity_on(vec![2; n])]);
    Circuit::new(
        vec![2; 2 * n],
        vec![
            spread.clone(),
            Stage::new(vec![build_simon_oracle(f)?]),
            spread,
        ],
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    OneToOne,
    TwoToOne,
    /// The equations left more than one candidate mask.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimonResult {
    pub classification: Classification,
    pub recovered_t: Option<Gf2Vector>,
    pub equations: Vec<Gf2Vector>,
    pub repetitions_used: usize,
}

impl SimonResult {
    /// Whether the run identified `f` correctly.
    pub fn is_success(&self, f: &FunctionTable) -> bool {
        match (&f.promise, self.classification) {
            (Promise::OneToOne, Classification::OneToOne) => true,
            (Promise::TwoToOne { mask }, Classification::TwoToOne) => {
                self.recovered_t.as_ref().map(Gf2Vector::to_index) == Some(*mask)
            }
            _ => false,
        }
    }
}

/// The circuit's final state for one table. Evaluation is deterministic, so
/// every repetition measures a copy of the same state.
#[derive(Debug, Clone)]
pub struct SimonRunner {
    table: FunctionTable,
    final_state: StateVector,
}

impl SimonRunner {
    pub fn new(f: &FunctionTable) -> Result<Self> {
        let circuit = build_simon_circuit(f)?;
        let input = StateVector::zero_qubits(2 * f.n)?;
        let (final_state, _) = eval_efficient(&circuit, &input)?;
        Ok(Self {
            table: f.clone(),
            final_state,
        })
    }

    pub fn final_state(&self) -> &StateVector {
        &self.final_state
    }

    /// Probability of each top-register outcome.
    pub fn top_register_distribution(&self) -> Result<Vec<f64>> {
        let top: Vec<usize> = (0..self.table.n).collect();
        marginal_probabilities(&self.final_state, &top)
    }

    pub fn run(&self, repetitions: usize, rng: &mut RandomSource) -> Result<SimonResult> {
        if repetitions == 0 {
            return Err(SimError::InvalidInput(
                "repetitions must be at least 1".into(),
            ));
        }
        let n = self.table.n;
        let top: Vec<usize> = (0..n).collect();
        let equations = (0..repetitions)
            .map(|_| {
                measure_partial(&self.final_state, &top, rng)
                    .map(|m| Gf2Vector::from_index(m.basis_index, n))
            })
            .collect::<Result<Vec<_>>>()?;

        let basis = gf2_nullspace(&equations, n);
        let (classification, recovered_t) = match basis.as_slice() {
            [] => (Classification::OneToOne, None),
            [t] if self.table.eval(0) == self.table.eval(t.to_index()) => {
                (Classification::TwoToOne, Some(t.clone()))
            }
            _ => (Classification::Inconclusive, None),
        };
        Ok(SimonResult {
            classification,
            recovered_t,
            equations,
            repetitions_used: repetitions,
        })
    }
}

/// Three repetitions per input bit.
pub fn default_repetitions(n: usize) -> usize {
    3 * n
}

pub fn simon_run(
    f: &FunctionTable,
    repetitions: usize,
    rng: &mut RandomSource,
) -> Result<SimonResult> {
    SimonRunner::new(f)?.run(repetitions, rng)
}

/// Probability of observing `y` on the top register, read off the final state.
pub fn simon_interference_check(f: &FunctionTable, y: &Gf2Vector) -> Result<f64> {
    if f.mask().is_none() {
        return Err(SimError::NotTwoToOne);
    }
    if y.len() != f.n {
        return Err(SimError::DimensionMismatch {
            expected: f.n,
            found: y.len(),
        });
    }
    let probs = SimonRunner::new(f)?.top_register_distribution()?;
    Ok(probs[y.to_index()])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimonTrials {
    pub trials: usize,
    pub successes: usize,
}

impl SimonTrials {
    pub fn success_rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }
}

/// Repeats [`SimonRunner::run`] `trials` times, each with its own forked source.
pub fn simon_trials(
    f: &FunctionTable,
    trials: usize,
    repetitions: usize,
    rng: &mut RandomSource,
) -> Result<SimonTrials> {
    let runner = SimonRunner::new(f)?;
    let mut successes = 0;
    for _ in 0..trials {
        if runner.run(repetitions, &mut rng.fork())?.is_success(f) {
            successes += 1;
        }
    }
    Ok(SimonTrials { trials, successes })
}
