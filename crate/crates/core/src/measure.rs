//! Projective measurement in the computational basis.
//!
//! Outcomes are drawn with a cumulative rule: draw `u` uniform in `[0, 1)`
//! and report the first basis index whose running probability total reaches
//! `u`. If rounding leaves the grand total just below `u` the last index is
//! reported.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, SimError};
use crate::linalg::{digits_to_index, index_to_digits, Complex, StateVector};

/// Seedable source of uniform draws. Identical seeds give identical streams.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform integer in `lo..=hi`.
    pub fn range_inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        self.rng.random_range(lo..=hi)
    }

    /// Derives an independent source, e.g. one per experiment trial.
    pub fn fork(&mut self) -> Self {
        Self::from_seed(self.rng.random())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementOutcome {
    /// Basis index, or the joint index of the measured wires for a
    /// partial measurement.
    pub basis_index: usize,
    /// Probability of this outcome before the measurement.
    pub probability: f64,
    pub collapsed: StateVector,
}

/// Born-rule probabilities `|a_i|²`.
pub fn probabilities(v: &StateVector) -> Result<Vec<f64>> {
    v.ensure_normalized()?;
    Ok(v.amps().iter().map(|a| a.norm_sqr()).collect())
}

/// The cumulative rule over a probability list. Zero-probability entries
/// are never reported, even for `u = 0` or a rounding shortfall.
fn pick_index(probs: &[f64], u: f64) -> usize {
    let mut total = 0.0;
    let mut last_possible = probs.len() - 1;
    for (i, &p) in probs.iter().enumerate() {
        if p <= 0.0 {
            continue;
        }
        total += p;
        last_possible = i;
        if total >= u {
            return i;
        }
    }
    last_possible
}

/// Full-register measurement using the next draw from `rng`.
pub fn measure_full(v: &StateVector, rng: &mut RandomSource) -> Result<MeasurementOutcome> {
    measure_full_at(v, rng.uniform())
}

/// Full-register measurement for an explicit draw `u ∈ [0, 1)`.
pub fn measure_full_at(v: &StateVector, u: f64) -> Result<MeasurementOutcome> {
    let probs = probabilities(v)?;
    let index = pick_index(&probs, u);
    Ok(MeasurementOutcome {
        basis_index: index,
        probability: probs[index],
        collapsed: StateVector::basis(v.dims().to_vec(), index)?,
    })
}

/// Measures the wires in `wires` (any order, no duplicates) and collapses
/// the rest of the register onto the observed outcome.
///
/// The reported index is the joint mixed-radix index of the selected wires
/// in ascending wire order, lowest wire most significant.
pub fn measure_partial(
    v: &StateVector,
    wires: &[usize],
    rng: &mut RandomSource,
) -> Result<MeasurementOutcome> {
    measure_partial_at(v, wires, rng.uniform())
}

pub fn measure_partial_at(v: &StateVector, wires: &[usize], u: f64) -> Result<MeasurementOutcome> {
    let marginal = Marginal::new(v, wires)?;
    let index = pick_index(&marginal.probs, u);
    let probability = marginal.probs[index];

    let scale = 1.0 / probability.sqrt();
    let amps = v
        .amps()
        .iter()
        .zip(&marginal.owner)
        .map(|(&a, &o)| {
            if o == index {
                a * scale
            } else {
                Complex::new(0.0, 0.0)
            }
        })
        .collect();
    Ok(MeasurementOutcome {
        basis_index: index,
        probability,
        collapsed: StateVector::new(v.dims().to_vec(), amps)?,
    })
}

/// Marginal distribution over a wire subset, with each basis index mapped to
/// the sub-register outcome it belongs to.
pub(crate) struct Marginal {
    pub probs: Vec<f64>,
    pub owner: Vec<usize>,
}

impl Marginal {
    pub fn new(v: &StateVector, wires: &[usize]) -> Result<Self> {
        v.ensure_normalized()?;
        if wires.is_empty() {
            return Err(SimError::EmptyWireSet);
        }
        let dims = v.dims();
        let mut selected = wires.to_vec();
        selected.sort_unstable();
        if let Some(&w) = selected.iter().find(|&&w| w >= dims.len()) {
            return Err(SimError::InvalidWire {
                wire: w,
                wires: dims.len(),
            });
        }
        if let Some(w) = selected.windows(2).find(|p| p[0] == p[1]) {
            return Err(SimError::InvalidInput(format!(
                "wire {} listed twice",
                w[0]
            )));
        }

        let sub_dims: Vec<usize> = selected.iter().map(|&w| dims[w]).collect();
        let mut probs = vec![0.0; sub_dims.iter().product()];
        let mut owner = Vec::with_capacity(v.len());
        for (i, a) in v.amps().iter().enumerate() {
            let digits = index_to_digits(i, dims);
            let sub: Vec<usize> = selected.iter().map(|&w| digits[w]).collect();
            let k = digits_to_index(&sub, &sub_dims);
            probs[k] += a.norm_sqr();
            owner.push(k);
        }
        Ok(Self { probs, owner })
    }
}

/// Marginal probabilities of the joint outcomes of `wires`.
pub fn marginal_probabilities(v: &StateVector, wires: &[usize]) -> Result<Vec<f64>> {
    Marginal::new(v, wires).map(|m| m.probs)
}

/// Outcome counts of `trials` independent full measurements of `v`.
pub fn sample_histogram(
    v: &StateVector,
    trials: usize,
    rng: &mut RandomSource,
) -> Result<BTreeMap<usize, usize>> {
    let probs = probabilities(v)?;
    let mut counts = BTreeMap::new();
    for _ in 0..trials {
        *counts.entry(pick_index(&probs, rng.uniform())).or_insert(0) += 1;
    }
    Ok(counts)
}
