//! Discrete logarithms on the stage lattice and the classical factoring
//! driver.
//!
//! The discrete-log circuit works on three registers of dimension `p − 1`.
//! The first two hold exponents `a` and `b`; the third holds a group element
//! `v ∈ {1..p−1}` stored as index `v − 1`, so the all-zero basis state
//! carries the group identity. The oracle multiplies the third register by
//! `g^a · x^(−b) mod p`, which is a permutation of basis states and reduces
//! to "write `g^a · x^(−b)`" when the register starts at the identity.

use crate::circuit::{Circuit, Gate, Stage};
use crate::error::{Result, SimError};
use crate::eval::eval_efficient;
use crate::linalg::{digits_to_index, index_to_digits, StateVector};
use crate::measure::{measure_full, RandomSource};
use crate::numtheory::{gcd, is_generator, is_prime, mod_inverse, mod_pow, order_of};

/// Sign `s` such that every outcome `(c, d)` the circuit can produce obeys
/// `c·r + s·d ≡ 0 (mod p − 1)`, `r` being the discrete log. Fixed by
/// exhaustive support checks in the acceptance suite.
pub const DLOG_SUPPORT_SIGN: i64 = 1;

pub const DEFAULT_MAX_TRIES: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DlogInstance {
    p: u64,
    g: u64,
    x: u64,
}

impl DlogInstance {
    /// Requires an odd prime `p`, a generator `g` of the group mod `p`, and
    /// `x` in `1..p`.
    pub fn new(p: u64, g: u64, x: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(SimError::InvalidInstance(format!(
                "{p} is not an odd prime"
            )));
        }
        if !is_generator(g, p) {
            return Err(SimError::InvalidInstance(format!(
                "{g} does not generate Z_{p}*"
            )));
        }
        if x == 0 || x >= p {
            return Err(SimError::InvalidInstance(format!(
                "x = {x} is outside 1..{p}"
            )));
        }
        Ok(Self { p, g, x })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn g(&self) -> u64 {
        self.g
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    /// Dimension of each register.
    pub fn register_dim(&self) -> usize {
        (self.p - 1) as usize
    }

    pub fn register_dims(&self) -> Vec<usize> {
        vec![self.register_dim(); 3]
    }

    /// `g^a · x^(−b) mod p`.
    pub fn oracle_value(&self, a: u64, b: u64) -> u64 {
        let x_inv = mod_inverse(self.x, self.p).expect("x is a unit mod p");
        mod_pow(self.g, a, self.p) * mod_pow(x_inv, b, self.p) % self.p
    }

    /// `|0, 0, 1⟩`: both exponent registers at zero, third register at the identity.
    pub fn initial_state(&self) -> StateVector {
        StateVector::basis(self.register_dims(), 0).expect("index 0 always exists")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DlogOutcome {
    pub c: u64,
    pub d: u64,
    /// Index of the third register (group element minus one).
    pub third_register: usize,
    /// Recovered exponent in `0..p−1`, present only when `gcd(c, p−1) = 1`.
    pub r: Option<u64>,
    pub tries: usize,
}

/// `|a, b, m⟩ → |a, b, m ⊙ g^a·x^(−b)⟩`.
pub fn build_dlog_oracle(inst: &DlogInstance) -> Result<Gate> {
    let q = inst.register_dim();
    let dims = inst.register_dims();
    let perm: Vec<usize> = (0..q * q * q)
        .map(|j| {
            let digits = index_to_digits(j, &dims);
            let (a, b, m) = (digits[0] as u64, digits[1] as u64, digits[2] as u64);
            let v = (m + 1) * inst.oracle_value(a, b) % inst.p;
            digits_to_index(&[digits[0], digits[1], (v - 1) as usize], &dims)
        })
        .collect();
    Gate::permutation("dlog", dims, &perm)
}

/// Fourier transforms on the exponent registers, the oracle, then the
/// transforms again.
pub fn build_dlog_circuit(inst: &DlogInstance) -> Result<Circuit> {
    let q = inst.register_dim();
    let fourier = Stage::new(vec![Gate::qft(q), Gate::qft(q), Gate::identity(q)]);
    Circuit::new(
        inst.register_dims(),
        vec![
            fourier.clone(),
            Stage::new(vec![build_dlog_oracle(inst)?]),
            fourier,
        ],
    )
}

/// Solves `c·r + s·d ≡ 0 (mod p − 1)` for `r`, `s` being [`DLOG_SUPPORT_SIGN`].
pub fn exponent_from_outcome(c: u64, d: u64, p: u64) -> Option<u64> {
    let q = p - 1;
    let c_inv = mod_inverse(c, q).ok()?;
    let rhs = (-DLOG_SUPPORT_SIGN * d as i64).rem_euclid(q as i64) as u64;
    Some(rhs * c_inv % q)
}

/// Runs the circuit and measures all registers until an outcome with
/// `gcd(c, p−1) = 1` yields a verified exponent, up to `max_tries` times.
pub fn shor_dlog(
    inst: &DlogInstance,
    rng: &mut RandomSource,
    max_tries: usize,
) -> Result<DlogOutcome> {
    if max_tries == 0 {
        return Err(SimError::InvalidInput(
            "max_tries must be at least 1".into(),
        ));
    }
    let circuit = build_dlog_circuit(inst)?;
    // The evaluators are deterministic, so one evaluation serves every try.
    let (state, _) = eval_efficient(&circuit, &inst.initial_state())?;
    let dims = inst.register_dims();
    let q = inst.p - 1;

    for tries in 1..=max_tries {
        let outcome = measure_full(&state, rng)?;
        let digits = index_to_digits(outcome.basis_index, &dims);
        let (c, d) = (digits[0] as u64, digits[1] as u64);
        if gcd(c, q) != 1 {
            continue;
        }
        let r =
            exponent_from_outcome(c, d, inst.p).filter(|&r| mod_pow(inst.g, r, inst.p) == inst.x);
        if r.is_some() {
            return Ok(DlogOutcome {
                c,
                d,
                third_register: digits[2],
                r,
                tries,
            });
        }
    }
    Err(SimError::TriesExhausted(max_tries))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorOutcome {
    pub factor: u64,
    /// The base `x` that produced the factor.
    pub base: u64,
    /// Order of `base` mod n, absent when `gcd(base, n)` was already a factor.
    pub order: Option<u64>,
    pub attempts: usize,
}

/// Finds a nontrivial factor of an odd composite `n` from the order of a
/// random base. Orders come from the classical [`order_of`].
pub fn factor(n: u64, rng: &mut RandomSource, max_attempts: usize) -> Result<FactorOutcome> {
    if n < 9 || n.is_multiple_of(2) || is_prime(n) {
        return Err(SimError::InvalidInput(format!(
            "{n} is not an odd composite"
        )));
    }
    if max_attempts == 0 {
        return Err(SimError::InvalidInput(
            "max_attempts must be at least 1".into(),
        ));
    }
    for attempts in 1..=max_attempts {
        let base = rng.range_inclusive(2, n - 1);
        let shared = gcd(base, n);
        if shared > 1 {
            return Ok(FactorOutcome {
                factor: shared,
                base,
                order: None,
                attempts,
            });
        }
        let r = order_of(base, n)?;
        if r % 2 == 1 {
            continue;
        }
        let half = mod_pow(base, r / 2, n);
        if half == n - 1 {
            continue;
        }
        // Minimality of r rules out half == 1, so half ± 1 are both nonzero
        // multiples of distinct factors.
        let f = gcd(half - 1, n);
        debug_assert!(f > 1 && f < n && n.is_multiple_of(f));
        return Ok(FactorOutcome {
            factor: f,
            base,
            order: Some(r),
            attempts,
        });
    }
    Err(SimError::AttemptsExhausted(max_attempts))
}
