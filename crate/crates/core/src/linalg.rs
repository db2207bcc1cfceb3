//! Dense complex linear algebra over mixed-radix registers.
//!
//! Index convention: in a tensor product the first factor occupies the most
//! significant digit of the composite index. Wire 0 of a register is the
//! highest place value of a basis index.

use num_complex::Complex64;

use crate::error::{Result, SimError};

pub type Complex = Complex64;

/// Tolerance used when validating unitarity and normalization.
pub const VALIDATION_TOL: f64 = 1e-9;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);

/// Splits `index` into per-wire digits, wire 0 most significant.
pub fn index_to_digits(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; dims.len()];
    for (slot, &d) in digits.iter_mut().zip(dims).rev() {
        *slot = index % d;
        index /= d;
    }
    digits
}

/// Inverse of [`index_to_digits`].
pub fn digits_to_index(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x)
}

fn check_dims(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() {
        return Err(SimError::InvalidInput("register has no wires".into()));
    }
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(SimError::InvalidWireDim(d));
    }
    Ok(dims.iter().product())
}

/// Complex amplitudes over a register of wires with the given dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    dims: Vec<usize>,
    amps: Vec<Complex>,
}

impl StateVector {
    pub fn new(dims: Vec<usize>, amps: Vec<Complex>) -> Result<Self> {
        let total = check_dims(&dims)?;
        if amps.len() != total {
            return Err(SimError::DimensionMismatch {
                expected: total,
                found: amps.len(),
            });
        }
        if amps.iter().any(|a| !a.is_finite()) {
            return Err(SimError::NonFinite("state vector"));
        }
        Ok(Self { dims, amps })
    }

    /// The computational basis state `|index⟩`.
    pub fn basis(dims: Vec<usize>, index: usize) -> Result<Self> {
        let total = check_dims(&dims)?;
        if index >= total {
            return Err(SimError::DimensionMismatch {
                expected: total,
                found: index,
            });
        }
        let mut amps = vec![ZERO; total];
        amps[index] = ONE;
        Ok(Self { dims, amps })
    }

    /// `|0…0⟩` on `n` qubits.
    pub fn zero_qubits(n: usize) -> Result<Self> {
        Self::basis(vec![2; n], 0)
    }

    pub(crate) fn from_parts_unchecked(dims: Vec<usize>, amps: Vec<Complex>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), amps.len());
        Self { dims, amps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn amps(&self) -> &[Complex] {
        &self.amps
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn into_amps(self) -> Vec<Complex> {
        self.amps
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sq() - 1.0).abs() <= tol
    }

    pub(crate) fn ensure_normalized(&self) -> Result<()> {
        if self.is_normalized(VALIDATION_TOL) {
            Ok(())
        } else {
            Err(SimError::NotNormalized {
                norm_sq: self.norm_sq(),
            })
        }
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    entries: Vec<Complex>,
}

impl SquareMatrix {
    pub fn from_entries(dim: usize, entries: Vec<Complex>) -> Result<Self> {
        if dim == 0 {
            return Err(SimError::InvalidInput(
                "matrix dimension must be positive".into(),
            ));
        }
        if entries.len() != dim * dim {
            return Err(SimError::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if entries.iter().any(|e| !e.is_finite()) {
            return Err(SimError::NonFinite("matrix"));
        }
        Ok(Self { dim, entries })
    }

    pub fn from_rows(rows: Vec<Vec<Complex>>) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(SimError::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Self::from_entries(dim, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix from real rows; convenient for 0/±1 gates.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(f(r, c));
            }
        }
        Self { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { ONE } else { ZERO })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.entries[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[Complex] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    pub fn dagger(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &SquareMatrix) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Kronecker product; `a` supplies the high-order index digit.
pub fn tensor_product(a: &SquareMatrix, b: &SquareMatrix) -> SquareMatrix {
    let bd = b.dim;
    SquareMatrix::from_fn(a.dim * bd, |r, c| {
        a.get(r / bd, c / bd) * b.get(r % bd, c % bd)
    })
}

/// Tensor product of a non-empty sequence of factors, first factor highest.
pub fn tensor_all<'a>(factors: impl IntoIterator<Item = &'a SquareMatrix>) -> Option<SquareMatrix> {
    factors.into_iter().fold(None, |acc, m| match acc {
        None => Some(m.clone()),
        Some(acc) => Some(tensor_product(&acc, m)),
    })
}

pub fn mat_vec(m: &SquareMatrix, v: &StateVector) -> Result<StateVector> {
    if m.dim != v.len() {
        return Err(SimError::DimensionMismatch {
            expected: m.dim,
            found: v.len(),
        });
    }
    let amps = (0..m.dim)
        .map(|r| m.row(r).iter().zip(&v.amps).map(|(x, y)| x * y).sum())
        .collect();
    Ok(StateVector::from_parts_unchecked(v.dims.clone(), amps))
}

pub fn mat_mul(a: &SquareMatrix, b: &SquareMatrix) -> Result<SquareMatrix> {
    if a.dim != b.dim {
        return Err(SimError::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    let n = a.dim;
    let mut out = vec![ZERO; n * n];
    for i in 0..n {
        let out_row = &mut out[i * n..(i + 1) * n];
        for k in 0..n {
            let aik = a.get(i, k);
            if aik == ZERO {
                continue;
            }
            for (o, bkj) in out_row.iter_mut().zip(b.row(k)) {
                *o += aik * bkj;
            }
        }
    }
    Ok(SquareMatrix {
        dim: n,
        entries: out,
    })
}

/// `max |M·M† − I|` over all entries.
pub fn unitary_deviation(m: &SquareMatrix) -> f64 {
    let n = m.dim;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let dot: Complex = m
                .row(i)
                .iter()
                .zip(m.row(j))
                .map(|(x, y)| x * y.conj())
                .sum();
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((dot - target).norm());
        }
    }
    worst
}

pub fn is_unitary(m: &SquareMatrix, tol: f64) -> bool {
    unitary_deviation(m) <= tol
}
