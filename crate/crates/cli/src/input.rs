//! Input states and basis labels.
//!
//! Input specs: `|01>` (one digit per wire; digits may be comma-separated
//! for wires of dimension above 10), `basis:<index>`, or `amps:<file>` with
//! one `re im` pair per line.

use std::path::Path;

use qlattice::linalg::{digits_to_index, index_to_digits};
use qlattice::StateVector;

use crate::document::load_complex_list;
use crate::error::CliError;

pub fn parse_input(spec: &str, dims: &[usize]) -> Result<StateVector, CliError> {
    let spec = spec.trim();
    if let Some(index) = spec.strip_prefix("basis:") {
        let index: usize = index
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("invalid basis index `{index}`")))?;
        let total: usize = dims.iter().product();
        if index >= total {
            return Err(CliError::Input(format!(
                "basis index {index} outside 0..{total}"
            )));
        }
        return Ok(StateVector::basis(dims.to_vec(), index)?);
    }
    if let Some(path) = spec.strip_prefix("amps:") {
        let amps = load_complex_list(Path::new(path.trim()))?;
        return Ok(StateVector::new(dims.to_vec(), amps)?);
    }
    if let Some(body) = spec.strip_prefix('|').and_then(|s| s.strip_suffix('>')) {
        let digits: Vec<usize> = if body.contains(',') {
            body.split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| CliError::Input(format!("invalid digit `{t}`")))
                })
                .collect::<Result<_, _>>()?
        } else {
            body.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| CliError::Input(format!("invalid digit `{c}`")))
                })
                .collect::<Result<_, _>>()?
        };
        if digits.len() != dims.len() {
            return Err(CliError::Input(format!(
                "label `{spec}` has {} digits for {} wires",
                digits.len(),
                dims.len()
            )));
        }
        if let Some((w, (&x, &d))) = digits
            .iter()
            .zip(dims)
            .enumerate()
            .find(|(_, (&x, &d))| x >= d)
        {
            return Err(CliError::Input(format!(
                "digit {x} on wire {w} exceeds dimension {d}"
            )));
        }
        return Ok(StateVector::basis(
            dims.to_vec(),
            digits_to_index(&digits, dims),
        )?);
    }
    Err(CliError::Input(format!(
        "`{spec}` is not `|…>`, `basis:<index>` or `amps:<file>`"
    )))
}

/// `|0110>` when every wire has dimension at most 10, else `|3,0,12>`.
pub fn basis_label(index: usize, dims: &[usize]) -> String {
    let digits = index_to_digits(index, dims);
    let body = if dims.iter().all(|&d| d <= 10) {
        digits.iter().map(|d| d.to_string()).collect::<String>()
    } else {
        digits
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!("|{body}>")
}
