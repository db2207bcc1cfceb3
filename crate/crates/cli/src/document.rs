//! Line-oriented circuit files.
//!
//! ```text
//! registers 2 2          # wire dimensions, first = high-order
//! stage h 1 | id 1       # gates separated by '|'
//! stage cnot
//! ```
//!
//! Gates: `not k` and `h k` span `k` qubit wires; `cnot` spans two qubits;
//! `id k` spans the next `k` wires whatever their dimensions; `qft d` spans
//! one wire of dimension `d`; `perm FILE d…` and `unitary FILE d…` load a
//! permutation (`src dst` per line) or a row-major matrix (`re im` per line)
//! acting on wires of the listed dimensions. Relative paths resolve against
//! the circuit file's directory.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use qlattice::{Circuit, Complex, Gate, SimError, SquareMatrix, Stage};

use crate::error::CliError;

/// Largest register dimension a circuit file may declare (24 qubits).
pub const MAX_REGISTER_DIM: usize = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GateSpec {
    Not(usize),
    Hadamard(usize),
    Cnot,
    Identity(usize),
    Qft(usize),
    Permutation { path: PathBuf, dims: Vec<usize> },
    Unitary { path: PathBuf, dims: Vec<usize> },
}

impl fmt::Display for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateSpec::Not(k) => write!(f, "not {k}"),
            GateSpec::Hadamard(k) => write!(f, "h {k}"),
            GateSpec::Cnot => f.write_str("cnot"),
            GateSpec::Identity(k) => write!(f, "id {k}"),
            GateSpec::Qft(d) => write!(f, "qft {d}"),
            GateSpec::Permutation { path, dims } | GateSpec::Unitary { path, dims } => {
                let kw = if matches!(self, GateSpec::Permutation { .. }) {
                    "perm"
                } else {
                    "unitary"
                };
                write!(f, "{kw} {}", path.display())?;
                for d in dims {
                    write!(f, " {d}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageSpec {
    /// 1-based source line, 0 for stages built in code.
    pub line: usize,
    pub gates: Vec<GateSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitDocument {
    pub register_dims: Vec<usize>,
    pub stages: Vec<StageSpec>,
}

fn parse_count(tok: Option<&str>, line: usize, what: &str) -> Result<usize, CliError> {
    let tok = tok.ok_or_else(|| CliError::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| CliError::parse(line, format!("invalid {what} `{tok}`")))
}

fn parse_gate(text: &str, line: usize) -> Result<GateSpec, CliError> {
    let mut toks = text.split_whitespace();
    let name = toks
        .next()
        .ok_or_else(|| CliError::parse(line, "empty gate between '|'"))?;
    let spec = match name {
        "not" => GateSpec::Not(parse_count(toks.next(), line, "wire count")?),
        "h" => GateSpec::Hadamard(parse_count(toks.next(), line, "wire count")?),
        "cnot" => GateSpec::Cnot,
        "id" => GateSpec::Identity(parse_count(toks.next(), line, "wire count")?),
        "qft" => GateSpec::Qft(parse_count(toks.next(), line, "dimension")?),
        "perm" | "unitary" => {
            let path = PathBuf::from(
                toks.next()
                    .ok_or_else(|| CliError::parse(line, format!("`{name}` needs a file")))?,
            );
            let dims = toks
                .by_ref()
                .map(|t| parse_count(Some(t), line, "wire dimension"))
                .collect::<Result<Vec<_>, _>>()?;
            if dims.is_empty() {
                return Err(CliError::parse(
                    line,
                    format!("`{name}` needs wire dimensions"),
                ));
            }
            if name == "perm" {
                GateSpec::Permutation { path, dims }
            } else {
                GateSpec::Unitary { path, dims }
            }
        }
        other => return Err(CliError::parse(line, format!("unknown gate `{other}`"))),
    };
    if let Some(extra) = toks.next() {
        return Err(CliError::parse(
            line,
            format!("unexpected `{extra}` after `{name}`"),
        ));
    }
    let zero = match &spec {
        GateSpec::Not(k) | GateSpec::Hadamard(k) | GateSpec::Identity(k) => *k == 0,
        GateSpec::Qft(d) => *d < 2,
        GateSpec::Permutation { dims, .. } | GateSpec::Unitary { dims, .. } => {
            dims.iter().any(|&d| d < 2)
        }
        GateSpec::Cnot => false,
    };
    if zero {
        return Err(CliError::parse(
            line,
            format!("`{text}` spans no valid wires"),
        ));
    }
    Ok(spec)
}

impl CircuitDocument {
    /// Syntax-level parse; see [`parse_circuit`] for full validation.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut register_dims = None;
        let mut stages = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (keyword, rest) = content
                .split_once(char::is_whitespace)
                .unwrap_or((content, ""));
            match keyword {
                "registers" => {
                    if register_dims.is_some() {
                        return Err(CliError::parse(line, "duplicate `registers` line"));
                    }
                    let dims = rest
                        .split_whitespace()
                        .map(|t| parse_count(Some(t), line, "wire dimension"))
                        .collect::<Result<Vec<_>, _>>()?;
                    if dims.is_empty() {
                        return Err(CliError::parse(line, "`registers` needs at least one wire"));
                    }
                    if let Some(d) = dims.iter().find(|&&d| d < 2) {
                        return Err(CliError::parse(
                            line,
                            format!("wire dimension {d} is below 2"),
                        ));
                    }
                    let total = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d));
                    if total.is_none_or(|t| t > MAX_REGISTER_DIM) {
                        return Err(CliError::parse(
                            line,
                            format!("register dimension exceeds {MAX_REGISTER_DIM}"),
                        ));
                    }
                    register_dims = Some(dims);
                }
                "stage" => {
                    if register_dims.is_none() {
                        return Err(CliError::parse(line, "`stage` before `registers`"));
                    }
                    let gates = rest
                        .split('|')
                        .map(|g| parse_gate(g.trim(), line))
                        .collect::<Result<Vec<_>, _>>()?;
                    stages.push(StageSpec { line, gates });
                }
                other => {
                    return Err(CliError::parse(
                        line,
                        format!("unknown directive `{other}`"),
                    ))
                }
            }
        }
        let register_dims =
            register_dims.ok_or_else(|| CliError::parse(0, "missing `registers` line"))?;
        Ok(Self {
            register_dims,
            stages,
        })
    }

    /// Resolves every gate and validates the result against the register.
    pub fn build(&self, base_dir: &Path) -> Result<Circuit, CliError> {
        let wires = self.register_dims.len();
        let mut stages = Vec::with_capacity(self.stages.len());
        for spec in &self.stages {
            let line = spec.line;
            let mut pos = 0;
            let mut gates = Vec::with_capacity(spec.gates.len());
            for g in &spec.gates {
                let span = match g {
                    GateSpec::Not(k) | GateSpec::Hadamard(k) => vec![2; (*k).min(wires + 1)],
                    GateSpec::Cnot => vec![2, 2],
                    GateSpec::Identity(k) => {
                        self.register_dims[pos.min(wires)..(pos + k).min(wires)].to_vec()
                    }
                    GateSpec::Qft(d) => vec![*d],
                    GateSpec::Permutation { dims, .. } | GateSpec::Unitary { dims, .. } => {
                        dims.clone()
                    }
                };
                let end = pos + span.len();
                if end > wires
                    || self.register_dims[pos..end] != span[..]
                    || matches!(g, GateSpec::Identity(k) if *k != span.len())
                {
                    return Err(CliError::validation(
                        line,
                        format!(
                            "`{g}` at wire {pos} does not fit the register {:?}",
                            self.register_dims
                        ),
                    ));
                }
                match g {
                    GateSpec::Not(k) => gates.push(Gate::not(*k)),
                    GateSpec::Hadamard(k) => gates.push(Gate::hadamard(*k)),
                    GateSpec::Cnot => gates.push(Gate::cnot()),
                    GateSpec::Qft(d) => gates.push(Gate::qft(*d)),
                    // One identity per wire keeps every gate matrix small.
                    GateSpec::Identity(_) => gates.extend(span.iter().map(|&d| Gate::identity(d))),
                    GateSpec::Permutation { path, dims } => {
                        let perm = load_permutation(&base_dir.join(path), dims.iter().product())
                            .map_err(|e| e.at_line(line))?;
                        let gate =
                            Gate::permutation(path.display().to_string(), dims.clone(), &perm)
                                .map_err(|e| CliError::validation(line, e.to_string()))?;
                        gates.push(gate);
                    }
                    GateSpec::Unitary { path, dims } => {
                        let m = load_unitary(&base_dir.join(path), dims.iter().product())
                            .map_err(|e| e.at_line(line))?;
                        let gate = Gate::custom(path.display().to_string(), dims.clone(), m)
                            .map_err(|e| CliError::validation(line, e.to_string()))?;
                        gates.push(gate);
                    }
                }
                pos = end;
            }
            let stage = Stage::new(gates);
            let covered = stage.wire_dims();
            if covered != self.register_dims {
                return Err(CliError::validation(
                    line,
                    format!(
                        "stage spans wires {:?} but the register is {:?}",
                        covered, self.register_dims
                    ),
                ));
            }
            stages.push(stage);
        }
        Circuit::new(self.register_dims.clone(), stages).map_err(|e| match e {
            SimError::StageDimensionMismatch { stage } => {
                CliError::validation(self.stages[stage].line, e.to_string())
            }
            other => CliError::Sim(other),
        })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CircuitDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("registers")?;
        for d in &self.register_dims {
            write!(f, " {d}")?;
        }
        writeln!(f)?;
        for stage in &self.stages {
            f.write_str("stage ")?;
            for (i, g) in stage.gates.iter().enumerate() {
                if i > 0 {
                    f.write_str(" | ")?;
                }
                write!(f, "{g}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Parses and validates a circuit file's text.
pub fn parse_circuit(text: &str, base_dir: &Path) -> Result<(CircuitDocument, Circuit), CliError> {
    let doc = CircuitDocument::parse(text)?;
    let circuit = doc.build(base_dir)?;
    Ok((doc, circuit))
}

pub fn load_circuit(path: &Path) -> Result<(CircuitDocument, Circuit), CliError> {
    let text = read(path)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    parse_circuit(&text, base)
}

pub(crate) fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Reads `src dst` pairs; every source index in `0..dim` must appear once.
pub fn load_permutation(path: &Path, dim: usize) -> Result<Vec<usize>, CliError> {
    let text = read(path)?;
    let file_err = |line: usize, msg: String| CliError::File {
        path: path.to_owned(),
        line,
        message: msg,
    };
    let mut perm = vec![None; dim];
    for (line, content) in data_lines(&text) {
        let nums: Vec<usize> = content
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| file_err(line, format!("invalid index `{t}`")))
            })
            .collect::<Result<_, _>>()?;
        let [src, dst] = nums[..] else {
            return Err(file_err(line, "expected `src dst`".into()));
        };
        let slot = perm
            .get_mut(src)
            .ok_or_else(|| file_err(line, format!("source {src} outside 0..{dim}")))?;
        if slot.replace(dst).is_some() {
            return Err(file_err(line, format!("source {src} mapped twice")));
        }
    }
    perm.into_iter()
        .enumerate()
        .map(|(src, dst)| dst.ok_or_else(|| file_err(0, format!("source {src} has no image"))))
        .collect()
}

/// Reads `dim²` row-major `re im` pairs.
pub fn load_unitary(path: &Path, dim: usize) -> Result<SquareMatrix, CliError> {
    let amps = load_complex_list(path)?;
    if amps.len() != dim * dim {
        return Err(CliError::File {
            path: path.to_owned(),
            line: 0,
            message: format!("expected {} entries, found {}", dim * dim, amps.len()),
        });
    }
    SquareMatrix::from_entries(dim, amps).map_err(CliError::Sim)
}

/// Reads one `re im` pair per line.
pub fn load_complex_list(path: &Path) -> Result<Vec<Complex>, CliError> {
    let text = read(path)?;
    data_lines(&text)
        .map(|(line, content)| {
            let err = |message: String| CliError::File {
                path: path.to_owned(),
                line,
                message,
            };
            let nums: Vec<f64> = content
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| err(format!("invalid number `{t}`"))))
                .collect::<Result<_, _>>()?;
            match nums[..] {
                [re, im] => Ok(Complex::new(re, im)),
                _ => Err(err("expected `re im`".into())),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const BELL: &str = "registers 2 2          # wire dimensions, left = high-order\n\
                        stage h 1 | id 1\n\
                        stage cnot\n";

    #[test]
    fn bell_document() {
        let (doc, circuit) = parse_circuit(BELL, Path::new(".")).unwrap();
        assert_eq!(doc.register_dims, vec![2, 2]);
        assert_eq!(doc.stages.len(), 2);
        assert_eq!(
            doc.stages[0].gates,
            vec![GateSpec::Hadamard(1), GateSpec::Identity(1)]
        );
        assert_eq!(circuit.stages().len(), 2);
        assert_eq!(circuit.stages()[1].gates()[0], Gate::cnot());
    }

    #[test]
    fn overlong_stage_is_a_validation_error() {
        let err = parse_circuit("registers 2 2\nstage h 3\n", Path::new(".")).unwrap_err();
        assert!(matches!(err, CliError::Validation { line: 2, .. }), "{err}");
        let err = parse_circuit("registers 2 2\nstage h 1 | id 2\n", Path::new(".")).unwrap_err();
        assert!(matches!(err, CliError::Validation { line: 2, .. }), "{err}");
        let err = parse_circuit("registers 2 2\n\nstage h 1\n", Path::new(".")).unwrap_err();
        assert!(matches!(err, CliError::Validation { line: 3, .. }), "{err}");
    }

    #[test]
    fn qft_on_six_dimensional_wire() {
        let (_, circuit) = parse_circuit("registers 6\nstage qft 6\n", Path::new(".")).unwrap();
        assert_eq!(circuit.stages()[0].gates()[0], Gate::qft(6));
        assert!(circuit.validate().is_ok());
    }

    #[test]
    fn mixed_radix_identity_spans_register_dims() {
        let (_, circuit) = parse_circuit(
            "registers 4 4 5\nstage qft 4 | qft 4 | id 1\n",
            Path::new("."),
        )
        .unwrap();
        assert_eq!(circuit.stages()[0].gates()[2].wire_dims(), &[5]);
        let (_, circuit) = parse_circuit("registers 2 3 2\nstage id 3\n", Path::new(".")).unwrap();
        let dims: Vec<usize> = circuit.stages()[0]
            .gates()
            .iter()
            .map(|g| g.dim())
            .collect();
        assert_eq!(dims, vec![2, 3, 2]);
    }

    #[test]
    fn gates_must_match_their_wires() {
        for text in [
            "registers 3\nstage h 1\n",
            "registers 2 2\nstage qft 3 | id 1\n",
            "registers 2\nstage h 40\n",
            "registers 2 3\nstage cnot\n",
        ] {
            let err = parse_circuit(text, Path::new(".")).unwrap_err();
            assert!(
                matches!(err, CliError::Validation { line: 2, .. }),
                "{text:?}: {err}"
            );
        }
        let err =
            CircuitDocument::parse("registers 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2 2\n")
                .unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 1, .. }));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let cases = [
            ("registers 2\nstage toffoli 3\n", 2),
            ("stage h 1\n", 1),
            ("registers 2 x\n", 1),
            ("registers 2\nstage h\n", 2),
            ("registers 2\nstage h 1 |\n", 2),
            ("registers 2\nregisters 2\n", 2),
            ("registers 2\nstage h 0\n", 2),
            ("registers 1\n", 1),
            ("registers 2\n\n# c\nfoo\n", 4),
            ("registers 2\nstage cnot 2\n", 2),
        ];
        for (text, want) in cases {
            match CircuitDocument::parse(text) {
                Err(CliError::Parse { line, .. }) => assert_eq!(line, want, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(CircuitDocument::parse("# nothing\n").is_err());
    }

    #[test]
    fn serialization_round_trip() {
        let doc = CircuitDocument::parse(BELL).unwrap();
        let again = CircuitDocument::parse(&doc.to_text()).unwrap();
        assert_eq!(again.register_dims, doc.register_dims);
        assert_eq!(
            again.stages.iter().map(|s| &s.gates).collect::<Vec<_>>(),
            doc.stages.iter().map(|s| &s.gates).collect::<Vec<_>>()
        );
        assert_eq!(
            again.build(Path::new(".")).unwrap(),
            doc.build(Path::new(".")).unwrap()
        );
    }
}
