//! Circuits over {Hadamard, multi-controlled phase}: rendering of normal
//! clause lists, a dense simulator, and a line-oriented text format.

use std::fmt::Write as _;

use num_complex::Complex64;
use thiserror::Error;

use crate::ast::Angle;
use crate::eval::{NormalClause, SimpleSlot};
use crate::semantics::{ComplexMatrix, SemError, DEFAULT_SIM_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Polarity {
    One,
    Zero,
}

/// A multi-controlled phase carries no target: it is a diagonal gate,
/// symmetric in its controls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    Hadamard {
        qubit: usize,
    },
    MultiControlledPhase {
        theta: Angle,
        controls: Vec<(usize, Polarity)>,
    },
    GlobalPhase {
        theta: Angle,
    },
}

/// Gate list applied first-to-last on a fixed-width register.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    pub qubits: usize,
    pub gates: Vec<Gate>,
}

/// Render clauses as a circuit. Per clause: plus/minus slots are conjugated
/// by Hadamards (prefix ascending, suffix descending), zero/one and
/// plus/minus slots become zero/one controls, id slots are untouched. A
/// clause with no controls becomes a global phase.
pub fn clauses_to_circuit(clauses: &[NormalClause], n: usize) -> Circuit {
    let mut gates = Vec::new();
    for clause in clauses {
        assert_eq!(
            clause.selector.qubits(),
            n,
            "clause selector spans {} qubits, expected {n}",
            clause.selector.qubits()
        );
        let mut hadamards = Vec::new();
        let mut controls = Vec::new();
        for (qubit, slot) in clause.selector.slots().iter().enumerate() {
            match slot {
                SimpleSlot::Id => {}
                SimpleSlot::Zero => controls.push((qubit, Polarity::Zero)),
                SimpleSlot::One => controls.push((qubit, Polarity::One)),
                SimpleSlot::Plus => {
                    hadamards.push(qubit);
                    controls.push((qubit, Polarity::Zero));
                }
                SimpleSlot::Minus => {
                    hadamards.push(qubit);
                    controls.push((qubit, Polarity::One));
                }
            }
        }
        for &q in &hadamards {
            gates.push(Gate::Hadamard { qubit: q });
        }
        if controls.is_empty() {
            gates.push(Gate::GlobalPhase {
                theta: clause.theta,
            });
        } else {
            gates.push(Gate::MultiControlledPhase {
                theta: clause.theta,
                controls,
            });
        }
        for &q in hadamards.iter().rev() {
            gates.push(Gate::Hadamard { qubit: q });
        }
    }
    Circuit { qubits: n, gates }
}

/// Dense matrix of a circuit under the shared qubit-ordering convention
/// (qubit 0 = most significant bit). Multi-controlled phases scale matching
/// basis states by exactly `e^{i theta}`.
pub fn circuit_matrix(circuit: &Circuit) -> Result<ComplexMatrix, SemError> {
    circuit_matrix_capped(circuit, DEFAULT_SIM_CAP)
}

pub fn circuit_matrix_capped(circuit: &Circuit, cap: usize) -> Result<ComplexMatrix, SemError> {
    let n = circuit.qubits;
    if n > cap {
        return Err(SemError::CapExceeded { qubits: n, cap });
    }
    let dim = 1usize << n;
    let mut m = ComplexMatrix::identity(dim);
    let bit = |index: usize, qubit: usize| (index >> (n - 1 - qubit)) & 1;
    for gate in &circuit.gates {
        match gate {
            Gate::GlobalPhase { theta } => {
                m = m.scaled(Complex64::cis(theta.radians()));
            }
            Gate::MultiControlledPhase { theta, controls } => {
                let factor = Complex64::cis(theta.radians());
                for row in 0..dim {
                    let hit = controls.iter().all(|(q, pol)| {
                        let b = bit(row, *q);
                        match pol {
                            Polarity::One => b == 1,
                            Polarity::Zero => b == 0,
                        }
                    });
                    if hit {
                        for col in 0..dim {
                            m.set(row, col, m.get(row, col) * factor);
                        }
                    }
                }
            }
            Gate::Hadamard { qubit } => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                let mask = 1usize << (n - 1 - qubit);
                for row in 0..dim {
                    if row & mask != 0 {
                        continue;
                    }
                    let paired = row | mask;
                    for col in 0..dim {
                        let a = m.get(row, col);
                        let b = m.get(paired, col);
                        m.set(row, col, (a + b).scale(h));
                        m.set(paired, col, (a - b).scale(h));
                    }
                }
            }
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct CircuitParseError {
    pub line: usize,
    pub message: String,
}

fn parse_err(line: usize, message: impl Into<String>) -> CircuitParseError {
    CircuitParseError {
        line,
        message: message.into(),
    }
}

/// Serialize to the circuit text format. Angles are printed with 17
/// significant digits so that reading the output reproduces the circuit
/// bit-exactly.
pub fn write_circuit(circuit: &Circuit) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "qubits {}", circuit.qubits);
    for gate in &circuit.gates {
        match gate {
            Gate::Hadamard { qubit } => {
                let _ = writeln!(out, "h {qubit}");
            }
            Gate::MultiControlledPhase { theta, controls } => {
                let mut line = format!("mcp {}", format_sig17(theta.radians()));
                for (q, pol) in controls {
                    let sign = match pol {
                        Polarity::One => '+',
                        Polarity::Zero => '-',
                    };
                    let _ = write!(line, " {sign}{q}");
                }
                let _ = writeln!(out, "{line}");
            }
            Gate::GlobalPhase { theta } => {
                let _ = writeln!(out, "gp {}", format_sig17(theta.radians()));
            }
        }
    }
    out
}

/// 17 significant digits in positional notation.
fn format_sig17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (16 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Parse the circuit text format. The header line is required, unknown lines
/// are errors, and the file must end with a newline.
pub fn read_circuit(text: &str) -> Result<Circuit, CircuitParseError> {
    if !text.ends_with('\n') {
        let last = text.lines().count().max(1);
        return Err(parse_err(last, "missing trailing newline"));
    }
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty circuit file"))?;
    let qubits = match header.strip_prefix("qubits ") {
        Some(rest) => rest
            .trim()
            .parse::<usize>()
            .map_err(|_| parse_err(line_no, format!("bad qubit count `{rest}`")))?,
        None => return Err(parse_err(line_no, "expected `qubits <n>` header")),
    };
    let mut gates = Vec::new();
    for (line_no, line) in lines {
        let mut fields = line.split_whitespace();
        let op = fields
            .next()
            .ok_or_else(|| parse_err(line_no, "blank line"))?;
        match op {
            "h" => {
                let q = parse_qubit(fields.next(), qubits, line_no)?;
                if fields.next().is_some() {
                    return Err(parse_err(line_no, "trailing fields after `h <q>`"));
                }
                gates.push(Gate::Hadamard { qubit: q });
            }
            "gp" => {
                let theta = parse_theta(fields.next(), line_no)?;
                if fields.next().is_some() {
                    return Err(parse_err(line_no, "trailing fields after `gp <theta>`"));
                }
                gates.push(Gate::GlobalPhase { theta });
            }
            "mcp" => {
                let theta = parse_theta(fields.next(), line_no)?;
                let mut controls = Vec::new();
                for field in fields {
                    let (pol, digits) = match field.split_at(1) {
                        ("+", rest) => (Polarity::One, rest),
                        ("-", rest) => (Polarity::Zero, rest),
                        _ => {
                            return Err(parse_err(
                                line_no,
                                format!("control `{field}` must start with + or -"),
                            ))
                        }
                    };
                    let q = parse_qubit(Some(digits), qubits, line_no)?;
                    if controls.iter().any(|(existing, _)| *existing == q) {
                        return Err(parse_err(line_no, format!("duplicate control qubit {q}")));
                    }
                    controls.push((q, pol));
                }
                if controls.is_empty() {
                    return Err(parse_err(line_no, "mcp requires at least one control"));
                }
                gates.push(Gate::MultiControlledPhase { theta, controls });
            }
            other => {
                return Err(parse_err(line_no, format!("unknown gate `{other}`")));
            }
        }
    }
    Ok(Circuit { qubits, gates })
}

fn parse_qubit(
    field: Option<&str>,
    qubits: usize,
    line: usize,
) -> Result<usize, CircuitParseError> {
    let text = field.ok_or_else(|| parse_err(line, "missing qubit index"))?;
    let q = text
        .parse::<usize>()
        .map_err(|_| parse_err(line, format!("bad qubit index `{text}`")))?;
    if q >= qubits {
        return Err(parse_err(
            line,
            format!("qubit {q} out of range for {qubits}-qubit circuit"),
        ));
    }
    Ok(q)
}

fn parse_theta(field: Option<&str>, line: usize) -> Result<Angle, CircuitParseError> {
    let text = field.ok_or_else(|| parse_err(line, "missing angle"))?;
    let value = text
        .parse::<f64>()
        .map_err(|_| parse_err(line, format!("bad angle `{text}`")))?;
    Angle::from_radians(value).map_err(|_| parse_err(line, format!("angle `{text}` not finite")))
}
