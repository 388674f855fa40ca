//! Type checking for terms and patterns.
//!
//! Types are fully determined by structure: a term is `unitary n` for exactly
//! one `n` or it is ill-typed, and likewise for patterns. Everything
//! downstream (meta-operations, normalization, semantics) assumes its input
//! has been checked here.

use thiserror::Error;

use crate::ast::{path_to_string, PatternExpr, PatternType, TermExpr, TreePath, UnitaryType};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TypeErrorKind {
    /// The two sides of `;` act on different numbers of qubits.
    SeqArityMismatch,
    /// An `if` body does not match the input arity of its pattern.
    IfLetBodyMismatch,
    /// Pattern composition where the inner output does not meet the outer
    /// input.
    ComposeArityMismatch,
    /// A `Ref` node survived to type checking.
    UnresolvedRef,
}

/// A single-location type error with enough data for a one-line diagnostic.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{}", self.render())]
pub struct TypeError {
    pub kind: TypeErrorKind,
    /// Path into the checked tree (child indices).
    pub path: TreePath,
    pub expected: usize,
    pub found: usize,
}

impl TypeError {
    fn render(&self) -> String {
        let at = path_to_string(&self.path);
        match self.kind {
            TypeErrorKind::SeqArityMismatch => format!(
                "type error at {at}: `;` joins unitary {} with unitary {}",
                self.expected, self.found
            ),
            TypeErrorKind::IfLetBodyMismatch => format!(
                "type error at {at}: `if` body is unitary {} but the pattern selects unitary {}",
                self.found, self.expected
            ),
            TypeErrorKind::ComposeArityMismatch => format!(
                "type error at {at}: pattern composition expects inner output {} but found {}",
                self.expected, self.found
            ),
            TypeErrorKind::UnresolvedRef => {
                format!("type error at {at}: unresolved reference")
            }
        }
    }
}

/// The unique `n` with `|- t : unitary n`, or a type error.
pub fn type_of_term(t: &TermExpr) -> Result<UnitaryType, TypeError> {
    let mut path = Vec::new();
    check_term(t, &mut path)
}

/// The unique `(j, m)` with `|- p : pattern j m`, or a type error.
pub fn type_of_pattern(p: &PatternExpr) -> Result<PatternType, TypeError> {
    let mut path = Vec::new();
    check_pattern(p, &mut path)
}

fn check_term(t: &TermExpr, path: &mut TreePath) -> Result<UnitaryType, TypeError> {
    match t {
        TermExpr::Phase(_) => Ok(UnitaryType { qubits: 0 }),
        TermExpr::Identity(n) => Ok(UnitaryType { qubits: *n }),
        TermExpr::Seq(a, b) => {
            path.push(0);
            let ta = check_term(a, path)?;
            path.pop();
            path.push(1);
            let tb = check_term(b, path)?;
            path.pop();
            if ta.qubits != tb.qubits {
                return Err(TypeError {
                    kind: TypeErrorKind::SeqArityMismatch,
                    path: path.clone(),
                    expected: ta.qubits,
                    found: tb.qubits,
                });
            }
            Ok(ta)
        }
        TermExpr::Tensor(a, b) => {
            path.push(0);
            let ta = check_term(a, path)?;
            path.pop();
            path.push(1);
            let tb = check_term(b, path)?;
            path.pop();
            Ok(UnitaryType {
                qubits: ta.qubits + tb.qubits,
            })
        }
        TermExpr::IfLet(p, s) => {
            path.push(0);
            let tp = check_pattern(p, path)?;
            path.pop();
            path.push(1);
            let ts = check_term(s, path)?;
            path.pop();
            if ts.qubits != tp.input {
                return Err(TypeError {
                    kind: TypeErrorKind::IfLetBodyMismatch,
                    path: path.clone(),
                    expected: tp.input,
                    found: ts.qubits,
                });
            }
            Ok(UnitaryType { qubits: tp.output })
        }
        TermExpr::Ref(_) => Err(TypeError {
            kind: TypeErrorKind::UnresolvedRef,
            path: path.clone(),
            expected: 0,
            found: 0,
        }),
    }
}

fn check_pattern(p: &PatternExpr, path: &mut TreePath) -> Result<PatternType, TypeError> {
    match p {
        PatternExpr::Ket0 | PatternExpr::Ket1 | PatternExpr::KetPlus | PatternExpr::KetMinus => {
            Ok(PatternType {
                input: 0,
                output: 1,
            })
        }
        PatternExpr::Unitary(t) => {
            path.push(0);
            let tt = check_term(t, path)?;
            path.pop();
            Ok(PatternType {
                input: tt.qubits,
                output: tt.qubits,
            })
        }
        PatternExpr::Compose(outer, inner) => {
            path.push(0);
            let to = check_pattern(outer, path)?;
            path.pop();
            path.push(1);
            let ti = check_pattern(inner, path)?;
            path.pop();
            if ti.output != to.input {
                return Err(TypeError {
                    kind: TypeErrorKind::ComposeArityMismatch,
                    path: path.clone(),
                    expected: to.input,
                    found: ti.output,
                });
            }
            Ok(PatternType {
                input: ti.input,
                output: to.output,
            })
        }
        PatternExpr::Tensor(a, b) => {
            path.push(0);
            let ta = check_pattern(a, path)?;
            path.pop();
            path.push(1);
            let tb = check_pattern(b, path)?;
            path.pop();
            Ok(PatternType {
                input: ta.input + tb.input,
                output: ta.output + tb.output,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::Angle;
    use crate::gates;

    fn ph_pi() -> TermExpr {
        TermExpr::Phase(Angle::PI)
    }

    #[test]
    fn x_gate_is_unitary_one() {
        let x = TermExpr::if_let(PatternExpr::KetMinus, ph_pi());
        assert_eq!(type_of_term(&x), Ok(UnitaryType { qubits: 1 }));
    }

    #[test]
    fn identity_type() {
        assert_eq!(
            type_of_term(&TermExpr::identity(7)),
            Ok(UnitaryType { qubits: 7 })
        );
    }

    #[test]
    fn ghz_entangler_is_unitary_five() {
        // if |1> x id(4) { X x X x X x X }
        let body = TermExpr::tensor_all(std::iter::repeat_with(gates::x).take(4)).unwrap();
        let pattern = PatternExpr::tensor(
            PatternExpr::Ket1,
            PatternExpr::unitary(TermExpr::identity(4)),
        );
        let t = TermExpr::if_let(pattern, body);
        assert_eq!(type_of_term(&t), Ok(UnitaryType { qubits: 5 }));
    }

    #[test]
    fn pattern_types() {
        let s_minus = PatternExpr::compose(PatternExpr::unitary(gates::s()), PatternExpr::KetMinus);
        assert_eq!(
            type_of_pattern(&s_minus),
            Ok(PatternType {
                input: 0,
                output: 1
            })
        );
        let one_one = PatternExpr::tensor(PatternExpr::Ket1, PatternExpr::Ket1);
        assert_eq!(
            type_of_pattern(&one_one),
            Ok(PatternType {
                input: 0,
                output: 2
            })
        );
    }

    #[test]
    fn compose_arity_clash() {
        let bad = PatternExpr::compose(PatternExpr::Ket0, PatternExpr::Ket0);
        let err = type_of_pattern(&bad).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::ComposeArityMismatch);
        assert_eq!((err.expected, err.found), (0, 1));
    }

    #[test]
    fn seq_arity_clash_reports_path() {
        let bad = TermExpr::seq(ph_pi(), TermExpr::identity(1));
        let err = type_of_term(&bad).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::SeqArityMismatch);
        assert_eq!((err.expected, err.found), (0, 1));
        let nested = TermExpr::tensor(TermExpr::identity(2), bad);
        let err = type_of_term(&nested).unwrap_err();
        assert_eq!(err.path, vec![1]);
    }

    #[test]
    fn iflet_body_clash() {
        let bad = TermExpr::if_let(PatternExpr::Ket1, TermExpr::identity(1));
        let err = type_of_term(&bad).unwrap_err();
        assert_eq!(err.kind, TypeErrorKind::IfLetBodyMismatch);
        assert_eq!((err.expected, err.found), (0, 1));
    }

    #[test]
    fn determinism() {
        let t = gates::swap();
        assert_eq!(type_of_term(&t), type_of_term(&t));
    }
}
