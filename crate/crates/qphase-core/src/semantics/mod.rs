//! Denotational semantics in the concrete finite-dimensional Hilbert model;
//! the ground truth every transformation is verified against.
//!
//! Qubit-ordering convention, fixed once for the whole crate: qubit 0 is the
//! leftmost tensor factor and the most significant bit of a basis-state
//! index, and `Tensor(a, b)` denotes `kron(sem(a), sem(b))`.

mod matrix;

pub use matrix::{expm, max_abs_diff, ComplexMatrix};

use num_complex::Complex64;
use thiserror::Error;

use crate::ast::{PatternExpr, TermExpr};
use crate::eval::NormalClause;
use crate::typecheck::{type_of_pattern, type_of_term, TypeError};

/// Largest register the dense simulator will touch by default.
pub const DEFAULT_SIM_CAP: usize = 12;

#[derive(Clone, Debug, Error, PartialEq)]
pub enum SemError {
    #[error(transparent)]
    IllTyped(#[from] TypeError),
    #[error("register of {qubits} qubits exceeds the simulation cap of {cap}")]
    CapExceeded { qubits: usize, cap: usize },
}

fn check_cap(qubits: usize, cap: usize) -> Result<(), SemError> {
    if qubits > cap {
        Err(SemError::CapExceeded { qubits, cap })
    } else {
        Ok(())
    }
}

/// Denotation of a well-typed term: a `2^n` by `2^n` unitary.
pub fn sem_term(t: &TermExpr) -> Result<ComplexMatrix, SemError> {
    sem_term_capped(t, DEFAULT_SIM_CAP)
}

pub fn sem_term_capped(t: &TermExpr, cap: usize) -> Result<ComplexMatrix, SemError> {
    let ty = type_of_term(t)?;
    check_cap(ty.qubits, cap)?;
    Ok(term_rec(t))
}

/// Denotation of a well-typed pattern: a `2^m` by `2^j` isometry.
pub fn sem_pattern(p: &PatternExpr) -> Result<ComplexMatrix, SemError> {
    sem_pattern_capped(p, DEFAULT_SIM_CAP)
}

pub fn sem_pattern_capped(p: &PatternExpr, cap: usize) -> Result<ComplexMatrix, SemError> {
    let ty = type_of_pattern(p)?;
    check_cap(ty.output, cap)?;
    Ok(pattern_rec(p))
}

fn term_rec(t: &TermExpr) -> ComplexMatrix {
    match t {
        TermExpr::Phase(theta) => ComplexMatrix::column(&[Complex64::cis(theta.radians())]),
        TermExpr::Identity(n) => ComplexMatrix::identity(1 << n),
        TermExpr::Seq(a, b) => term_rec(b).mul(&term_rec(a)),
        TermExpr::Tensor(a, b) => term_rec(a).kron(&term_rec(b)),
        TermExpr::IfLet(p, s) => {
            let iota = pattern_rec(p);
            let u = term_rec(s);
            mediating(&iota, &u)
        }
        TermExpr::Ref(_) => unreachable!("semantics of unelaborated term"),
    }
}

/// The unique unitary acting as `iota U iota^dag` on the image of `iota` and
/// as the identity on its orthocomplement.
fn mediating(iota: &ComplexMatrix, u: &ComplexMatrix) -> ComplexMatrix {
    let dim = iota.rows();
    let projector = iota.mul(&iota.dagger());
    let conjugated = iota.mul(u).mul(&iota.dagger());
    conjugated.add(&ComplexMatrix::identity(dim).sub(&projector))
}

fn pattern_rec(p: &PatternExpr) -> ComplexMatrix {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    match p {
        PatternExpr::Ket0 => ComplexMatrix::column(&[Complex64::ONE, Complex64::ZERO]),
        PatternExpr::Ket1 => ComplexMatrix::column(&[Complex64::ZERO, Complex64::ONE]),
        PatternExpr::KetPlus => {
            ComplexMatrix::column(&[Complex64::new(h, 0.0), Complex64::new(h, 0.0)])
        }
        PatternExpr::KetMinus => {
            ComplexMatrix::column(&[Complex64::new(h, 0.0), Complex64::new(-h, 0.0)])
        }
        PatternExpr::Unitary(t) => term_rec(t),
        PatternExpr::Compose(outer, inner) => pattern_rec(outer).mul(&pattern_rec(inner)),
        PatternExpr::Tensor(a, b) => pattern_rec(a).kron(&pattern_rec(b)),
    }
}

/// An isometry whose columns span the orthogonal complement of the pattern's
/// image: `P^dag P_perp = 0` and `[P | P_perp]` is unitary. The column basis
/// is one valid choice among many; only those two properties are canonical.
pub fn ortho_complement(p: &PatternExpr) -> Result<ComplexMatrix, SemError> {
    ortho_complement_capped(p, DEFAULT_SIM_CAP)
}

pub fn ortho_complement_capped(p: &PatternExpr, cap: usize) -> Result<ComplexMatrix, SemError> {
    let ty = type_of_pattern(p)?;
    check_cap(ty.output, cap)?;
    Ok(ortho_rec(p))
}

fn ortho_rec(p: &PatternExpr) -> ComplexMatrix {
    match p {
        PatternExpr::Ket0 => pattern_rec(&PatternExpr::Ket1),
        PatternExpr::Ket1 => pattern_rec(&PatternExpr::Ket0),
        PatternExpr::KetPlus => pattern_rec(&PatternExpr::KetMinus),
        PatternExpr::KetMinus => pattern_rec(&PatternExpr::KetPlus),
        PatternExpr::Unitary(t) => {
            let u = term_rec(t);
            ComplexMatrix::zeros(u.rows(), 0)
        }
        PatternExpr::Compose(outer, inner) => {
            // [P . Q_perp, P_perp]
            let p_mat = pattern_rec(outer);
            let q_perp = ortho_rec(inner);
            let p_perp = ortho_rec(outer);
            ComplexMatrix::hstack(&[&p_mat.mul(&q_perp), &p_perp])
        }
        PatternExpr::Tensor(a, b) => {
            // [P_perp x Q, P x Q_perp, P_perp x Q_perp]
            let p_mat = pattern_rec(a);
            let q_mat = pattern_rec(b);
            let p_perp = ortho_rec(a);
            let q_perp = ortho_rec(b);
            ComplexMatrix::hstack(&[
                &p_perp.kron(&q_mat),
                &p_mat.kron(&q_perp),
                &p_perp.kron(&q_perp),
            ])
        }
    }
}

/// Matrix of a clause list over `n` qubits: the product
/// `sem(c_N) ... sem(c_1)` of the denoted terms, `I` when empty.
pub fn matrix_of_clauses(clauses: &[NormalClause], n: usize) -> Result<ComplexMatrix, SemError> {
    check_cap(n, DEFAULT_SIM_CAP)?;
    let mut acc = ComplexMatrix::identity(1 << n);
    for c in clauses {
        assert_eq!(
            c.selector.qubits(),
            n,
            "clause selector spans {} qubits, expected {n}",
            c.selector.qubits()
        );
        acc = sem_term(&c.to_term())?.mul(&acc);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::Angle;
    use crate::eval::normalize;
    use crate::gates;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn x_matrix() {
        let x = sem_term(&gates::x()).unwrap();
        let expected =
            ComplexMatrix::from_rows(&[&[c(0.0, 0.0), c(1.0, 0.0)], &[c(1.0, 0.0), c(0.0, 0.0)]]);
        assert!(max_abs_diff(&x, &expected) < 1e-12);
    }

    #[test]
    fn v_matrix() {
        let v = sem_term(&gates::v()).unwrap();
        let expected =
            ComplexMatrix::from_rows(&[&[c(0.5, 0.5), c(0.5, -0.5)], &[c(0.5, -0.5), c(0.5, 0.5)]]);
        assert!(max_abs_diff(&v, &expected) < 1e-12);
    }

    #[test]
    fn cx_matrix() {
        let cx = sem_term(&gates::cx()).unwrap();
        let expected = ComplexMatrix::from_rows(&[
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        ]);
        assert!(max_abs_diff(&cx, &expected) < 1e-12);
    }

    #[test]
    fn ket_columns() {
        let minus = sem_pattern(&PatternExpr::KetMinus).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(max_abs_diff(&minus, &ComplexMatrix::column(&[c(h, 0.0), c(-h, 0.0)])) < 1e-15);

        // S . |-> = (1/sqrt 2, -i/sqrt 2)
        let p = PatternExpr::compose(PatternExpr::unitary(gates::s()), PatternExpr::KetMinus);
        let col = sem_pattern(&p).unwrap();
        assert!(max_abs_diff(&col, &ComplexMatrix::column(&[c(h, 0.0), c(0.0, -h)])) < 1e-12);

        let p00 = PatternExpr::tensor(PatternExpr::Ket0, PatternExpr::Ket0);
        let col = sem_pattern(&p00).unwrap();
        assert!(
            max_abs_diff(
                &col,
                &ComplexMatrix::column(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            ) < 1e-15
        );
    }

    #[test]
    fn ortho_examples() {
        let k0_perp = ortho_complement(&PatternExpr::Ket0).unwrap();
        assert!(
            max_abs_diff(
                &k0_perp,
                &ComplexMatrix::column(&[c(0.0, 0.0), c(1.0, 0.0)])
            ) < 1e-15
        );

        let u_perp = ortho_complement(&PatternExpr::unitary(gates::x())).unwrap();
        assert_eq!((u_perp.rows(), u_perp.cols()), (2, 0));

        let p = PatternExpr::tensor(PatternExpr::Ket1, PatternExpr::Ket1);
        let perp = ortho_complement(&p).unwrap();
        assert_eq!((perp.rows(), perp.cols()), (4, 3));
        let iota = sem_pattern(&p).unwrap();
        assert!(iota.dagger().mul(&perp).max_abs() < 1e-10);
        assert!(ComplexMatrix::hstack(&[&iota, &perp]).is_unitary(1e-10));
    }

    #[test]
    fn clause_list_matrices() {
        let id = matrix_of_clauses(&[], 2).unwrap();
        assert!(max_abs_diff(&id, &ComplexMatrix::identity(4)) < 1e-15);

        let z_clauses = normalize(&gates::z()).unwrap();
        let z = matrix_of_clauses(&z_clauses, 1).unwrap();
        assert!(max_abs_diff(&z, &sem_term(&gates::z()).unwrap()) < 1e-12);

        let swap_clauses = normalize(&gates::swap()).unwrap();
        let m = matrix_of_clauses(&swap_clauses, 2).unwrap();
        let expected = ComplexMatrix::from_rows(&[
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            &[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ]);
        assert!(max_abs_diff(&m, &expected) < 1e-10);
    }

    #[test]
    fn zero_qubit_phase() {
        let m = sem_term(&TermExpr::Phase(Angle::from_pi_fraction(1, 2).unwrap())).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert!((m.get(0, 0) - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn cap_enforced() {
        let err = sem_term_capped(&TermExpr::identity(13), 12).unwrap_err();
        assert_eq!(
            err,
            SemError::CapExceeded {
                qubits: 13,
                cap: 12
            }
        );
    }

    #[test]
    fn ill_typed_rejected() {
        let bad = TermExpr::seq(TermExpr::Phase(Angle::PI), TermExpr::identity(1));
        assert!(matches!(sem_term(&bad), Err(SemError::IllTyped(_))));
    }

    #[test]
    fn prelude_gates_unitary() {
        for t in [
            gates::x(),
            gates::y(),
            gates::z(),
            gates::h(),
            gates::s(),
            gates::t(),
            gates::v(),
            gates::cx(),
            gates::cz(),
            gates::xc(),
            gates::swap(),
            gates::ccx(),
        ] {
            assert!(sem_term(&t).unwrap().is_unitary(1e-10));
        }
    }
}
