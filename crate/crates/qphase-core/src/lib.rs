//! A compiler, dense-matrix simulator and verification toolkit for a minimal
//! quantum language built from a global phase gate and a quantum `if let`.
//!
//! Pipeline: [`parser`] reads `.qph` sources and elaborates them to core
//! terms, [`typecheck`] assigns arities, [`metaops`] provides structural
//! inversion and exponentiation, [`eval`] normalizes terms to lists of
//! multi-controlled-phase clauses, [`circuit`] renders and simulates those
//! clause lists, and [`semantics`] is the dense-matrix denotational oracle
//! everything is checked against. [`algorithms`] builds terms for Grover
//! search, Trotterized evolution, the Fourier transform, quantum signal
//! processing and the quantum eigenvalue transform.

pub mod algorithms;
pub mod ast;
pub mod circuit;
pub mod eval;
pub mod gates;
pub mod metaops;
pub mod parser;
pub mod semantics;
pub mod typecheck;

pub use ast::{Angle, PatternExpr, PatternType, TermExpr, UnitaryType};
pub use circuit::{
    circuit_matrix, clauses_to_circuit, read_circuit, write_circuit, Circuit, Gate, Polarity,
};
pub use eval::{fuse_clauses, normalize, EvalContext, NormalClause, SimplePattern, SimpleSlot};
pub use metaops::{exponentiate, invert};
pub use parser::{elaborate, elaborate_with_prelude, parse_file, prelude, pretty, SourceFile};
pub use semantics::{
    matrix_of_clauses, max_abs_diff, ortho_complement, sem_pattern, sem_term, ComplexMatrix,
};
pub use typecheck::{type_of_pattern, type_of_term, TypeError};
