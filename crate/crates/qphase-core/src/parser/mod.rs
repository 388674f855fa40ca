//! Concrete syntax: lexer, parser, elaboration and pretty-printer for `.qph`
//! source files, plus the bundled gate prelude.
//!
//! Elaboration resolves names by inlining, desugars `^` and `inv(..)` through
//! the meta-operations, and canonicalizes tensor-shaped unitary patterns to
//! pattern tensors (the two are indistinguishable in the grammar and have
//! identical types and semantics). Pretty-printed elaborated terms parse back
//! to structurally equal trees.

mod grammar;
mod lexer;
mod pretty;

pub use lexer::Span;
pub use pretty::{pretty, pretty_pattern};

use std::collections::HashMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::ast::{Angle, PatternExpr, TermExpr};
use crate::metaops::{exponentiate, invert, MetaOpError};

/// Term syntax as parsed, before name resolution and desugaring.
#[derive(Clone, Debug, PartialEq)]
pub enum SurfaceTerm {
    Phase(Angle),
    Identity(usize),
    Seq(Box<SurfaceTerm>, Box<SurfaceTerm>),
    Tensor(Box<SurfaceTerm>, Box<SurfaceTerm>),
    IfLet(SurfacePattern, Box<SurfaceTerm>),
    Ref(String, Span),
    Pow(Box<SurfaceTerm>, f64),
    Inv(Box<SurfaceTerm>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum SurfacePattern {
    Ket0,
    Ket1,
    KetPlus,
    KetMinus,
    Unitary(Box<SurfaceTerm>),
    Compose(Box<SurfacePattern>, Box<SurfacePattern>),
    Tensor(Box<SurfacePattern>, Box<SurfacePattern>),
}

/// A parsed source file: ordered definitions and a main term, with `Ref`
/// nodes still unresolved.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceFile {
    pub defs: Vec<Definition>,
    pub main: SurfaceTerm,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Definition {
    pub name: String,
    pub body: SurfaceTerm,
    pub(crate) name_span: Span,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("{line}:{col}: unrecognized input `{offending}`")]
    Lex {
        line: usize,
        col: usize,
        offending: String,
    },
    #[error("{line}:{col}: found {found}, expected {expected}")]
    Unexpected {
        line: usize,
        col: usize,
        found: String,
        expected: String,
    },
    #[error("{line}:{col}: duplicate definition `{name}`")]
    DuplicateDef {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("{line}:{col}: bad number `{text}`")]
    BadNumber {
        line: usize,
        col: usize,
        text: String,
    },
    #[error("{line}:{col}: angle is not finite")]
    NonFiniteAngle { line: usize, col: usize },
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ElabError {
    #[error("{line}:{col}: unknown name `{name}`")]
    Unresolved {
        line: usize,
        col: usize,
        name: String,
    },
    #[error("in `^`: {0}")]
    Exponent(MetaOpError),
}

/// Parse a `.qph` source file.
pub fn parse_file(text: &str) -> Result<SourceFile, ParseError> {
    grammar::parse_file_impl(text)
}

/// Parse a pattern written in the source grammar (used by external files
/// that carry patterns as strings).
pub fn parse_pattern_text(text: &str) -> Result<SurfacePattern, ParseError> {
    grammar::parse_pattern_impl(text)
}

const PRELUDE_SOURCE: &str = include_str!("prelude.qph");

/// The bundled prelude defining the standard gates.
pub fn prelude() -> &'static SourceFile {
    static PRELUDE: OnceLock<SourceFile> = OnceLock::new();
    PRELUDE.get_or_init(|| parse_file(PRELUDE_SOURCE).expect("prelude parses"))
}

/// Elaborate a file against a prelude: every definition (prelude first, then
/// the file's, in order) is resolved and inlined, `t ^ r` becomes
/// `exponentiate(t, r)` and `inv(t)` becomes `invert(t)`. The result is a
/// `Ref`-free core term. File definitions may shadow prelude names.
pub fn elaborate(file: &SourceFile, prelude: &SourceFile) -> Result<TermExpr, ElabError> {
    let mut env = HashMap::new();
    for def in prelude.defs.iter().chain(&file.defs) {
        let body = elab_term(&def.body, &env)?;
        env.insert(def.name.clone(), body);
    }
    elab_term(&file.main, &env)
}

/// Elaborate a file against the bundled prelude.
pub fn elaborate_with_prelude(file: &SourceFile) -> Result<TermExpr, ElabError> {
    elaborate(file, prelude())
}

/// Elaborate a standalone pattern against the bundled prelude.
pub fn elaborate_pattern_with_prelude(pattern: &SurfacePattern) -> Result<PatternExpr, ElabError> {
    let mut env = HashMap::new();
    for def in &prelude().defs {
        let body = elab_term(&def.body, &env)?;
        env.insert(def.name.clone(), body);
    }
    elab_pattern(pattern, &env)
}

fn elab_term(t: &SurfaceTerm, env: &HashMap<String, TermExpr>) -> Result<TermExpr, ElabError> {
    match t {
        SurfaceTerm::Phase(theta) => Ok(TermExpr::Phase(*theta)),
        SurfaceTerm::Identity(n) => Ok(TermExpr::Identity(*n)),
        SurfaceTerm::Seq(a, b) => Ok(TermExpr::seq(elab_term(a, env)?, elab_term(b, env)?)),
        SurfaceTerm::Tensor(a, b) => Ok(TermExpr::tensor(elab_term(a, env)?, elab_term(b, env)?)),
        SurfaceTerm::IfLet(p, s) => Ok(TermExpr::if_let(elab_pattern(p, env)?, elab_term(s, env)?)),
        SurfaceTerm::Ref(name, span) => {
            env.get(name).cloned().ok_or_else(|| ElabError::Unresolved {
                line: span.line,
                col: span.col,
                name: name.clone(),
            })
        }
        SurfaceTerm::Pow(inner, alpha) => {
            let body = elab_term(inner, env)?;
            exponentiate(&body, *alpha).map_err(ElabError::Exponent)
        }
        SurfaceTerm::Inv(inner) => Ok(invert(&elab_term(inner, env)?)),
    }
}

fn elab_pattern(
    p: &SurfacePattern,
    env: &HashMap<String, TermExpr>,
) -> Result<PatternExpr, ElabError> {
    match p {
        SurfacePattern::Ket0 => Ok(PatternExpr::Ket0),
        SurfacePattern::Ket1 => Ok(PatternExpr::Ket1),
        SurfacePattern::KetPlus => Ok(PatternExpr::KetPlus),
        SurfacePattern::KetMinus => Ok(PatternExpr::KetMinus),
        SurfacePattern::Unitary(t) => Ok(canonical_unitary_pattern(elab_term(t, env)?)),
        SurfacePattern::Compose(outer, inner) => Ok(PatternExpr::compose(
            elab_pattern(outer, env)?,
            elab_pattern(inner, env)?,
        )),
        SurfacePattern::Tensor(a, b) => Ok(PatternExpr::tensor(
            elab_pattern(a, env)?,
            elab_pattern(b, env)?,
        )),
    }
}

/// Tensor-shaped unitary patterns are canonicalized to pattern tensors: the
/// surface grammar cannot tell `p x q` from the unitary `s x t` used as a
/// pattern, and the two have identical types and denotations.
fn canonical_unitary_pattern(t: TermExpr) -> PatternExpr {
    match t {
        TermExpr::Tensor(a, b) => {
            PatternExpr::tensor(canonical_unitary_pattern(*a), canonical_unitary_pattern(*b))
        }
        other => PatternExpr::unitary(other),
    }
}
