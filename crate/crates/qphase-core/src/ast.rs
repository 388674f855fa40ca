//! Abstract syntax shared by every other module: angles, unitary terms and
//! patterns, and their types.

use std::f64::consts::PI;
use std::fmt;

use thiserror::Error;

/// A rotation angle in radians.
///
/// Angles are stored as double-precision radians rather than symbolically:
/// the algorithm builders need `acos` and arbitrary reals, so a rational-pi
/// representation cannot be closed under the operations we support. Exact
/// constructors for rational multiples of pi are provided for the common
/// cases.
///
/// Equality and hashing are bit-exact on the underlying `f64`.
#[derive(Clone, Copy, Debug)]
pub struct Angle {
    radians: f64,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AngleError {
    #[error("angle is not finite")]
    NotFinite,
    #[error("pi-fraction denominator must be positive, got {0}")]
    NonPositiveDenominator(i64),
}

impl Angle {
    pub const ZERO: Angle = Angle { radians: 0.0 };
    pub const PI: Angle = Angle { radians: PI };

    /// Construct from raw radians. Fails on NaN or infinite input.
    pub fn from_radians(radians: f64) -> Result<Angle, AngleError> {
        if radians.is_finite() {
            Ok(Angle { radians })
        } else {
            Err(AngleError::NotFinite)
        }
    }

    /// `pi * num / den`, exact at double precision.
    pub fn from_pi_fraction(num: i64, den: i64) -> Result<Angle, AngleError> {
        if den <= 0 {
            return Err(AngleError::NonPositiveDenominator(den));
        }
        Ok(Angle {
            radians: PI * num as f64 / den as f64,
        })
    }

    pub fn radians(self) -> f64 {
        self.radians
    }

    pub fn negated(self) -> Angle {
        Angle {
            radians: -self.radians,
        }
    }

    /// Scale by a finite factor. Panics if the result overflows.
    pub fn scaled(self, factor: f64) -> Angle {
        let radians = self.radians * factor;
        assert!(
            radians.is_finite(),
            "angle overflow: {} * {factor}",
            self.radians
        );
        Angle { radians }
    }

    pub fn plus(self, other: Angle) -> Angle {
        Angle {
            radians: self.radians + other.radians,
        }
    }

    /// True when the angle is a multiple of 2*pi within `tol`.
    pub fn is_zero_mod_two_pi(self, tol: f64) -> bool {
        let r = self.radians.rem_euclid(2.0 * PI);
        r.abs() < tol || (2.0 * PI - r).abs() < tol
    }
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        self.radians.to_bits() == other.radians.to_bits()
    }
}

impl Eq for Angle {}

impl std::hash::Hash for Angle {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.radians.to_bits().hash(state);
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.radians)
    }
}

/// Path into a term or pattern tree as a list of child indices.
///
/// Conventions: binary nodes index their children 0 and 1; `IfLet` indexes
/// its pattern as 0 and its body as 1; `Unitary` indexes its term as 0.
pub type TreePath = Vec<usize>;

/// Render a tree path as `[0.1.0]`; the empty path is the root `[]`.
pub fn path_to_string(path: &[usize]) -> String {
    let inner = path
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(".");
    format!("[{inner}]")
}

/// A unitary term. Equality is structural, with angles compared bit-exactly.
///
/// `Ref` names a definition and only appears before elaboration; every other
/// operation in this crate expects elaborated (ref-free) trees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermExpr {
    /// Global phase `ph(theta)`, a 0-qubit unitary.
    Phase(Angle),
    /// Identity on `n` qubits.
    Identity(usize),
    /// Sequential composition: first, then second.
    Seq(Box<TermExpr>, Box<TermExpr>),
    /// Parallel (tensor) composition.
    Tensor(Box<TermExpr>, Box<TermExpr>),
    /// Apply the body on the subspace selected by the pattern, identity on
    /// its orthocomplement.
    IfLet(PatternExpr, Box<TermExpr>),
    /// Named reference, resolved away by elaboration.
    Ref(String),
}

/// A pattern, denoting an isometry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PatternExpr {
    Ket0,
    Ket1,
    KetPlus,
    KetMinus,
    /// Every unitary is a pattern.
    Unitary(Box<TermExpr>),
    /// Composition in function order: `Compose(p, q)` applies `q` first.
    Compose(Box<PatternExpr>, Box<PatternExpr>),
    Tensor(Box<PatternExpr>, Box<PatternExpr>),
}

impl TermExpr {
    pub fn phase(theta: Angle) -> TermExpr {
        TermExpr::Phase(theta)
    }

    pub fn identity(n: usize) -> TermExpr {
        TermExpr::Identity(n)
    }

    pub fn seq(first: TermExpr, second: TermExpr) -> TermExpr {
        TermExpr::Seq(Box::new(first), Box::new(second))
    }

    pub fn tensor(left: TermExpr, right: TermExpr) -> TermExpr {
        TermExpr::Tensor(Box::new(left), Box::new(right))
    }

    pub fn if_let(pattern: PatternExpr, body: TermExpr) -> TermExpr {
        TermExpr::IfLet(pattern, Box::new(body))
    }

    /// Left-associated sequential composition of one or more terms.
    pub fn seq_all<I: IntoIterator<Item = TermExpr>>(terms: I) -> Option<TermExpr> {
        terms.into_iter().reduce(TermExpr::seq)
    }

    /// Left-associated tensor of one or more terms.
    pub fn tensor_all<I: IntoIterator<Item = TermExpr>>(terms: I) -> Option<TermExpr> {
        terms.into_iter().reduce(TermExpr::tensor)
    }

    /// True when the tree contains no `Ref` node.
    pub fn is_elaborated(&self) -> bool {
        self.validate().is_ok()
    }

    /// Walk the tree checking the constructor invariants that are not
    /// enforced by the type system: no unresolved references remain.
    pub fn validate(&self) -> Result<(), ValidateError> {
        let mut path = Vec::new();
        validate_term(self, &mut path)
    }
}

impl PatternExpr {
    pub fn unitary(term: TermExpr) -> PatternExpr {
        PatternExpr::Unitary(Box::new(term))
    }

    pub fn compose(outer: PatternExpr, inner: PatternExpr) -> PatternExpr {
        PatternExpr::Compose(Box::new(outer), Box::new(inner))
    }

    pub fn tensor(left: PatternExpr, right: PatternExpr) -> PatternExpr {
        PatternExpr::Tensor(Box::new(left), Box::new(right))
    }

    /// Left-associated tensor of one or more patterns.
    pub fn tensor_all<I: IntoIterator<Item = PatternExpr>>(ps: I) -> Option<PatternExpr> {
        ps.into_iter().reduce(PatternExpr::tensor)
    }

    pub fn validate(&self) -> Result<(), ValidateError> {
        let mut path = Vec::new();
        validate_pattern(self, &mut path)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidateError {
    #[error("unresolved reference `{name}` at {}", path_to_string(path))]
    UnresolvedRef { name: String, path: TreePath },
}

fn validate_term(t: &TermExpr, path: &mut TreePath) -> Result<(), ValidateError> {
    match t {
        TermExpr::Phase(_) | TermExpr::Identity(_) => Ok(()),
        TermExpr::Seq(a, b) | TermExpr::Tensor(a, b) => {
            path.push(0);
            validate_term(a, path)?;
            path.pop();
            path.push(1);
            validate_term(b, path)?;
            path.pop();
            Ok(())
        }
        TermExpr::IfLet(p, s) => {
            path.push(0);
            validate_pattern(p, path)?;
            path.pop();
            path.push(1);
            validate_term(s, path)?;
            path.pop();
            Ok(())
        }
        TermExpr::Ref(name) => Err(ValidateError::UnresolvedRef {
            name: name.clone(),
            path: path.clone(),
        }),
    }
}

fn validate_pattern(p: &PatternExpr, path: &mut TreePath) -> Result<(), ValidateError> {
    match p {
        PatternExpr::Ket0 | PatternExpr::Ket1 | PatternExpr::KetPlus | PatternExpr::KetMinus => {
            Ok(())
        }
        PatternExpr::Unitary(t) => {
            path.push(0);
            validate_term(t, path)?;
            path.pop();
            Ok(())
        }
        PatternExpr::Compose(a, b) | PatternExpr::Tensor(a, b) => {
            path.push(0);
            validate_pattern(a, path)?;
            path.pop();
            path.push(1);
            validate_pattern(b, path)?;
            path.pop();
            Ok(())
        }
    }
}

/// The type of a term: a unitary on `qubits` qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitaryType {
    pub qubits: usize,
}

/// The type of a pattern: an isometry from `input` qubits to `output` qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PatternType {
    pub input: usize,
    pub output: usize,
}

impl fmt::Display for UnitaryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unitary {}", self.qubits)
    }
}

impl fmt::Display for PatternType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pattern {} {}", self.input, self.output)
    }
}
