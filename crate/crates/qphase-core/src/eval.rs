//! Normalization of well-typed terms to lists of normal clauses.
//!
//! A normal clause `if q { ph(theta) x id(k) }` with `q` a simple pattern is
//! the atomic unit of compiled output; a term compiles to the sequential
//! composition of its clause list. Normalization is a single structural pass,
//! linear in the size of the output.
//!
//! Arity assertions in this module stay enabled in release builds: they never
//! fire on well-typed input, so a firing assertion signals a compiler bug.

use std::fmt;

use thiserror::Error;

use crate::ast::{Angle, PatternExpr, TermExpr};
use crate::typecheck::{type_of_term, TypeError};

/// One tensor slot of a simple pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SimpleSlot {
    Id,
    Zero,
    One,
    Plus,
    Minus,
}

impl SimpleSlot {
    pub fn is_id(self) -> bool {
        matches!(self, SimpleSlot::Id)
    }

    fn to_pattern(self) -> PatternExpr {
        match self {
            SimpleSlot::Id => PatternExpr::unitary(TermExpr::identity(1)),
            SimpleSlot::Zero => PatternExpr::Ket0,
            SimpleSlot::One => PatternExpr::Ket1,
            SimpleSlot::Plus => PatternExpr::KetPlus,
            SimpleSlot::Minus => PatternExpr::KetMinus,
        }
    }
}

impl fmt::Display for SimpleSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SimpleSlot::Id => "id",
            SimpleSlot::Zero => "|0>",
            SimpleSlot::One => "|1>",
            SimpleSlot::Plus => "|+>",
            SimpleSlot::Minus => "|->",
        };
        write!(f, "{s}")
    }
}

/// A tensor of slots; a pattern `j -> n` where `n` is the slot count and `j`
/// the number of `Id` slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplePattern {
    slots: Vec<SimpleSlot>,
}

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("substitution index {index} out of range: pattern has {id_count} id slots")]
pub struct SubstituteError {
    pub index: usize,
    pub id_count: usize,
}

impl SimplePattern {
    pub fn new(slots: Vec<SimpleSlot>) -> SimplePattern {
        SimplePattern { slots }
    }

    /// The all-`Id` pattern on `n` qubits.
    pub fn identity(n: usize) -> SimplePattern {
        SimplePattern {
            slots: vec![SimpleSlot::Id; n],
        }
    }

    pub fn slots(&self) -> &[SimpleSlot] {
        &self.slots
    }

    /// Output arity: the number of qubits the pattern spans.
    pub fn qubits(&self) -> usize {
        self.slots.len()
    }

    /// Input arity: the number of `Id` slots.
    pub fn id_count(&self) -> usize {
        self.slots.iter().filter(|s| s.is_id()).count()
    }

    /// Replace the `index`-th `Id` slot (zero-based, left to right) with a
    /// ket slot.
    pub fn substitute(
        &self,
        slot: SimpleSlot,
        index: usize,
    ) -> Result<SimplePattern, SubstituteError> {
        assert!(!slot.is_id(), "substitute target must be a ket slot");
        let mut seen = 0;
        let mut out = self.clone();
        for s in out.slots.iter_mut() {
            if s.is_id() {
                if seen == index {
                    *s = slot;
                    return Ok(out);
                }
                seen += 1;
            }
        }
        Err(SubstituteError {
            index,
            id_count: seen,
        })
    }

    /// The pattern expression this simple pattern abbreviates.
    pub fn to_pattern(&self) -> PatternExpr {
        PatternExpr::tensor_all(self.slots.iter().map(|s| s.to_pattern()))
            .unwrap_or_else(|| PatternExpr::unitary(TermExpr::identity(0)))
    }
}

impl fmt::Display for SimplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slots.is_empty() {
            return write!(f, "id(0)");
        }
        let parts: Vec<String> = self.slots.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// `if selector { ph(theta) x id(k) }` with `k` the selector's id-slot count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalClause {
    pub selector: SimplePattern,
    pub theta: Angle,
}

impl NormalClause {
    pub fn new(selector: SimplePattern, theta: Angle) -> NormalClause {
        NormalClause { selector, theta }
    }

    /// Clause inversion keeps the selector and negates the angle.
    pub fn inverted(&self) -> NormalClause {
        NormalClause {
            selector: self.selector.clone(),
            theta: self.theta.negated(),
        }
    }

    /// The term this clause denotes.
    pub fn to_term(&self) -> TermExpr {
        let body = TermExpr::tensor(
            TermExpr::Phase(self.theta),
            TermExpr::identity(self.selector.id_count()),
        );
        TermExpr::if_let(self.selector.to_pattern(), body)
    }
}

/// Evaluation context `(q, l, r) : k -> n`: the enclosing simple selector
/// plus the identity whiskering on either side of the subject term.
#[derive(Clone, Debug)]
pub struct EvalContext {
    q: SimplePattern,
    l: usize,
    r: usize,
    k: usize,
}

impl EvalContext {
    pub fn new(q: SimplePattern, l: usize, r: usize, k: usize) -> EvalContext {
        assert_eq!(
            l + k + r,
            q.id_count(),
            "evaluation context out of balance: l={l} k={k} r={r} vs {} id slots",
            q.id_count()
        );
        EvalContext { q, l, r, k }
    }

    /// The root context for normalizing a closed term on `n` qubits.
    pub fn root(n: usize) -> EvalContext {
        EvalContext::new(SimplePattern::identity(n), 0, 0, n)
    }

    pub fn selector(&self) -> &SimplePattern {
        &self.q
    }
}

fn term_arity(t: &TermExpr) -> usize {
    match t {
        TermExpr::Phase(_) => 0,
        TermExpr::Identity(n) => *n,
        TermExpr::Seq(a, _) => term_arity(a),
        TermExpr::Tensor(a, b) => term_arity(a) + term_arity(b),
        TermExpr::IfLet(p, _) => pattern_arity(p).1,
        TermExpr::Ref(_) => unreachable!("arity of unelaborated term"),
    }
}

/// (input, output) arity of a well-typed pattern.
fn pattern_arity(p: &PatternExpr) -> (usize, usize) {
    match p {
        PatternExpr::Ket0 | PatternExpr::Ket1 | PatternExpr::KetPlus | PatternExpr::KetMinus => {
            (0, 1)
        }
        PatternExpr::Unitary(t) => {
            let n = term_arity(t);
            (n, n)
        }
        PatternExpr::Compose(outer, inner) => {
            let (j, _) = pattern_arity(inner);
            let (_, m) = pattern_arity(outer);
            (j, m)
        }
        PatternExpr::Tensor(a, b) => {
            let (ja, ma) = pattern_arity(a);
            let (jb, mb) = pattern_arity(b);
            (ja + jb, ma + mb)
        }
    }
}

fn inverted(clauses: &[NormalClause]) -> Vec<NormalClause> {
    clauses.iter().rev().map(NormalClause::inverted).collect()
}

/// Evaluate a term of arity `ctx.k` to its clause list.
pub fn eval_term(ctx: &EvalContext, s: &TermExpr) -> Vec<NormalClause> {
    match s {
        TermExpr::Phase(theta) => {
            assert_eq!(ctx.k, 0, "phase under a context of arity {}", ctx.k);
            vec![NormalClause::new(ctx.q.clone(), *theta)]
        }
        TermExpr::Seq(a, b) => {
            let mut c = eval_term(ctx, a);
            c.extend(eval_term(ctx, b));
            c
        }
        TermExpr::Tensor(a, b) => {
            let k1 = term_arity(a);
            let k2 = term_arity(b);
            assert_eq!(k1 + k2, ctx.k);
            let left_ctx = EvalContext::new(ctx.q.clone(), ctx.l, ctx.r + k2, k1);
            let mut c = eval_term(&left_ctx, a);
            let right_ctx = EvalContext::new(ctx.q.clone(), ctx.l + k1, ctx.r, k2);
            c.extend(eval_term(&right_ctx, b));
            c
        }
        TermExpr::Identity(n) => {
            assert_eq!(*n, ctx.k);
            Vec::new()
        }
        TermExpr::IfLet(p, body) => {
            let (j, m) = pattern_arity(p);
            assert_eq!(m, ctx.k);
            let (c, q_inner) = eval_pattern(ctx, p);
            let body_ctx = EvalContext::new(q_inner, ctx.l, ctx.r, j);
            let c_body = eval_term(&body_ctx, body);
            let mut out = inverted(&c);
            out.extend(c_body);
            out.extend(c);
            out
        }
        TermExpr::Ref(_) => unreachable!("evaluating unelaborated term"),
    }
}

/// Evaluate a pattern of output arity `ctx.k`, producing the conjugating
/// clause list and the updated simple selector.
pub fn eval_pattern(ctx: &EvalContext, p: &PatternExpr) -> (Vec<NormalClause>, SimplePattern) {
    match p {
        PatternExpr::Ket0 => ket_case(ctx, SimpleSlot::Zero),
        PatternExpr::Ket1 => ket_case(ctx, SimpleSlot::One),
        PatternExpr::KetPlus => ket_case(ctx, SimpleSlot::Plus),
        PatternExpr::KetMinus => ket_case(ctx, SimpleSlot::Minus),
        PatternExpr::Unitary(t) => (eval_term(ctx, t), ctx.q.clone()),
        PatternExpr::Compose(outer, inner) => {
            let (j_outer, m) = pattern_arity(outer);
            assert_eq!(m, ctx.k);
            let (c, q1) = eval_pattern(ctx, outer);
            let inner_ctx = EvalContext::new(q1, ctx.l, ctx.r, j_outer);
            let (c_inner, q2) = eval_pattern(&inner_ctx, inner);
            let mut out = c_inner;
            out.extend(c);
            (out, q2)
        }
        PatternExpr::Tensor(a, b) => {
            let (j1, k1) = pattern_arity(a);
            let (_, k2) = pattern_arity(b);
            assert_eq!(k1 + k2, ctx.k);
            let left_ctx = EvalContext::new(ctx.q.clone(), ctx.l, ctx.r + k2, k1);
            let (c, q1) = eval_pattern(&left_ctx, a);
            let right_ctx = EvalContext::new(q1, ctx.l + j1, ctx.r, k2);
            let (c2, q2) = eval_pattern(&right_ctx, b);
            let mut out = c2;
            out.extend(c);
            (out, q2)
        }
    }
}

fn ket_case(ctx: &EvalContext, slot: SimpleSlot) -> (Vec<NormalClause>, SimplePattern) {
    assert_eq!(ctx.k, 1, "ket under a context of arity {}", ctx.k);
    let q = ctx
        .q
        .substitute(slot, ctx.l)
        .expect("context invariant guarantees the id slot exists");
    (Vec::new(), q)
}

/// Normalize a term: type check, then evaluate in the root context. The
/// empty clause list denotes `id(n)`.
pub fn normalize(t: &TermExpr) -> Result<Vec<NormalClause>, TypeError> {
    let ty = type_of_term(t)?;
    let ctx = EvalContext::root(ty.qubits);
    Ok(eval_term(&ctx, t))
}

/// Merge adjacent clauses with identical selectors by summing angles and
/// drop clauses whose angle is a multiple of 2*pi (tolerance 1e-12).
/// Cancellation is cascaded, so newly adjacent equal selectors fuse too.
pub fn fuse_clauses(clauses: &[NormalClause]) -> Vec<NormalClause> {
    const TOL: f64 = 1e-12;
    if let Some(first) = clauses.first() {
        let n = first.selector.qubits();
        assert!(
            clauses.iter().all(|c| c.selector.qubits() == n),
            "fuse_clauses requires a uniform register width"
        );
    }
    let mut out: Vec<NormalClause> = Vec::with_capacity(clauses.len());
    for c in clauses {
        let mut merged = c.clone();
        if let Some(top) = out.last() {
            if top.selector == merged.selector {
                merged.theta = top.theta.plus(merged.theta);
                out.pop();
            }
        }
        if !merged.theta.is_zero_mod_two_pi(TOL) {
            out.push(merged);
        }
    }
    out
}

/// The composed normal term of a clause list, `id(n)` when empty.
pub fn clauses_to_term(clauses: &[NormalClause], n: usize) -> TermExpr {
    TermExpr::seq_all(clauses.iter().map(NormalClause::to_term))
        .unwrap_or_else(|| TermExpr::identity(n))
}
