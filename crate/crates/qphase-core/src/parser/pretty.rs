//! Pretty-printer for elaborated terms. Output parses back to a structurally
//! equal tree: operator precedence and associativity decide parentheses, and
//! angles print either as exact pi-fractions or as shortest round-tripping
//! decimals.

use crate::ast::{Angle, PatternExpr, TermExpr};

/// Render an elaborated term in the source grammar.
pub fn pretty(t: &TermExpr) -> String {
    let mut out = String::new();
    term(t, Prec::Seq, &mut out);
    out
}

/// Render a pattern in the source grammar.
pub fn pretty_pattern(p: &PatternExpr) -> String {
    let mut out = String::new();
    pattern(p, PatPrec::Tensor, &mut out);
    out
}

/// Term-level contexts, loosest to tightest.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Prec {
    Seq,
    Tensor,
    Atom,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum PatPrec {
    Tensor,
    Compose,
    Atom,
}

fn term(t: &TermExpr, min: Prec, out: &mut String) {
    match t {
        TermExpr::Phase(theta) => {
            out.push_str("ph(");
            out.push_str(&angle(*theta));
            out.push(')');
        }
        TermExpr::Identity(n) => {
            out.push_str("id(");
            out.push_str(&n.to_string());
            out.push(')');
        }
        TermExpr::Seq(a, b) => {
            let parens = min > Prec::Seq;
            if parens {
                out.push('(');
            }
            term(a, Prec::Seq, out);
            out.push_str("; ");
            term(b, Prec::Tensor, out);
            if parens {
                out.push(')');
            }
        }
        TermExpr::Tensor(a, b) => {
            let parens = min > Prec::Tensor;
            if parens {
                out.push('(');
            }
            term(a, Prec::Tensor, out);
            out.push_str(" x ");
            term(b, Prec::Atom, out);
            if parens {
                out.push(')');
            }
        }
        TermExpr::IfLet(p, s) => {
            out.push_str("if ");
            pattern(p, PatPrec::Tensor, out);
            out.push_str(" { ");
            term(s, Prec::Seq, out);
            out.push_str(" }");
        }
        TermExpr::Ref(name) => out.push_str(name),
    }
}

fn pattern(p: &PatternExpr, min: PatPrec, out: &mut String) {
    match p {
        PatternExpr::Ket0 => out.push_str("|0>"),
        PatternExpr::Ket1 => out.push_str("|1>"),
        PatternExpr::KetPlus => out.push_str("|+>"),
        PatternExpr::KetMinus => out.push_str("|->"),
        PatternExpr::Tensor(a, b) => {
            let parens = min > PatPrec::Tensor;
            if parens {
                out.push('(');
            }
            pattern(a, PatPrec::Tensor, out);
            out.push_str(" x ");
            pattern(b, PatPrec::Compose, out);
            if parens {
                out.push(')');
            }
        }
        PatternExpr::Compose(a, b) => {
            let parens = min > PatPrec::Compose;
            if parens {
                out.push('(');
            }
            pattern(a, PatPrec::Compose, out);
            out.push_str(" . ");
            pattern(b, PatPrec::Atom, out);
            if parens {
                out.push(')');
            }
        }
        PatternExpr::Unitary(t) => match &**t {
            // sequences are legal inside a parenthesized pattern group;
            // everything else unitary prints as a term atom
            TermExpr::Seq(_, _) => {
                out.push('(');
                term(t, Prec::Seq, out);
                out.push(')');
            }
            // not reachable from elaborated trees (canonicalized away), but
            // print something parseable rather than panic
            TermExpr::Tensor(_, _) => {
                out.push('(');
                term(t, Prec::Seq, out);
                out.push(')');
            }
            _ => term(t, Prec::Atom, out),
        },
    }
}

/// Shortest faithful rendering of an angle: an exact pi-fraction when one
/// reproduces the identical bits, otherwise the shortest round-tripping
/// decimal.
fn angle(theta: Angle) -> String {
    let radians = theta.radians();
    for den in 1..=64i64 {
        let num = (radians * den as f64 / std::f64::consts::PI).round();
        if !num.is_finite() || num.abs() > 1e15 {
            continue;
        }
        let num = num as i64;
        if Angle::from_pi_fraction(num, den) == Ok(theta) {
            return render_fraction(num, den);
        }
    }
    format!("{radians:?}")
}

fn render_fraction(num: i64, den: i64) -> String {
    let sign = if num < 0 { "-" } else { "" };
    let mag = num.unsigned_abs();
    match (mag, den) {
        (0, _) => "0".to_string(),
        (1, 1) => format!("{sign}pi"),
        (1, d) => format!("{sign}pi/{d}"),
        (m, 1) => format!("{sign}{m}*pi"),
        (m, d) => format!("{sign}{m}*pi/{d}"),
    }
}
