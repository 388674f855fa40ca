//! Structural meta-operations on terms: inversion and exponentiation.

use thiserror::Error;

use crate::ast::{path_to_string, TermExpr, TreePath};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum MetaOpError {
    /// Exponentiation is only defined for terms with no `;` on the unitary
    /// spine. The path points at the offending `Seq` node.
    #[error("cannot exponentiate: `;` at {}", path_to_string(.path))]
    CompositionPresent { path: TreePath },
    #[error("exponent {0} is not finite")]
    NonFiniteExponent(f64),
}

/// Structural dagger of a well-typed term. Total, and preserves the type.
pub fn invert(t: &TermExpr) -> TermExpr {
    match t {
        TermExpr::Phase(theta) => TermExpr::Phase(theta.negated()),
        TermExpr::Identity(n) => TermExpr::Identity(*n),
        TermExpr::Seq(a, b) => TermExpr::seq(invert(b), invert(a)),
        TermExpr::Tensor(a, b) => TermExpr::tensor(invert(a), invert(b)),
        TermExpr::IfLet(p, s) => TermExpr::IfLet(p.clone(), Box::new(invert(s))),
        TermExpr::Ref(name) => TermExpr::Ref(name.clone()),
    }
}

/// Structural exponentiation `t^alpha` of a composition-free term.
///
/// "Composition-free" means no `Seq` on the unitary spine; sequences inside a
/// pattern's embedded unitary are fine, since exponentiation never rewrites
/// patterns. `alpha = -1` coincides with [`invert`] on such terms.
pub fn exponentiate(t: &TermExpr, alpha: f64) -> Result<TermExpr, MetaOpError> {
    if !alpha.is_finite() {
        return Err(MetaOpError::NonFiniteExponent(alpha));
    }
    let mut path = Vec::new();
    exp_rec(t, alpha, &mut path)
}

fn exp_rec(t: &TermExpr, alpha: f64, path: &mut TreePath) -> Result<TermExpr, MetaOpError> {
    match t {
        TermExpr::Phase(theta) => Ok(TermExpr::Phase(theta.scaled(alpha))),
        TermExpr::Identity(n) => Ok(TermExpr::Identity(*n)),
        TermExpr::Seq(_, _) => Err(MetaOpError::CompositionPresent { path: path.clone() }),
        TermExpr::Tensor(a, b) => {
            path.push(0);
            let ea = exp_rec(a, alpha, path)?;
            path.pop();
            path.push(1);
            let eb = exp_rec(b, alpha, path)?;
            path.pop();
            Ok(TermExpr::tensor(ea, eb))
        }
        TermExpr::IfLet(p, s) => {
            path.push(1);
            let es = exp_rec(s, alpha, path)?;
            path.pop();
            Ok(TermExpr::IfLet(p.clone(), Box::new(es)))
        }
        TermExpr::Ref(name) => Ok(TermExpr::Ref(name.clone())),
    }
}
