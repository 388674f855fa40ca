//! Programmatic constructors for the standard gates.
//!
//! These mirror the bundled prelude source definitions one-to-one; a test in
//! the parser module keeps the two in sync.

use crate::ast::{Angle, PatternExpr, TermExpr};
use crate::metaops::exponentiate;

/// X := if |-> { ph(pi) }
pub fn x() -> TermExpr {
    TermExpr::if_let(PatternExpr::KetMinus, TermExpr::Phase(Angle::PI))
}

/// Z := if |1> { ph(pi) }
pub fn z() -> TermExpr {
    TermExpr::if_let(PatternExpr::Ket1, TermExpr::Phase(Angle::PI))
}

/// S := Z^(1/2)
pub fn s() -> TermExpr {
    exponentiate(&z(), 0.5).expect("Z is composition-free")
}

/// T := S^(1/2)
pub fn t() -> TermExpr {
    exponentiate(&s(), 0.5).expect("S is composition-free")
}

/// V := X^(1/2)
pub fn v() -> TermExpr {
    exponentiate(&x(), 0.5).expect("X is composition-free")
}

/// Y := if S . |-> { ph(pi) }
pub fn y() -> TermExpr {
    TermExpr::if_let(
        PatternExpr::compose(PatternExpr::unitary(s()), PatternExpr::KetMinus),
        TermExpr::Phase(Angle::PI),
    )
}

/// H := if Y^(1/4) . |1> { ph(pi) }
pub fn h() -> TermExpr {
    let y_quarter = exponentiate(&y(), 0.25).expect("Y is composition-free");
    TermExpr::if_let(
        PatternExpr::compose(PatternExpr::unitary(y_quarter), PatternExpr::Ket1),
        TermExpr::Phase(Angle::PI),
    )
}

/// CX := if |1> x |-> { ph(pi) }
pub fn cx() -> TermExpr {
    TermExpr::if_let(
        PatternExpr::tensor(PatternExpr::Ket1, PatternExpr::KetMinus),
        TermExpr::Phase(Angle::PI),
    )
}

/// CZ := if |1> x |1> { ph(pi) }
pub fn cz() -> TermExpr {
    TermExpr::if_let(
        PatternExpr::tensor(PatternExpr::Ket1, PatternExpr::Ket1),
        TermExpr::Phase(Angle::PI),
    )
}

/// XC := if |-> x |1> { ph(pi) } (controlled not, control on the second qubit)
pub fn xc() -> TermExpr {
    TermExpr::if_let(
        PatternExpr::tensor(PatternExpr::KetMinus, PatternExpr::Ket1),
        TermExpr::Phase(Angle::PI),
    )
}

/// SWAP := if CX { XC }
pub fn swap() -> TermExpr {
    TermExpr::if_let(PatternExpr::unitary(cx()), xc())
}

/// CCX := if |1> x id(2) { CX }
pub fn ccx() -> TermExpr {
    TermExpr::if_let(
        PatternExpr::tensor(
            PatternExpr::Ket1,
            PatternExpr::unitary(TermExpr::identity(2)),
        ),
        cx(),
    )
}
