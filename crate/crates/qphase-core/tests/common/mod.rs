//! Shared test support: a deterministic splitmix64 generator and random
//! well-typed term/pattern builders used by the fuzz-style suites.

#![allow(dead_code)]

use qphase_core::ast::{Angle, PatternExpr, TermExpr};
use qphase_core::gates;

/// Deterministic splitmix64; fixed seeds keep every suite reproducible.
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }

    pub fn real(&mut self, lo: f64, hi: f64) -> f64 {
        let unit = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lo + unit * (hi - lo)
    }
}

pub fn random_angle(rng: &mut Rng) -> Angle {
    if rng.below(2) == 0 {
        let num = rng.below(17) as i64 - 8;
        let den = [1, 2, 3, 4, 6, 8][rng.below(6)];
        Angle::from_pi_fraction(num, den).unwrap()
    } else {
        Angle::from_radians(rng.real(-2.0 * std::f64::consts::PI, 2.0 * std::f64::consts::PI))
            .unwrap()
    }
}

fn prelude_gate(rng: &mut Rng, n: usize) -> Option<TermExpr> {
    match n {
        1 => Some(
            [
                gates::x(),
                gates::z(),
                gates::s(),
                gates::t(),
                gates::v(),
                gates::y(),
                gates::h(),
            ][rng.below(7)]
            .clone(),
        ),
        2 => Some([gates::cx(), gates::cz(), gates::xc(), gates::swap()][rng.below(4)].clone()),
        3 => Some(gates::ccx()),
        _ => None,
    }
}

fn base_pattern(rng: &mut Rng, m: usize) -> (PatternExpr, usize) {
    if m == 0 {
        return (PatternExpr::unitary(TermExpr::identity(0)), 0);
    }
    let mut parts = Vec::with_capacity(m);
    let mut inputs = 0;
    for _ in 0..m {
        match rng.below(5) {
            0 => {
                parts.push(PatternExpr::unitary(TermExpr::identity(1)));
                inputs += 1;
            }
            1 => parts.push(PatternExpr::Ket0),
            2 => parts.push(PatternExpr::Ket1),
            3 => parts.push(PatternExpr::KetPlus),
            _ => parts.push(PatternExpr::KetMinus),
        }
    }
    (PatternExpr::tensor_all(parts).unwrap(), inputs)
}

/// Random well-typed pattern with output arity `m`; returns the input arity.
/// Output trees are canonical (no tensor-shaped unitary patterns), matching
/// what elaboration produces.
pub fn random_pattern(rng: &mut Rng, m: usize, depth: usize) -> (PatternExpr, usize) {
    if depth == 0 {
        return base_pattern(rng, m);
    }
    match rng.below(6) {
        0 => {
            let term = random_term(rng, m, depth - 1);
            (canonical_unitary(term), m)
        }
        1 => {
            // composition: outer (mid -> m), inner (j -> mid)
            let (outer, mid) = random_pattern(rng, m, depth - 1);
            let (inner, j) = random_pattern(rng, mid, depth - 1);
            (PatternExpr::compose(outer, inner), j)
        }
        2 if m >= 2 => {
            let left = 1 + rng.below(m - 1);
            let (a, ja) = random_pattern(rng, left, depth - 1);
            let (b, jb) = random_pattern(rng, m - left, depth - 1);
            (PatternExpr::tensor(a, b), ja + jb)
        }
        3 if m == 1 => (
            [
                PatternExpr::Ket0,
                PatternExpr::Ket1,
                PatternExpr::KetPlus,
                PatternExpr::KetMinus,
            ][rng.below(4)]
            .clone(),
            0,
        ),
        _ => base_pattern(rng, m),
    }
}

fn canonical_unitary(t: TermExpr) -> PatternExpr {
    match t {
        TermExpr::Tensor(a, b) => PatternExpr::tensor(canonical_unitary(*a), canonical_unitary(*b)),
        other => PatternExpr::unitary(other),
    }
}

fn base_term(rng: &mut Rng, n: usize) -> TermExpr {
    if n == 0 {
        return TermExpr::Phase(random_angle(rng));
    }
    if rng.below(3) == 0 {
        return TermExpr::identity(n);
    }
    // a tensor row of single-qubit gates keeps leaves interesting
    TermExpr::tensor_all((0..n).map(|_| prelude_gate(rng, 1).unwrap())).unwrap()
}

/// Random well-typed term of arity `n`, canonical in the sense above.
pub fn random_term(rng: &mut Rng, n: usize, depth: usize) -> TermExpr {
    if depth == 0 {
        return base_term(rng, n);
    }
    match rng.below(8) {
        0 => base_term(rng, n),
        1 | 2 => TermExpr::seq(
            random_term(rng, n, depth - 1),
            random_term(rng, n, depth - 1),
        ),
        3 => {
            let left = rng.below(n + 1);
            TermExpr::tensor(
                random_term(rng, left, depth - 1),
                random_term(rng, n - left, depth - 1),
            )
        }
        4..=6 => {
            let (pattern, j) = random_pattern(rng, n, depth - 1);
            TermExpr::if_let(pattern, random_term(rng, j, depth - 1))
        }
        _ => prelude_gate(rng, n).unwrap_or_else(|| base_term(rng, n)),
    }
}

/// A term that never uses `Seq` on its unitary spine, for exponentiation
/// laws. Sequences inside pattern-embedded unitaries are still allowed.
pub fn random_composition_free_term(rng: &mut Rng, n: usize, depth: usize) -> TermExpr {
    if depth == 0 {
        return composition_free_base(rng, n);
    }
    match rng.below(6) {
        0 => composition_free_base(rng, n),
        1 if n >= 1 => {
            let left = rng.below(n + 1);
            TermExpr::tensor(
                random_composition_free_term(rng, left, depth - 1),
                random_composition_free_term(rng, n - left, depth - 1),
            )
        }
        _ => {
            let (pattern, j) = random_pattern(rng, n, depth - 1);
            TermExpr::if_let(pattern, random_composition_free_term(rng, j, depth - 1))
        }
    }
}

fn composition_free_base(rng: &mut Rng, n: usize) -> TermExpr {
    if n == 0 {
        TermExpr::Phase(random_angle(rng))
    } else if rng.below(3) == 0 {
        TermExpr::identity(n)
    } else {
        // prelude gates other than SWAP-style composites are composition-free
        TermExpr::tensor_all((0..n).map(|_| {
            [gates::x(), gates::z(), gates::s(), gates::t(), gates::v()][rng.below(5)].clone()
        }))
        .unwrap()
    }
}
