//! Host-level builders producing core-language terms for the classic
//! algorithm families: Grover search, Trotterized Hamiltonian simulation,
//! the quantum Fourier transform, quantum signal processing and the quantum
//! eigenvalue transform.

use num_complex::Complex64;
use thiserror::Error;

use crate::ast::{Angle, PatternExpr, TermExpr};
use crate::gates;
use crate::parser::{self, ElabError, ParseError};
use crate::semantics::{sem_pattern, ComplexMatrix, SemError};
use crate::typecheck::{type_of_pattern, type_of_term, TypeError};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum AlgorithmError {
    #[error("marked element {omega} out of range for {qubits} qubits")]
    OmegaOutOfRange { omega: u64, qubits: usize },
    #[error("need at least one qubit")]
    NeedQubits,
    #[error("need at least one Trotter step")]
    NeedSteps,
    #[error("signal amplitude {0} outside [-1, 1]")]
    AmplitudeOutOfRange(f64),
    #[error("phase list must be nonempty")]
    EmptyPhases,
    #[error("pattern acts on {found} qubits, expected {expected}")]
    PatternArityMismatch { expected: usize, found: usize },
    #[error(transparent)]
    IllTyped(#[from] TypeError),
    #[error(transparent)]
    Sem(#[from] SemError),
}

/// `I - 2|omega><omega|`: flip the phase of one marked basis state. Qubit 0
/// holds the most significant bit of `omega`.
pub fn grover_oracle(n: usize, omega: u64) -> Result<TermExpr, AlgorithmError> {
    if n == 0 {
        return Err(AlgorithmError::NeedQubits);
    }
    if n < 64 && omega >= 1 << n {
        return Err(AlgorithmError::OmegaOutOfRange { omega, qubits: n });
    }
    let kets = (0..n).map(|qubit| {
        if (omega >> (n - 1 - qubit)) & 1 == 1 {
            PatternExpr::Ket1
        } else {
            PatternExpr::Ket0
        }
    });
    let pattern = PatternExpr::tensor_all(kets).expect("n >= 1");
    Ok(TermExpr::if_let(pattern, TermExpr::Phase(Angle::PI)))
}

/// `2|s><s| - I` for the uniform state `|s>`, written
/// `ph(pi) x id(n); if |+>...|+> { ph(pi) }`.
pub fn grover_diffusion(n: usize) -> Result<TermExpr, AlgorithmError> {
    if n == 0 {
        return Err(AlgorithmError::NeedQubits);
    }
    let plus = PatternExpr::tensor_all((0..n).map(|_| PatternExpr::KetPlus)).expect("n >= 1");
    Ok(TermExpr::seq(
        TermExpr::tensor(TermExpr::Phase(Angle::PI), TermExpr::identity(n)),
        TermExpr::if_let(plus, TermExpr::Phase(Angle::PI)),
    ))
}

/// The iteration count `ceil(pi sqrt(N) / 4)` used when none is given.
pub fn grover_default_iterations(n: usize) -> usize {
    let big_n = (1u64 << n) as f64;
    (std::f64::consts::PI * big_n.sqrt() / 4.0).ceil() as usize
}

/// Uniform preparation followed by `iterations` oracle/diffusion rounds.
pub fn grover_program(n: usize, omega: u64, iterations: usize) -> Result<TermExpr, AlgorithmError> {
    if n == 0 {
        return Err(AlgorithmError::NeedQubits);
    }
    let prep = TermExpr::tensor_all((0..n).map(|_| gates::h())).expect("n >= 1");
    let oracle = grover_oracle(n, omega)?;
    let diffusion = grover_diffusion(n)?;
    let mut program = prep;
    for _ in 0..iterations {
        program = TermExpr::seq(program, TermExpr::seq(oracle.clone(), diffusion.clone()));
    }
    Ok(program)
}

/// The phase rotation used by the Fourier transform: `R_k`, a controlled
/// `ph(pi / 2^(k-1))`. `R_2` is S and `R_3` is T.
fn qft_rotation(k: u32) -> TermExpr {
    let theta = Angle::from_pi_fraction(1, 1i64 << (k - 1)).expect("positive denominator");
    TermExpr::if_let(PatternExpr::Ket1, TermExpr::Phase(theta))
}

/// The recursive Fourier transform. Output qubits come out bit-reversed;
/// see [`qft_bitrev`] for the plain DFT.
pub fn qft(n: usize) -> TermExpr {
    if n == 0 {
        return TermExpr::identity(0);
    }
    let m = n - 1;
    if m == 0 {
        return gates::h();
    }
    let rotations =
        TermExpr::tensor_all((2..=n as u32).map(qft_rotation)).expect("m >= 1 rotations");
    let controlled = TermExpr::if_let(
        PatternExpr::tensor(
            PatternExpr::Ket1,
            PatternExpr::unitary(TermExpr::identity(m)),
        ),
        rotations,
    );
    let head = TermExpr::seq(
        TermExpr::tensor(gates::h(), TermExpr::identity(m)),
        controlled,
    );
    TermExpr::seq(head, TermExpr::tensor(TermExpr::identity(1), qft(m)))
}

/// Swap adjacent qubits `j` and `j+1` on an `n`-qubit register.
fn whiskered_swap(n: usize, j: usize) -> TermExpr {
    let mut t = gates::swap();
    if j > 0 {
        t = TermExpr::tensor(TermExpr::identity(j), t);
    }
    if j + 2 < n {
        t = TermExpr::tensor(t, TermExpr::identity(n - j - 2));
    }
    t
}

/// Reverse the qubit order with a network of adjacent swaps.
fn qubit_reversal(n: usize) -> TermExpr {
    let mut term = TermExpr::identity(n);
    // bubble the reversal permutation into adjacent transpositions
    for pass in 0..n {
        for j in 0..n.saturating_sub(1 + pass) {
            term = TermExpr::seq(term, whiskered_swap(n, j));
        }
    }
    term
}

/// The Fourier transform with the output order fixed up by swap gates, equal
/// to the DFT matrix itself.
pub fn qft_bitrev(n: usize) -> TermExpr {
    if n < 2 {
        return qft(n);
    }
    TermExpr::seq(qft(n), qubit_reversal(n))
}

/// One spectral component `(lambda, p)` of a Hamiltonian `H = sum lambda_i
/// Pi_i` with `Pi_i` the image projector of the pattern's isometry.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralComponent {
    pub lambda: f64,
    pub pattern: PatternExpr,
}

/// A Hamiltonian given as spectral components over an `n`-qubit register.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianSpec {
    pub qubits: usize,
    pub components: Vec<SpectralComponent>,
}

impl HamiltonianSpec {
    /// Check every component pattern against the register width, returning
    /// the input arities.
    fn component_arities(&self) -> Result<Vec<usize>, AlgorithmError> {
        self.components
            .iter()
            .map(|c| {
                let ty = type_of_pattern(&c.pattern)?;
                if ty.output != self.qubits {
                    return Err(AlgorithmError::PatternArityMismatch {
                        expected: self.qubits,
                        found: ty.output,
                    });
                }
                Ok(ty.input)
            })
            .collect()
    }
}

/// A single first-order step `U(t)`: one conditional phase per component,
/// exactly `e^{-iHt}` when the projectors commute.
pub fn trotter_step(spec: &HamiltonianSpec, t: f64) -> Result<TermExpr, AlgorithmError> {
    let arities = spec.component_arities()?;
    let mut term = TermExpr::identity(spec.qubits);
    for (component, m) in spec.components.iter().zip(arities) {
        let theta = Angle::from_radians(-component.lambda * t)
            .expect("finite lambda and t produce a finite angle");
        let clause = TermExpr::if_let(
            component.pattern.clone(),
            TermExpr::tensor(TermExpr::Phase(theta), TermExpr::identity(m)),
        );
        term = TermExpr::seq(clause, term);
    }
    Ok(term)
}

/// `U(t/N)` sequenced `N` times; converges to `e^{-iHt}` as `N` grows.
pub fn trotterize(
    spec: &HamiltonianSpec,
    t: f64,
    steps: usize,
) -> Result<TermExpr, AlgorithmError> {
    if steps == 0 {
        return Err(AlgorithmError::NeedSteps);
    }
    let step = trotter_step(spec, t / steps as f64)?;
    let mut term = step.clone();
    for _ in 1..steps {
        term = TermExpr::seq(step.clone(), term);
    }
    Ok(term)
}

/// The exact evolution `e^{-iHt}` of a Hamiltonian spec, by dense matrix
/// exponential; the oracle Trotterized terms are compared against.
pub fn exact_evolution(spec: &HamiltonianSpec, t: f64) -> Result<ComplexMatrix, AlgorithmError> {
    let h = hamiltonian_matrix(spec)?;
    Ok(crate::semantics::expm(&h.scaled(Complex64::new(0.0, -t))))
}

/// The dense matrix `sum lambda_i iota_i iota_i^dag` of a Hamiltonian spec.
pub fn hamiltonian_matrix(spec: &HamiltonianSpec) -> Result<ComplexMatrix, AlgorithmError> {
    spec.component_arities()?;
    let dim = 1usize << spec.qubits;
    let mut h = ComplexMatrix::zeros(dim, dim);
    for component in &spec.components {
        let iota = sem_pattern(&component.pattern)?;
        let projector = iota.mul(&iota.dagger());
        h = h.add(&projector.scaled(Complex64::new(component.lambda, 0.0)));
    }
    Ok(h)
}

/// Two interacting spin-1/2 dipoles:
/// `H = w1 sz(x)I + w2 I(x)sz + J (sx(x)sx + sy(x)sy - 2 sz(x)sz)`,
/// expanded term by term into 20 signed projector components.
pub fn dipole_spec(omega1: f64, omega2: f64, coupling: f64) -> HamiltonianSpec {
    let z = [PatternExpr::Ket0, PatternExpr::Ket1];
    let x = [PatternExpr::KetPlus, PatternExpr::KetMinus];
    let y = [
        PatternExpr::compose(PatternExpr::unitary(gates::s()), PatternExpr::KetPlus),
        PatternExpr::compose(PatternExpr::unitary(gates::s()), PatternExpr::KetMinus),
    ];
    let signs = [1.0, -1.0];

    let mut components = Vec::with_capacity(20);
    // w1 (P+ - P-) x (P+ + P-)
    for a in 0..2 {
        for b in 0..2 {
            components.push(SpectralComponent {
                lambda: omega1 * signs[a],
                pattern: PatternExpr::tensor(z[a].clone(), z[b].clone()),
            });
        }
    }
    // w2 (P+ + P-) x (P+ - P-)
    for a in 0..2 {
        for b in 0..2 {
            components.push(SpectralComponent {
                lambda: omega2 * signs[b],
                pattern: PatternExpr::tensor(z[a].clone(), z[b].clone()),
            });
        }
    }
    // J (sx x sx) and J (sy x sy)
    for basis in [&x, &y] {
        for a in 0..2 {
            for b in 0..2 {
                components.push(SpectralComponent {
                    lambda: coupling * signs[a] * signs[b],
                    pattern: PatternExpr::tensor(basis[a].clone(), basis[b].clone()),
                });
            }
        }
    }
    // -2J (sz x sz)
    for a in 0..2 {
        for b in 0..2 {
            components.push(SpectralComponent {
                lambda: -2.0 * coupling * signs[a] * signs[b],
                pattern: PatternExpr::tensor(z[a].clone(), z[b].clone()),
            });
        }
    }
    HamiltonianSpec {
        qubits: 2,
        components,
    }
}

/// `R_z(alpha) := ph(-alpha/2) x id(1); if |0> { ph(alpha) }`
fn rz(alpha: f64) -> TermExpr {
    rotation(alpha, PatternExpr::Ket0)
}

/// `R_x(alpha) := ph(-alpha/2) x id(1); if |+> { ph(alpha) }`
fn rx(alpha: f64) -> TermExpr {
    rotation(alpha, PatternExpr::KetPlus)
}

fn rotation(alpha: f64, axis: PatternExpr) -> TermExpr {
    let half = Angle::from_radians(-alpha / 2.0).expect("finite rotation angle");
    let full = Angle::from_radians(alpha).expect("finite rotation angle");
    TermExpr::seq(
        TermExpr::tensor(TermExpr::Phase(half), TermExpr::identity(1)),
        TermExpr::if_let(axis, TermExpr::Phase(full)),
    )
}

/// Quantum signal processing: interleave the signal rotation `W(a)` with
/// processing rotations so the whole program denotes
/// `S(phi_0) W(a) S(phi_1) ... W(a) S(phi_d)`.
pub fn qsp_program(a: f64, phis: &[f64]) -> Result<TermExpr, AlgorithmError> {
    if !(-1.0..=1.0).contains(&a) {
        return Err(AlgorithmError::AmplitudeOutOfRange(a));
    }
    let Some((&last, front)) = phis.split_last() else {
        return Err(AlgorithmError::EmptyPhases);
    };
    let signal_angle = 2.0 * a.acos();
    // S(phi_d) is applied first, so the program consumes phis from the tail.
    let mut program = rz(2.0 * last);
    for &phi in front.iter().rev() {
        program = TermExpr::seq(TermExpr::seq(program, rx(signal_angle)), rz(2.0 * phi));
    }
    Ok(program)
}

/// Projector-controlled phase `e^{i phi (2 Pi - I)}` for `Pi` the image
/// projector of the pattern: `ph(-phi) x id(n); if p { ph(2 phi) x id(m) }`.
pub fn projector_phase(p_pi: &PatternExpr, phi: f64) -> Result<TermExpr, AlgorithmError> {
    let ty = type_of_pattern(p_pi)?;
    let minus = Angle::from_radians(-phi).expect("finite phase");
    let double = Angle::from_radians(2.0 * phi).expect("finite phase");
    Ok(TermExpr::seq(
        TermExpr::tensor(TermExpr::Phase(minus), TermExpr::identity(ty.output)),
        TermExpr::if_let(
            p_pi.clone(),
            TermExpr::tensor(TermExpr::Phase(double), TermExpr::identity(ty.input)),
        ),
    ))
}

/// Quantum eigenvalue transform over a block encoding: alternate the walk
/// unitary and its inverse with projector-controlled phases, two phases per
/// round consumed from the tail of the list. Odd lengths use the
/// `s_U; R(phi_1)` base case, the empty list is the identity.
pub fn qet_program(
    s_u: &TermExpr,
    p_pi: &PatternExpr,
    phis: &[f64],
) -> Result<TermExpr, AlgorithmError> {
    let unitary_ty = type_of_term(s_u)?;
    let pattern_ty = type_of_pattern(p_pi)?;
    if pattern_ty.output != unitary_ty.qubits {
        return Err(AlgorithmError::PatternArityMismatch {
            expected: unitary_ty.qubits,
            found: pattern_ty.output,
        });
    }
    qet_rec(s_u, p_pi, phis, unitary_ty.qubits)
}

fn qet_rec(
    s_u: &TermExpr,
    p_pi: &PatternExpr,
    phis: &[f64],
    n: usize,
) -> Result<TermExpr, AlgorithmError> {
    match phis {
        [] => Ok(TermExpr::identity(n)),
        [phi] => Ok(TermExpr::seq(s_u.clone(), projector_phase(p_pi, *phi)?)),
        [front @ .., second_last, last] => {
            let prev = qet_rec(s_u, p_pi, front, n)?;
            let tail = TermExpr::seq(
                TermExpr::seq(
                    TermExpr::seq(prev, s_u.clone()),
                    projector_phase(p_pi, *last)?,
                ),
                crate::metaops::invert(s_u),
            );
            Ok(TermExpr::seq(tail, projector_phase(p_pi, *second_last)?))
        }
    }
}

/// A parsed Hamiltonian file: spectral components plus evolution time and
/// step count.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianFile {
    pub spec: HamiltonianSpec,
    pub time: f64,
    pub steps: usize,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum HamFileError {
    #[error("{field}: missing")]
    Missing { field: String },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error("{field}: {err}")]
    Pattern { field: String, err: ParseError },
    #[error("{field}: {err}")]
    PatternElab { field: String, err: ElabError },
}

/// Parse the Hamiltonian spec file format:
///
/// ```text
/// # comment
/// n 2
/// t 1.0
/// steps 16
/// term 1.0 |0> x |0>
/// term -0.3 (S . |+>) x (S . |+>)
/// ```
///
/// `term` lines carry a coefficient and a pattern in the source grammar
/// (prelude names available). Errors name the offending field.
pub fn parse_hamiltonian_file(text: &str) -> Result<HamiltonianFile, HamFileError> {
    let mut qubits: Option<usize> = None;
    let mut time: Option<f64> = None;
    let mut steps: Option<usize> = None;
    let mut components = Vec::new();

    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) =
            line.split_once(char::is_whitespace)
                .ok_or_else(|| HamFileError::Invalid {
                    field: line.to_string(),
                    message: "expected `<key> <value>`".into(),
                })?;
        let rest = rest.trim();
        match key {
            "n" => {
                qubits = Some(rest.parse().map_err(|_| HamFileError::Invalid {
                    field: "n".into(),
                    message: format!("`{rest}` is not a qubit count"),
                })?);
            }
            "t" => {
                let value: f64 = rest.parse().map_err(|_| HamFileError::Invalid {
                    field: "t".into(),
                    message: format!("`{rest}` is not a number"),
                })?;
                if !value.is_finite() {
                    return Err(HamFileError::Invalid {
                        field: "t".into(),
                        message: "must be finite".into(),
                    });
                }
                time = Some(value);
            }
            "steps" => {
                let value: usize = rest.parse().map_err(|_| HamFileError::Invalid {
                    field: "steps".into(),
                    message: format!("`{rest}` is not a step count"),
                })?;
                steps = Some(value);
            }
            "term" => {
                let index = components.len();
                let (lambda_text, pattern_text) =
                    rest.split_once(char::is_whitespace)
                        .ok_or_else(|| HamFileError::Invalid {
                            field: format!("terms[{index}]"),
                            message: "expected `term <lambda> <pattern>`".into(),
                        })?;
                let lambda: f64 = lambda_text.parse().map_err(|_| HamFileError::Invalid {
                    field: format!("terms[{index}].lambda"),
                    message: format!("`{lambda_text}` is not a number"),
                })?;
                if !lambda.is_finite() {
                    return Err(HamFileError::Invalid {
                        field: format!("terms[{index}].lambda"),
                        message: "must be finite".into(),
                    });
                }
                let surface = parser::parse_pattern_text(pattern_text.trim()).map_err(|err| {
                    HamFileError::Pattern {
                        field: format!("terms[{index}].pattern"),
                        err,
                    }
                })?;
                let pattern = parser::elaborate_pattern_with_prelude(&surface).map_err(|err| {
                    HamFileError::PatternElab {
                        field: format!("terms[{index}].pattern"),
                        err,
                    }
                })?;
                components.push(SpectralComponent { lambda, pattern });
            }
            other => {
                return Err(HamFileError::Invalid {
                    field: other.to_string(),
                    message: "unknown key".into(),
                });
            }
        }
    }

    let qubits = qubits.ok_or_else(|| HamFileError::Missing { field: "n".into() })?;
    let time = time.ok_or_else(|| HamFileError::Missing { field: "t".into() })?;
    let steps = steps.ok_or_else(|| HamFileError::Missing {
        field: "steps".into(),
    })?;
    Ok(HamiltonianFile {
        spec: HamiltonianSpec { qubits, components },
        time,
        steps,
    })
}

/// Render a Hamiltonian spec back to the file format.
pub fn write_hamiltonian_file(file: &HamiltonianFile) -> String {
    let mut out = String::new();
    out.push_str(&format!("n {}\n", file.spec.qubits));
    out.push_str(&format!("t {}\n", file.time));
    out.push_str(&format!("steps {}\n", file.steps));
    for c in &file.spec.components {
        out.push_str(&format!(
            "term {} {}\n",
            c.lambda,
            parser::pretty_pattern(&c.pattern)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::normalize;
    use crate::semantics::{expm, matrix_of_clauses, max_abs_diff, sem_term};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn diag(entries: &[Complex64]) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(entries.len(), entries.len());
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    #[test]
    fn oracle_marks_one_state() {
        let m = sem_term(&grover_oracle(2, 3).unwrap()).unwrap();
        let expected = diag(&[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!(max_abs_diff(&m, &expected) < 1e-12);

        let m = sem_term(&grover_oracle(1, 0).unwrap()).unwrap();
        assert!(max_abs_diff(&m, &diag(&[c(-1.0, 0.0), c(1.0, 0.0)])) < 1e-12);
    }

    #[test]
    fn oracle_matches_reflection_for_all_small_registers() {
        for n in 1..=4usize {
            for omega in 0..(1u64 << n) {
                let m = sem_term(&grover_oracle(n, omega).unwrap()).unwrap();
                let dim = 1 << n;
                let mut expected = ComplexMatrix::identity(dim);
                expected.set(omega as usize, omega as usize, c(-1.0, 0.0));
                assert!(max_abs_diff(&m, &expected) < 1e-12, "n={n} omega={omega}");
            }
        }
    }

    #[test]
    fn oracle_pattern_uses_msb_first_binary() {
        // 5 = 101
        let t = grover_oracle(3, 5).unwrap();
        match t {
            TermExpr::IfLet(p, _) => {
                let expected = PatternExpr::tensor(
                    PatternExpr::tensor(PatternExpr::Ket1, PatternExpr::Ket0),
                    PatternExpr::Ket1,
                );
                assert_eq!(p, expected);
            }
            other => panic!("expected if-let, got {other:?}"),
        }
        assert!(matches!(
            grover_oracle(2, 4),
            Err(AlgorithmError::OmegaOutOfRange { .. })
        ));
    }

    #[test]
    fn diffusion_small_cases() {
        // 2|s><s| - I is X on one qubit
        let m = sem_term(&grover_diffusion(1).unwrap()).unwrap();
        assert!(max_abs_diff(&m, &sem_term(&gates::x()).unwrap()) < 1e-12);

        // and (1/2)[[-1,1,1,1],...] on two qubits
        let m = sem_term(&grover_diffusion(2).unwrap()).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { -0.5 } else { 0.5 };
                assert!((m.get(i, j) - c(expected, 0.0)).norm() < 1e-12);
            }
        }
        assert!(matches!(
            grover_diffusion(0),
            Err(AlgorithmError::NeedQubits)
        ));
    }

    #[test]
    fn diffusion_fixes_uniform_state() {
        let n = 3;
        let m = sem_term(&grover_diffusion(n).unwrap()).unwrap();
        let dim = 1 << n;
        let amp = 1.0 / (dim as f64).sqrt();
        let uniform = ComplexMatrix::column(&vec![c(amp, 0.0); dim]);
        assert!(max_abs_diff(&m.mul(&uniform), &uniform) < 1e-10);
    }

    #[test]
    fn default_iterations() {
        assert_eq!(grover_default_iterations(4), 4); // ceil(pi*4/4) = 4
        assert_eq!(grover_default_iterations(2), 2); // ceil(pi/2) = 2
    }

    #[test]
    fn zero_iterations_is_uniform() {
        let m = sem_term(&grover_program(2, 1, 0).unwrap()).unwrap();
        let mut input = ComplexMatrix::zeros(4, 1);
        input.set(0, 0, c(1.0, 0.0));
        let state = m.mul(&input);
        for i in 0..4 {
            assert!((state.get(i, 0).norm_sqr() - 0.25).abs() < 1e-10);
        }
    }

    #[test]
    fn qft_base_cases() {
        assert_eq!(qft(0), TermExpr::identity(0));
        let m = sem_term(&qft(1)).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected =
            ComplexMatrix::from_rows(&[&[c(h, 0.0), c(h, 0.0)], &[c(h, 0.0), c(-h, 0.0)]]);
        assert!(max_abs_diff(&m, &expected) < 1e-10);
    }

    fn dft(n: usize) -> ComplexMatrix {
        let dim = 1usize << n;
        let mut m = ComplexMatrix::zeros(dim, dim);
        let scale = 1.0 / (dim as f64).sqrt();
        for y in 0..dim {
            for x in 0..dim {
                let phase = 2.0 * std::f64::consts::PI * (x * y % dim) as f64 / dim as f64;
                m.set(y, x, Complex64::from_polar(scale, phase));
            }
        }
        m
    }

    fn bit_reversal(n: usize) -> ComplexMatrix {
        let dim = 1usize << n;
        let mut m = ComplexMatrix::zeros(dim, dim);
        for x in 0..dim {
            let mut r = 0usize;
            for bit in 0..n {
                if x >> bit & 1 == 1 {
                    r |= 1 << (n - 1 - bit);
                }
            }
            m.set(r, x, c(1.0, 0.0));
        }
        m
    }

    #[test]
    fn qft3_is_bit_reversed_dft() {
        let m = sem_term(&qft(3)).unwrap();
        let expected = bit_reversal(3).mul(&dft(3));
        assert!(max_abs_diff(&m, &expected) < 1e-9);
    }

    #[test]
    fn qft_bitrev_is_plain_dft() {
        for n in [1, 2, 3] {
            let m = sem_term(&qft_bitrev(n)).unwrap();
            assert!(max_abs_diff(&m, &dft(n)) < 1e-9, "n = {n}");
        }
    }

    #[test]
    fn trotter_empty_spec_is_identity() {
        let spec = HamiltonianSpec {
            qubits: 3,
            components: Vec::new(),
        };
        assert_eq!(trotter_step(&spec, 1.0).unwrap(), TermExpr::identity(3));
    }

    #[test]
    fn trotter_single_component() {
        let spec = HamiltonianSpec {
            qubits: 1,
            components: vec![SpectralComponent {
                lambda: 0.7,
                pattern: PatternExpr::Ket1,
            }],
        };
        let t = 1.3;
        let m = sem_term(&trotter_step(&spec, t).unwrap()).unwrap();
        let expected = diag(&[c(1.0, 0.0), Complex64::cis(-0.7 * t)]);
        assert!(max_abs_diff(&m, &expected) < 1e-12);
    }

    #[test]
    fn trotter_sigma_z() {
        // {(1, |0>), (-1, |1>)} at t = pi/2 evolves to diag(e^{-i pi/2}, e^{i pi/2})
        let spec = HamiltonianSpec {
            qubits: 1,
            components: vec![
                SpectralComponent {
                    lambda: 1.0,
                    pattern: PatternExpr::Ket0,
                },
                SpectralComponent {
                    lambda: -1.0,
                    pattern: PatternExpr::Ket1,
                },
            ],
        };
        let t = std::f64::consts::FRAC_PI_2;
        let m = sem_term(&trotter_step(&spec, t).unwrap()).unwrap();
        let expected = diag(&[Complex64::cis(-t), Complex64::cis(t)]);
        assert!(max_abs_diff(&m, &expected) < 1e-12);
    }

    #[test]
    fn trotterize_one_step_is_the_step() {
        let spec = dipole_spec(1.0, 0.7, 0.3);
        assert_eq!(
            trotterize(&spec, 1.0, 1).unwrap(),
            trotter_step(&spec, 1.0).unwrap()
        );
        assert!(matches!(
            trotterize(&spec, 1.0, 0),
            Err(AlgorithmError::NeedSteps)
        ));
    }

    #[test]
    fn dipole_reconstructs_pauli_hamiltonian() {
        let (w1, w2, j) = (1.0, 0.7, 0.3);
        let spec = dipole_spec(w1, w2, j);
        assert_eq!(spec.components.len(), 20);
        let h = hamiltonian_matrix(&spec).unwrap();

        let sx =
            ComplexMatrix::from_rows(&[&[c(0.0, 0.0), c(1.0, 0.0)], &[c(1.0, 0.0), c(0.0, 0.0)]]);
        let sy =
            ComplexMatrix::from_rows(&[&[c(0.0, 0.0), c(0.0, -1.0)], &[c(0.0, 1.0), c(0.0, 0.0)]]);
        let sz = diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        let id2 = ComplexMatrix::identity(2);
        let expected = sz
            .kron(&id2)
            .scaled(c(w1, 0.0))
            .add(&id2.kron(&sz).scaled(c(w2, 0.0)))
            .add(&sx.kron(&sx).scaled(c(j, 0.0)))
            .add(&sy.kron(&sy).scaled(c(j, 0.0)))
            .add(&sz.kron(&sz).scaled(c(-2.0 * j, 0.0)));
        assert!(max_abs_diff(&h, &expected) < 1e-12);
    }

    #[test]
    fn commuting_spec_is_exact_for_one_step() {
        // J = 0 leaves only sigma-z projectors, which all commute
        let spec = dipole_spec(1.0, 0.7, 0.0);
        let t = 1.0;
        let u = sem_term(&trotterize(&spec, t, 1).unwrap()).unwrap();
        let h = hamiltonian_matrix(&spec).unwrap();
        let exact = expm(&h.scaled(c(0.0, -t)));
        assert!(max_abs_diff(&u, &exact) < 1e-10);
    }

    #[test]
    fn zero_hamiltonian_evolves_trivially() {
        let spec = dipole_spec(0.0, 0.0, 0.0);
        let u = sem_term(&trotter_step(&spec, 1.0).unwrap()).unwrap();
        assert!(max_abs_diff(&u, &ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn qsp_single_phase_of_zero_is_identity() {
        let m = sem_term(&qsp_program(0.4, &[0.0]).unwrap()).unwrap();
        assert!(max_abs_diff(&m, &ComplexMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn qsp_trivial_processing_is_the_signal() {
        for a in [-0.9, 0.0, 0.3, 1.0] {
            let m = sem_term(&qsp_program(a, &[0.0, 0.0]).unwrap()).unwrap();
            let s = (1.0 - a * a).max(0.0).sqrt();
            let w = ComplexMatrix::from_rows(&[&[c(a, 0.0), c(0.0, s)], &[c(0.0, s), c(a, 0.0)]]);
            assert!(max_abs_diff(&m, &w) < 1e-12, "a = {a}");
        }
    }

    #[test]
    fn qsp_rejects_bad_input() {
        assert!(matches!(
            qsp_program(1.5, &[0.0]),
            Err(AlgorithmError::AmplitudeOutOfRange(_))
        ));
        assert!(matches!(
            qsp_program(0.5, &[]),
            Err(AlgorithmError::EmptyPhases)
        ));
    }

    #[test]
    fn projector_phase_on_ket0() {
        let phi = 0.8;
        let m = sem_term(&projector_phase(&PatternExpr::Ket0, phi).unwrap()).unwrap();
        let expected = diag(&[Complex64::cis(phi), Complex64::cis(-phi)]);
        assert!(max_abs_diff(&m, &expected) < 1e-12);
    }

    #[test]
    fn projector_phase_zero_is_identity() {
        let p = PatternExpr::tensor(PatternExpr::Ket1, PatternExpr::KetPlus);
        let m = sem_term(&projector_phase(&p, 0.0).unwrap()).unwrap();
        assert!(max_abs_diff(&m, &ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn projector_phase_full_space_is_global() {
        let phi = 0.37;
        let p = PatternExpr::unitary(gates::h());
        let m = sem_term(&projector_phase(&p, phi).unwrap()).unwrap();
        let expected = ComplexMatrix::identity(2).scaled(Complex64::cis(phi));
        assert!(max_abs_diff(&m, &expected) < 1e-10);
    }

    #[test]
    fn qet_base_cases() {
        let s_u = gates::h();
        let p = PatternExpr::Ket0;
        assert_eq!(qet_program(&s_u, &p, &[]).unwrap(), TermExpr::identity(1));
        assert_eq!(
            qet_program(&s_u, &p, &[0.4]).unwrap(),
            TermExpr::seq(s_u.clone(), projector_phase(&p, 0.4).unwrap())
        );
    }

    #[test]
    fn qet_zero_phases_even_degree_collapses() {
        let s_u = gates::h();
        let p = PatternExpr::Ket0;
        let m = sem_term(&qet_program(&s_u, &p, &[0.0, 0.0]).unwrap()).unwrap();
        assert!(max_abs_diff(&m, &ComplexMatrix::identity(2)) < 1e-10);
    }

    #[test]
    fn qet_arity_mismatch_rejected() {
        let err = qet_program(&gates::cx(), &PatternExpr::Ket0, &[0.1]);
        assert!(matches!(
            err,
            Err(AlgorithmError::PatternArityMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn builders_typecheck_and_compile() {
        let spec = dipole_spec(1.0, 0.7, 0.3);
        let terms = [
            grover_program(3, 5, 2).unwrap(),
            qft(3),
            qft_bitrev(3),
            trotterize(&spec, 1.0, 2).unwrap(),
            qsp_program(0.3, &[0.1, 0.2, 0.3]).unwrap(),
            qet_program(&gates::h(), &PatternExpr::Ket0, &[0.1, 0.2]).unwrap(),
        ];
        for t in terms {
            let n = type_of_term(&t).unwrap().qubits;
            let clauses = normalize(&t).unwrap();
            let compiled = matrix_of_clauses(&clauses, n).unwrap();
            let direct = sem_term(&t).unwrap();
            assert!(max_abs_diff(&compiled, &direct) < 1e-9);
        }
    }

    #[test]
    fn hamiltonian_file_round_trip() {
        let text = "# two-qubit demo\nn 2\nt 1.5\nsteps 4\nterm 1.0 |0> x |0>\nterm -0.25 (S . |+>) x (S . |+>)\n";
        let file = parse_hamiltonian_file(text).unwrap();
        assert_eq!(file.spec.qubits, 2);
        assert_eq!(file.time, 1.5);
        assert_eq!(file.steps, 4);
        assert_eq!(file.spec.components.len(), 2);
        assert_eq!(file.spec.components[0].lambda, 1.0);
        let reparsed = parse_hamiltonian_file(&write_hamiltonian_file(&file)).unwrap();
        assert_eq!(reparsed, file);
    }

    #[test]
    fn hamiltonian_file_errors_name_fields() {
        let err = parse_hamiltonian_file("n 2\nt 1.0\n").unwrap_err();
        assert_eq!(
            err,
            HamFileError::Missing {
                field: "steps".into()
            }
        );

        let err = parse_hamiltonian_file("n 2\nt 1.0\nsteps 4\nterm abc |0> x |0>\n").unwrap_err();
        assert!(matches!(
            err,
            HamFileError::Invalid { ref field, .. } if field == "terms[0].lambda"
        ));

        let err = parse_hamiltonian_file("n 2\nt 1.0\nsteps 4\nterm 1.0 |2> x |0>\n").unwrap_err();
        assert!(matches!(
            err,
            HamFileError::Pattern { ref field, .. } if field == "terms[0].pattern"
        ));
    }
}
