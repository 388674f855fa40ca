//! Batch command-line front end: parse, check, compile, simulate and verify
//! `.qph` programs. Exit codes: 0 success, 1 domain failure (parse, type or
//! verification error), 2 usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qphase_core::algorithms::{
    self, dipole_spec, exact_evolution, grover_default_iterations, parse_hamiltonian_file,
    qet_program, qft, qft_bitrev, qsp_program, trotterize, HamiltonianFile,
};
use qphase_core::ast::TermExpr;
use qphase_core::circuit::{circuit_matrix, clauses_to_circuit, write_circuit};
use qphase_core::eval::{fuse_clauses, normalize};
use qphase_core::parser::{
    elaborate_pattern_with_prelude, elaborate_with_prelude, parse_file, parse_pattern_text, pretty,
};
use qphase_core::semantics::{max_abs_diff, sem_term};
use qphase_core::typecheck::type_of_term;

const VERIFY_TOLERANCE: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "qphase",
    version,
    about = "Compile and verify phase/if-let quantum programs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a source file and print the elaborated term.
    Parse { file: PathBuf },
    /// Type check a source file and print its type.
    Check { file: PathBuf },
    /// Compile a source file to the circuit text format.
    Compile {
        file: PathBuf,
        /// Write the circuit here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Merge adjacent clauses and drop full turns before emitting.
        #[arg(long)]
        fuse: bool,
    },
    /// Print the dense matrix of a source file's term.
    Matrix {
        file: PathBuf,
        /// Use the compiled circuit's matrix instead of the direct denotation.
        #[arg(long)]
        compiled: bool,
    },
    /// Compare a term's denotation against its compiled circuit.
    Verify { file: PathBuf },
    /// Emit a `.qph` source file for a built-in algorithm family.
    Example {
        #[command(subcommand)]
        family: ExampleFamily,
    },
    /// Build a Trotterized evolution from a Hamiltonian spec file and report
    /// its error against the exact dense evolution.
    Simulate {
        /// Hamiltonian spec file (keys n, t, steps and term lines).
        #[arg(long)]
        hamiltonian: PathBuf,
        /// Also write the generated `.qph` term here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExampleFamily {
    /// Grover search for one marked element.
    Grover {
        qubits: usize,
        marked: u64,
        /// Iteration count; defaults to ceil(pi sqrt(N) / 4).
        #[arg(long)]
        iterations: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Quantum Fourier transform.
    Qft {
        qubits: usize,
        /// Append swaps so the output order matches the plain DFT.
        #[arg(long)]
        bitrev: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Trotterized evolution of the interacting-dipole Hamiltonian.
    Trotter {
        #[arg(long, default_value_t = 1.0)]
        omega1: f64,
        #[arg(long, default_value_t = 0.7)]
        omega2: f64,
        #[arg(long, default_value_t = 0.3)]
        coupling: f64,
        #[arg(long, default_value_t = 1.0)]
        time: f64,
        #[arg(long, default_value_t = 8)]
        steps: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Quantum signal processing with explicit phases.
    Qsp {
        amplitude: f64,
        #[arg(required = true)]
        phases: Vec<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Quantum eigenvalue transform over a block encoding.
    Qet {
        /// Walk unitary, in source syntax (prelude names available).
        #[arg(long, default_value = "X")]
        unitary: String,
        /// Signal projector pattern, in source syntax.
        #[arg(long, default_value = "|0>")]
        pattern: String,
        phases: Vec<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn load_term(path: &Path) -> Result<TermExpr, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    let file = parse_file(&text).map_err(|e| Failure(format!("{}:{e}", path.display())))?;
    let term =
        elaborate_with_prelude(&file).map_err(|e| Failure(format!("{}:{e}", path.display())))?;
    Ok(term)
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Parse { file } => {
            let term = load_term(&file)?;
            println!("{}", pretty(&term));
            Ok(ExitCode::SUCCESS)
        }
        Command::Check { file } => {
            let term = load_term(&file)?;
            let ty = type_of_term(&term)?;
            println!("{ty}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Compile { file, output, fuse } => {
            let term = load_term(&file)?;
            let ty = type_of_term(&term)?;
            let mut clauses = normalize(&term)?;
            if fuse {
                clauses = fuse_clauses(&clauses);
            }
            let circuit = clauses_to_circuit(&clauses, ty.qubits);
            emit(&write_circuit(&circuit), output.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Matrix { file, compiled } => {
            let term = load_term(&file)?;
            let matrix = if compiled {
                let ty = type_of_term(&term)?;
                let circuit = clauses_to_circuit(&normalize(&term)?, ty.qubits);
                circuit_matrix(&circuit)?
            } else {
                sem_term(&term)?
            };
            print!("{}", matrix.render_text());
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { file } => {
            let term = load_term(&file)?;
            let ty = type_of_term(&term)?;
            let direct = sem_term(&term)?;
            let circuit = clauses_to_circuit(&normalize(&term)?, ty.qubits);
            let compiled = circuit_matrix(&circuit)?;
            let deviation = max_abs_diff(&direct, &compiled);
            println!("{deviation:e}");
            if deviation < VERIFY_TOLERANCE {
                Ok(ExitCode::SUCCESS)
            } else {
                Err(Failure(format!(
                    "compiled circuit deviates by {deviation:e} (tolerance {VERIFY_TOLERANCE:e})"
                )))
            }
        }
        Command::Example { family } => run_example(family),
        Command::Simulate {
            hamiltonian,
            output,
        } => {
            let text = std::fs::read_to_string(&hamiltonian)
                .map_err(|e| Failure(format!("{}: {e}", hamiltonian.display())))?;
            let HamiltonianFile { spec, time, steps } = parse_hamiltonian_file(&text)
                .map_err(|e| Failure(format!("{}: {e}", hamiltonian.display())))?;
            let term = trotterize(&spec, time, steps)?;
            let exact = exact_evolution(&spec, time)?;
            let approx = sem_term(&term)?;
            let deviation = max_abs_diff(&approx, &exact);
            println!(
                "{} components, t = {time}, {steps} steps: max deviation from exact evolution {deviation:e}",
                spec.components.len()
            );
            if let Some(path) = output {
                emit(&format!("{}\n", pretty(&term)), Some(&path))?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_example(family: ExampleFamily) -> Result<ExitCode, Failure> {
    let (term, comment, output) = match family {
        ExampleFamily::Grover {
            qubits,
            marked,
            iterations,
            output,
        } => {
            let iterations = iterations.unwrap_or_else(|| grover_default_iterations(qubits));
            let term = algorithms::grover_program(qubits, marked, iterations)?;
            (
                term,
                format!(
                    "// Grover search: {qubits} qubits, marked {marked}, {iterations} iterations"
                ),
                output,
            )
        }
        ExampleFamily::Qft {
            qubits,
            bitrev,
            output,
        } => {
            let term = if bitrev {
                qft_bitrev(qubits)
            } else {
                qft(qubits)
            };
            let suffix = if bitrev {
                ", output order fixed"
            } else {
                " (output bit-reversed)"
            };
            (
                term,
                format!("// {qubits}-qubit Fourier transform{suffix}"),
                output,
            )
        }
        ExampleFamily::Trotter {
            omega1,
            omega2,
            coupling,
            time,
            steps,
            output,
        } => {
            let spec = dipole_spec(omega1, omega2, coupling);
            let term = trotterize(&spec, time, steps)?;
            (
                term,
                format!("// Dipole evolution: omega1={omega1} omega2={omega2} J={coupling} t={time} steps={steps}"),
                output,
            )
        }
        ExampleFamily::Qsp {
            amplitude,
            phases,
            output,
        } => {
            let term = qsp_program(amplitude, &phases)?;
            (
                term,
                format!(
                    "// Signal processing: a={amplitude}, {} phases",
                    phases.len()
                ),
                output,
            )
        }
        ExampleFamily::Qet {
            unitary,
            pattern,
            phases,
            output,
        } => {
            let unitary_term = elaborate_with_prelude(
                &parse_file(&unitary).map_err(|e| Failure(format!("--unitary: {e}")))?,
            )
            .map_err(|e| Failure(format!("--unitary: {e}")))?;
            let surface =
                parse_pattern_text(&pattern).map_err(|e| Failure(format!("--pattern: {e}")))?;
            let projector = elaborate_pattern_with_prelude(&surface)
                .map_err(|e| Failure(format!("--pattern: {e}")))?;
            let term = qet_program(&unitary_term, &projector, &phases)?;
            (
                term,
                format!("// Eigenvalue transform: {} phases", phases.len()),
                output,
            )
        }
    };
    emit(
        &format!("{comment}\n{}\n", pretty(&term)),
        output.as_deref(),
    )?;
    Ok(ExitCode::SUCCESS)
}
