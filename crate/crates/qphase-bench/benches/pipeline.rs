use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use qphase_core::algorithms::{dipole_spec, grover_program, qft, trotterize};
use qphase_core::circuit::{circuit_matrix, clauses_to_circuit, write_circuit};
use qphase_core::eval::normalize;
use qphase_core::parser::{elaborate_with_prelude, parse_file, pretty};
use qphase_core::semantics::sem_term;
use qphase_core::typecheck::type_of_term;

fn bench_normalize(c: &mut Criterion) {
    let qft6 = qft(6);
    c.bench_function("normalize qft(6)", |b| {
        b.iter(|| normalize(black_box(&qft6)).unwrap())
    });

    let grover = grover_program(5, 19, 4).unwrap();
    c.bench_function("normalize grover(5)", |b| {
        b.iter(|| normalize(black_box(&grover)).unwrap())
    });

    let trotter = trotterize(&dipole_spec(1.0, 0.7, 0.3), 1.0, 32).unwrap();
    c.bench_function("normalize trotter dipole x32", |b| {
        b.iter(|| normalize(black_box(&trotter)).unwrap())
    });
}

fn bench_semantics(c: &mut Criterion) {
    let qft5 = qft(5);
    c.bench_function("sem_term qft(5)", |b| {
        b.iter(|| sem_term(black_box(&qft5)).unwrap())
    });

    let n = type_of_term(&qft5).unwrap().qubits;
    let circuit = clauses_to_circuit(&normalize(&qft5).unwrap(), n);
    c.bench_function("circuit_matrix qft(5)", |b| {
        b.iter(|| circuit_matrix(black_box(&circuit)).unwrap())
    });
}

fn bench_text_formats(c: &mut Criterion) {
    let qft5 = qft(5);
    let source = pretty(&qft5);
    c.bench_function("parse+elaborate qft(5) source", |b| {
        b.iter(|| elaborate_with_prelude(&parse_file(black_box(&source)).unwrap()).unwrap())
    });

    let n = type_of_term(&qft5).unwrap().qubits;
    let circuit = clauses_to_circuit(&normalize(&qft5).unwrap(), n);
    c.bench_function("write_circuit qft(5)", |b| {
        b.iter(|| write_circuit(black_box(&circuit)))
    });
}

criterion_group!(
    benches,
    bench_normalize,
    bench_semantics,
    bench_text_formats
);
criterion_main!(benches);
