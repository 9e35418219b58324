use criterion::{criterion_group, criterion_main, Criterion};
use qpoisson::poisson::p_bracket;
use qpoisson::quantum::{normal_order, DEFAULT_FUEL};
use qpoisson::spec::catalog_load;
use qpoisson::verify::{run_check, CheckKind, Options, Target};
use qpoisson::Mode;
use std::hint::black_box;

fn ring(c: &mut Criterion) {
    let spec = catalog_load("su3", Mode::Poisson).unwrap();
    let x = spec.parse_element("sinh(z*(H1 - H2))/z + 3*exp(2*z*H3)").unwrap();
    let x = x.as_poisson().unwrap().clone();
    c.bench_function("poisson_mul_su3", |b| b.iter(|| black_box(&x).mul(black_box(&x))));
}

fn normal_ordering(c: &mut Criterion) {
    let spec = catalog_load("su3", Mode::Quantum).unwrap();
    let w = spec.parse_element("F31*F32*F21*F23*F12*F13").unwrap();
    let w = w.as_quantum().unwrap().clone();
    c.bench_function("normal_order_su3_word6", |b| {
        b.iter(|| normal_order(&spec, black_box(&w), DEFAULT_FUEL).unwrap())
    });
}

fn poisson_bracket(c: &mut Criterion) {
    let spec = catalog_load("su3", Mode::Poisson).unwrap();
    let el = |s: &str| spec.parse_element(s).unwrap().as_poisson().unwrap().clone();
    let (x, y) = (el("F12*F23 + H1"), el("F31*exp(z*H2)"));
    c.bench_function("poisson_bracket_su3", |b| {
        b.iter(|| p_bracket(&spec, black_box(&x), black_box(&y)).unwrap())
    });
}

fn checks(c: &mut Criterion) {
    let su3 = Target::catalog("su3").unwrap();
    let opts = Options::default();
    c.bench_function("check_poisson_jacobi_su3", |b| {
        b.iter(|| run_check(CheckKind::PoissonJacobi, &su3, &opts))
    });
    let heavy = Options {
        include_heavy: true,
        ..Options::default()
    };
    let q = Target::catalog("su3_quantum").unwrap();
    c.bench_function("check_quantum_hopf_su3", |b| {
        b.iter(|| run_check(CheckKind::HopfHomomorphism, &q, &heavy))
    });
}

criterion_group!(engine, ring, normal_ordering, poisson_bracket, checks);
criterion_main!(engine);
