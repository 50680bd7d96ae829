use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qes_bench::{example_i, example_ii, generic_params};
use qes_core::poly::int;
use qes_core::{
    build_h_hat, build_p2_hat, char_poly, char_poly_bareiss, commutator, fit_relation, matrix_of,
    BasisVd, EDomain,
};

fn operators(c: &mut Criterion) {
    let p = generic_params(2);
    c.bench_function("build_h_hat", |b| b.iter(|| build_h_hat(&p)));
    c.bench_function("build_p2_hat", |b| b.iter(|| build_p2_hat(&p)));
}

fn matrices(c: &mut Criterion) {
    let mut g = c.benchmark_group("matrix_of");
    for d in [1u32, 2, 3] {
        let p = generic_params(d.into());
        let h = build_h_hat(&p);
        let p2 = build_p2_hat(&p);
        let basis = BasisVd::new(d);
        g.bench_with_input(BenchmarkId::new("h", d), &d, |b, _| {
            b.iter(|| matrix_of(&h, &basis).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("p2", d), &d, |b, _| {
            b.iter(|| matrix_of(&p2, &basis).unwrap())
        });
    }
    g.finish();
}

fn spectral(c: &mut Criterion) {
    let p = generic_params(3);
    let basis = BasisVd::new(3);
    let h = matrix_of(&build_h_hat(&p), &basis).unwrap();
    let p2 = matrix_of(&build_p2_hat(&p), &basis).unwrap();
    c.bench_function("commutator d=3", |b| {
        b.iter(|| commutator(&h, &p2).unwrap())
    });
    c.bench_function("char_poly symbolic d=3", |b| b.iter(|| char_poly(&p2)));
    let q = p2.specialize(&int(2), &int(-1)).unwrap();
    c.bench_function("char_poly_bareiss d=3", |b| {
        b.iter(|| char_poly_bareiss(&q))
    });
}

fn relations(c: &mut Criterion) {
    let mut g = c.benchmark_group("fit_relation");
    g.sample_size(10);
    let p = example_i();
    let basis = BasisVd::new(1);
    let (h, p2) = (
        matrix_of(&build_h_hat(&p), &basis).unwrap(),
        matrix_of(&build_p2_hat(&p), &basis).unwrap(),
    );
    g.bench_function("d=1 plane", |b| {
        b.iter(|| fit_relation(&h, &p2, 1, EDomain::Plane).unwrap())
    });
    let p = example_ii();
    let basis = BasisVd::new(2);
    let (h, p2) = (
        matrix_of(&build_h_hat(&p), &basis).unwrap(),
        matrix_of(&build_p2_hat(&p), &basis).unwrap(),
    );
    g.bench_function("d=2 line", |b| {
        b.iter(|| fit_relation(&h, &p2, 2, EDomain::Line).unwrap())
    });
    g.finish();
}

criterion_group!(benches, operators, matrices, spectral, relations);
criterion_main!(benches);
