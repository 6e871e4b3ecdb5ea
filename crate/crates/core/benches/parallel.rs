use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use detcheck::asmtool::asm_enumerate_with;
use detcheck::catalog::{self, sample_qt_points, verify_qt_points, CaseId, TheoremCase};
use detcheck::par::Exec;
use detcheck::qseries::{wq_lhs, wq_rhs};
use detcheck::Rational;

const MODES: [Exec; 2] = [Exec::Sequential, Exec::Parallel];

fn label(e: Exec) -> &'static str {
    match e {
        Exec::Sequential => "sequential",
        Exec::Parallel => "parallel",
    }
}

fn theorem_suite(c: &mut Criterion) {
    let b = Rational::new(7.into(), 2.into());
    let cases: Vec<TheoremCase> = CaseId::ALL
        .into_iter()
        .filter(|id| id.params() == ["b"])
        .flat_map(|id| (1..=6).map(move |n| (id, n)))
        .map(|(id, n)| TheoremCase::new(id, n).with_b(b.clone()))
        .collect();
    let mut g = c.benchmark_group("theorem_suite");
    for e in MODES {
        g.bench_function(label(e), |bench| {
            bench.iter(|| e.map(&cases, |c| catalog::verify(black_box(c)).unwrap().equal))
        });
    }
    g.finish();
}

fn qt_points(c: &mut Criterion) {
    let points = sample_qt_points(4, 8, 0).unwrap();
    let mut g = c.benchmark_group("qt_points");
    g.sample_size(10);
    for e in MODES {
        g.bench_with_input(BenchmarkId::new(label(e), 4), &points, |bench, p| {
            bench.iter(|| verify_qt_points(4, black_box(p), false, e).unwrap())
        });
    }
    g.finish();
}

fn asm(c: &mut Criterion) {
    let mut g = c.benchmark_group("asm_enumerate");
    for e in MODES {
        g.bench_function(label(e), |bench| bench.iter(|| asm_enumerate_with(black_box(5), e).unwrap().count));
    }
    g.finish();
}

fn series(c: &mut Criterion) {
    let (a, b) = (wq_lhs(20), wq_rhs(20, false));
    let mut g = c.benchmark_group("series_product");
    g.sample_size(10);
    for e in MODES {
        g.bench_function(label(e), |bench| bench.iter(|| a.mul_with(black_box(&b), e)));
    }
    g.finish();
}

criterion_group!(benches, theorem_suite, qt_points, asm, series);
criterion_main!(benches);
