use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qsudoku::{build_sfd, verify_design, verify_oa_strength, ProjectionSpec};
use qsudoku_bench::construction;

const SIZES: &[(usize, usize)] = &[(4, 3), (5, 4), (7, 3), (8, 5)];

fn bench_construct(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct");
    for &(m, n) in SIZES {
        let spec = ProjectionSpec::coordinate(m, n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(format!("{m}x{n}")), &spec, |b, spec| {
            b.iter(|| construction(m, n, spec))
        });
    }
    group.finish();
}

fn bench_strength(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_oa_strength");
    for &(m, n) in SIZES {
        let built = construction(m, n, &ProjectionSpec::coordinate(m, n).unwrap());
        group.bench_function(format!("{m}x{n}"), |b| b.iter(|| verify_oa_strength(&built.array, 2)));
    }
    group.finish();
}

fn bench_sfd(c: &mut Criterion) {
    let mut group = c.benchmark_group("sfd");
    for &(m, n) in SIZES {
        let built = construction(m, n, &ProjectionSpec::coordinate(m, n).unwrap());
        group.bench_function(format!("build {m}x{n}"), |b| {
            b.iter(|| build_sfd(&built.sliced, 7).unwrap())
        });
        let design = build_sfd(&built.sliced, 7).unwrap();
        group.bench_function(format!("verify {m}x{n}"), |b| b.iter(|| verify_design(&design)));
    }
    group.finish();
}

criterion_group!(benches, bench_construct, bench_strength, bench_sfd);
criterion_main!(benches);
