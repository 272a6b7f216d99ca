use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rs_repair::repair_engine::{measure_bandwidth, repair_codeword, to_query_scheme};
use rs_repair::rng::SplitMix64;
use rs_repair::schemes::{SchemeFactory, SchemeSpec};
use rs_repair::FieldCtx;

fn factory(json: &str) -> SchemeFactory {
    serde_json::from_str::<SchemeSpec>(json).unwrap().build().unwrap()
}

const SPECS: [(&str, &str); 3] = [
    ("II_rs7_5", r#"{"construction":"II","field":"gf(2,9)","n":7,"k":5,"a":3,"s":1}"#),
    ("two_coset_rs14_11", r#"{"construction":"two_coset","field":"gf(2,12)","n":14,"k":11,"a":4,"m1":0,"m2":1}"#),
    ("III_rs7_3", r#"{"construction":"III","field":"gf(2,9)","n":7,"k":3,"a":3,"e":2}"#),
];

fn field_ops(c: &mut Criterion) {
    let mut group = c.benchmark_group("field");
    for ell in [9, 16, 48] {
        let f = FieldCtx::new(2, ell, None).unwrap();
        let mut rng = SplitMix64::new(1);
        let (x, y) = (f.random_nonzero(&mut rng), f.random_nonzero(&mut rng));
        group.bench_with_input(BenchmarkId::new("mul", ell), &ell, |b, _| b.iter(|| f.mul(black_box(x), black_box(y))));
        group.bench_with_input(BenchmarkId::new("inv", ell), &ell, |b, _| b.iter(|| f.inv(black_box(x))));
        group.bench_with_input(BenchmarkId::new("trace", ell), &ell, |b, _| b.iter(|| f.trace_base(black_box(x))));
    }
    group.finish();
}

fn schemes(c: &mut Criterion) {
    let mut group = c.benchmark_group("scheme");
    for (name, json) in SPECS {
        let f = factory(json);
        let failed = f.failure_sets()[0].clone();
        let s = f.scheme_for(&failed).unwrap();
        let cw = f.code.random_codeword(&mut SplitMix64::new(7));
        let q = to_query_scheme(&s).unwrap();
        group.bench_function(BenchmarkId::new("build", name), |b| b.iter(|| f.scheme_for(black_box(&failed)).unwrap()));
        group.bench_function(BenchmarkId::new("bandwidth", name), |b| b.iter(|| measure_bandwidth(black_box(&s)).unwrap()));
        group.bench_function(BenchmarkId::new("repair", name), |b| b.iter(|| repair_codeword(&s, black_box(&cw)).unwrap()));
        group.bench_function(BenchmarkId::new("query", name), |b| b.iter(|| q.execute(&f.code, black_box(&cw))));
    }
    group.finish();
}

criterion_group!(benches, field_ops, schemes);
criterion_main!(benches);
