use canmod_bench::belyi_triple;
use canmod_core::belyi::{case_map, verify_belyi};
use canmod_core::cosets::enumerate_cosets;
use canmod_core::qexp::{assemble_canonical_model, j_series};
use canmod_core::quatalg::CaseOrders;
use canmod_core::Case;
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

fn orders(c: &mut Criterion) {
    let mut g = c.benchmark_group("orders");
    for case in Case::ALL {
        g.bench_with_input(BenchmarkId::from_parameter(case), &case, |b, &case| b.iter(|| CaseOrders::build(black_box(case)).unwrap()));
    }
    g.finish();
}

fn cosets(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_cosets");
    for case in Case::ALL {
        let o = CaseOrders::build(case).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(case), &o, |b, o| b.iter(|| enumerate_cosets(black_box(&o.gamma_prime_integral)).unwrap()));
    }
    g.finish();
}

fn belyi(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_belyi");
    g.sample_size(20);
    for case in Case::ALL {
        let bm = case_map(case);
        let t = belyi_triple(case);
        g.bench_with_input(BenchmarkId::from_parameter(case), &(bm, t), |b, (bm, t)| b.iter(|| verify_belyi(black_box(&bm.map), &bm.curve, t)));
    }
    g.finish();
}

fn qexp(c: &mut Criterion) {
    c.bench_function("j_series/64", |b| b.iter(|| j_series(black_box(64))));
    let mut g = c.benchmark_group("canonical_model");
    g.sample_size(10);
    for case in Case::ALL {
        g.bench_with_input(BenchmarkId::from_parameter(case), &case, |b, &case| b.iter(|| assemble_canonical_model(black_box(case), 16).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, orders, cosets, belyi, qexp);
criterion_main!(benches);
