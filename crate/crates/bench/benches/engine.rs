use criterion::{black_box, criterion_group, criterion_main, Criterion};

use grm_core::engine::scan::scan_exhaustive_dims;
use grm_core::kronecker::{embed2k, is_indecomposable, p_module, preinj2k, regular2k, Lambda};
use grm_core::{gr_measure, Caps, Fq, FqMatrix};

fn measures(c: &mut Criterion) {
    let caps = Caps::default();
    let f = Fq::new(2).unwrap();
    let p3 = p_module(3, 3, f).unwrap();
    let inj = embed2k(&preinj2k(3, f), 3).unwrap();
    c.bench_function("measure P3 n=3 q=2", |b| b.iter(|| gr_measure(black_box(&p3), &caps).unwrap()));
    c.bench_function("measure preinj2k(3) n=3 q=2", |b| b.iter(|| gr_measure(black_box(&inj), &caps).unwrap()));
    let reg = embed2k(&regular2k(3, Lambda::Finite(1), Fq::new(3).unwrap()).unwrap(), 3).unwrap();
    c.bench_function("indecomposable regular2k(3) q=3", |b| {
        b.iter(|| is_indecomposable(black_box(&reg), &caps).unwrap())
    });
}

fn scans(c: &mut Criterion) {
    let caps = Caps::default();
    let mut g = c.benchmark_group("exhaustive");
    g.sample_size(10);
    g.bench_function("n=3 q=2 dims (2,2) (2,3)", |b| {
        b.iter(|| scan_exhaustive_dims(3, 2, &[(2, 2), (2, 3)], &caps).unwrap())
    });
    g.finish();
}

fn linalg(c: &mut Criterion) {
    let f = Fq::new(5).unwrap();
    let data: Vec<u8> = (0..64u32).map(|i| ((i * 7 + i / 3) % 5) as u8).collect();
    let m = FqMatrix::new(f, 8, 8, data).unwrap();
    c.bench_function("rref 8x8 F5", |b| b.iter(|| black_box(&m).rref()));
}

criterion_group!(benches, measures, scans, linalg);
criterion_main!(benches);
