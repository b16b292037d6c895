use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use bitload::families::{BitVector, Family};
use bitload::passes::{self, CswapLowering};
use bitload::sim::run_zero;

fn input(len: usize) -> BitVector {
    let v: Vec<bool> = (0..len).map(|i| (i * 7 + 3) % 5 < 2).collect();
    BitVector::new(v).unwrap()
}

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    for n in [4usize, 6, 8] {
        let bits = input(1 << n);
        for family in [Family::TwoPlain, Family::TwoErasure, Family::Three] {
            g.bench_with_input(BenchmarkId::new(family.to_string(), 1 << n), &bits, |b, bits| {
                b.iter(|| family.build(black_box(bits)))
            });
        }
    }
    g.finish();
}

fn simulate(c: &mut Criterion) {
    let mut g = c.benchmark_group("simulate");
    for n in [2usize, 3, 4] {
        let bits = input(1 << n);
        for family in [Family::TwoPlain, Family::TwoErasure, Family::Three] {
            let circuit = family.build(&bits).circuit;
            g.bench_with_input(BenchmarkId::new(family.to_string(), 1 << n), &circuit, |b, c| {
                b.iter(|| run_zero(black_box(c)).unwrap())
            });
        }
    }
    g.finish();
}

fn lower(c: &mut Criterion) {
    let circuit = Family::Three.build(&input(256)).circuit;
    c.bench_function("lower/cswap-three-toffoli/256", |b| {
        b.iter(|| passes::lower_cswap(black_box(&circuit), CswapLowering::ThreeToffoli))
    });
}

criterion_group!(benches, build, simulate, lower);
criterion_main!(benches);
