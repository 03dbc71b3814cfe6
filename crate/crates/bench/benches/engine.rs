use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use disjoint_sm::{disjoint_stable_matchings, gale_shapley, gs_lists, Side, Workload};

const SIZES: [usize; 4] = [100, 250, 500, 1000];

const WORKLOADS: [Workload; 2] = [Workload::Cyclic, Workload::Random { base_seed: 0 }];

fn bench_disjoint(c: &mut Criterion) {
    for workload in WORKLOADS {
        let mut group = c.benchmark_group(format!("disjoint/{}", workload.name()));
        group.sample_size(20);
        for n in SIZES {
            let inst = workload.instance(n).unwrap();
            group.throughput(Throughput::Elements(inst.input_size() as u64));
            group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
                b.iter(|| disjoint_stable_matchings(black_box(inst)))
            });
        }
        group.finish();
    }
}

fn bench_gale_shapley(c: &mut Criterion) {
    let mut group = c.benchmark_group("gale_shapley/random");
    for n in SIZES {
        let inst = Workload::Random { base_seed: 0 }.instance(n).unwrap();
        group.throughput(Throughput::Elements(inst.input_size() as u64));
        group.bench_with_input(BenchmarkId::new("men", n), &inst, |b, inst| {
            b.iter(|| gale_shapley(black_box(inst), Side::Men))
        });
        group.bench_with_input(BenchmarkId::new("women", n), &inst, |b, inst| {
            b.iter(|| gale_shapley(black_box(inst), Side::Women))
        });
    }
    group.finish();
}

fn bench_gs_lists(c: &mut Criterion) {
    let mut group = c.benchmark_group("gs_lists/random");
    group.sample_size(20);
    for n in SIZES {
        let inst = Workload::Random { base_seed: 0 }.instance(n).unwrap();
        group.throughput(Throughput::Elements(inst.input_size() as u64));
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| gs_lists(black_box(inst)).pair_count())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_disjoint, bench_gale_shapley, bench_gs_lists);
criterion_main!(benches);
