use std::hint::black_box;

use bcm_core::logic::horn::HornSystem;
use bcm_core::logic::prop::Signature;
use bcm_core::poset::uniqueness_audit;
use bcm_core::{Exec, FiniteLogic, SatSystem, SelectionPolicy};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn horn(atoms: &str) -> HornSystem {
    HornSystem::new(Signature::parse(atoms).unwrap())
}

fn catalog_build(c: &mut Criterion) {
    let mut group = c.benchmark_group("catalog");
    group.sample_size(10);
    let sys = horn("p,q,r,s");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("horn4", name), |b| {
            b.iter(|| black_box(sys.build_catalog(exec).unwrap().len()))
        });
    }
    group.finish();
}

fn postulate_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("postulates");
    group.sample_size(10);
    let policy = SelectionPolicy::default();
    for (name, exec) in MODES {
        let logic = FiniteLogic::with_exec(horn("p,q,r"), exec).unwrap();
        let cases = logic.exhaustive_cases().unwrap();
        group.bench_function(BenchmarkId::new("horn3-evict", name), |b| {
            b.iter(|| {
                let op = logic.evict_op(&policy);
                black_box(logic.check_eviction_postulates(&op, &cases).unwrap().passed())
            })
        });
    }
    group.finish();
}

fn audit(c: &mut Criterion) {
    let mut group = c.benchmark_group("audit");
    group.sample_size(10);
    let catalog = horn("p,q,r,s").build_catalog(Exec::Parallel).unwrap();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("horn4", name), |b| {
            b.iter(|| black_box(uniqueness_audit(&catalog, exec).unwrap().frsups_unique()))
        });
    }
    group.finish();
}

criterion_group!(benches, catalog_build, postulate_grid, audit);
criterion_main!(benches);
