use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use covtype::constructions::moore_free_sweep;
use covtype::homology::homology_z_with;
use covtype::oracle::{enumerate_subcomplexes, EnumerationConfig, Visit};
use covtype::{Execution, SimplicialComplex};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_subcomplexes");
    group.sample_size(10);
    for n in [5, 6] {
        for (name, execution) in MODES {
            let config = EnumerationConfig {
                execution,
                ..Default::default()
            };
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| enumerate_subcomplexes(n, &config, |f| (Visit::Descend, Some(f.len()))).unwrap())
            });
        }
    }
    group.finish();
}

fn witness_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("moore_free_sweep");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| moore_free_sweep(black_box(20), 3, exec).unwrap())
        });
    }
    group.finish();
}

fn homology(c: &mut Criterion) {
    let mut group = c.benchmark_group("homology_z");
    let skeleton = SimplicialComplex::standard_simplex(10).skeleton(4);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| homology_z_with(black_box(&skeleton), exec)));
    }
    group.finish();
}

criterion_group!(benches, enumeration, witness_sweep, homology);
criterion_main!(benches);
