use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use boolgeo::algebra::{Algebra, CAlgebra};
use boolgeo::normalizer::canonicalize_system;
use boolgeo::sample::{stream, TermSampler};
use boolgeo::solver::enumerate_solutions;
use boolgeo::{Execution, NormalizerConfig, SolverConfig, System};

fn host() -> CAlgebra {
    let a = Algebra::Finite { atoms: 4 };
    CAlgebra::new(
        a,
        [
            ("c1", a.set([0, 1]).unwrap()),
            ("c2", a.set([1, 2]).unwrap()),
        ],
    )
    .unwrap()
}

fn corpus(calg: &CAlgebra, vars: usize, count: usize) -> Vec<System> {
    let sampler = TermSampler::for_algebra(vars, calg, 3);
    (0..count as u64)
        .map(|i| sampler.system(&mut stream(11, i), 3))
        .collect()
}

fn config(exec: Execution) -> SolverConfig {
    SolverConfig {
        normalizer: NormalizerConfig {
            exec,
            ..NormalizerConfig::default()
        },
        ..SolverConfig::default()
    }
}

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn enumeration(c: &mut Criterion) {
    let calg = host();
    let systems = corpus(&calg, 3, 4);
    let mut group = c.benchmark_group("enumerate_3vars_16elems");
    for (name, exec) in MODES {
        let cfg = config(exec);
        group.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| {
            b.iter(|| {
                for s in &systems {
                    enumerate_solutions(s, &calg, cfg).unwrap();
                }
            })
        });
    }
    group.finish();
}

fn normalization(c: &mut Criterion) {
    let calg = host();
    let systems = corpus(&calg, 6, 16);
    let mut group = c.benchmark_group("canonicalize_6vars");
    for (name, exec) in MODES {
        let cfg = config(exec);
        group.bench_with_input(BenchmarkId::from_parameter(name), &cfg, |b, cfg| {
            b.iter(|| {
                for s in &systems {
                    canonicalize_system(s, &calg, &cfg.normalizer).unwrap();
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, enumeration, normalization);
criterion_main!(benches);
