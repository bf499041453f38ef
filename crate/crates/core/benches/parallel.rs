use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cr_spectra::algebra::rational::ratio;
use cr_spectra::crops::{connection_data, verify_structure_equations, VerifyOptions};
use cr_spectra::exec::Execution;
use cr_spectra::spectral::{kohn_block_with, negative_spectrum_sweep, SeedChoice};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn sweep(c: &mut Criterion) {
    let ts = [ratio(1, 2), ratio(1, 3)];
    let mut group = c.benchmark_group("paneitz_sweep_k6");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, exec| {
            b.iter(|| negative_spectrum_sweep(&ts, 6, 128, &SeedChoice::Default, *exec).unwrap())
        });
    }
    group.finish();
}

fn kohn_blocks(c: &mut Criterion) {
    let geom = connection_data(&ratio(1, 2)).unwrap();
    let mut group = c.benchmark_group("kohn_block_degree6");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, exec| {
            b.iter(|| kohn_block_with(&geom, 6, *exec).unwrap())
        });
    }
    group.finish();
}

fn identities(c: &mut Criterion) {
    let geom = connection_data(&ratio(1, 2)).unwrap();
    let mut group = c.benchmark_group("identity_suite");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = VerifyOptions {
            samples: 8,
            max_degree: 4,
            basis_degree: 4,
            execution: exec,
            ..Default::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(name), &opts, |b, opts| {
            b.iter(|| verify_structure_equations(&geom, opts))
        });
    }
    group.finish();
}

criterion_group!(benches, sweep, kohn_blocks, identities);
criterion_main!(benches);
