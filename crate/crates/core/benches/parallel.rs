use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use colorlie_core::braid::{chain_spectrum, Level};
use colorlie_core::colorlie::{build_algebra, check_epsilon_jacobi_with};
use colorlie_core::fock::{
    default_seeds, density_grid_with, find_local_maxima_with, symmetrized_density,
};
use colorlie_core::grading::{classify_inequivalent_with, search_tables_with, DEFAULT_BUDGET};
use colorlie_core::{Cyclotomic, Exec};

const POLICIES: [(&str, Exec); 2] = [("seq", Exec::Sequential), ("par", Exec::Parallel)];

fn jacobi(c: &mut Criterion) {
    let alg = build_algebra("hpf_s6", 6).unwrap();
    let mut g = c.benchmark_group("jacobi_hpf_s6");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        g.bench_function(name, |b| {
            b.iter(|| black_box(check_epsilon_jacobi_with(&alg, exec)))
        });
    }
    g.finish();
}

fn density(c: &mut Criterion) {
    let f = symmetrized_density(2, &Cyclotomic::j1(), 8).unwrap();
    let mut g = c.benchmark_group("density_grid");
    for res in [100, 400] {
        for (name, exec) in POLICIES {
            g.bench_with_input(BenchmarkId::new(name, res), &res, |b, &res| {
                b.iter(|| black_box(density_grid_with(&f, 2.0, res, exec).unwrap()))
            });
        }
    }
    g.finish();
}

fn maxima(c: &mut Criterion) {
    let f = symmetrized_density(2, &Cyclotomic::j1(), 8).unwrap();
    let seeds = default_seeds();
    let mut g = c.benchmark_group("maxima");
    for (name, exec) in POLICIES {
        g.bench_function(name, |b| {
            b.iter(|| black_box(find_local_maxima_with(&f, &seeds, exec)))
        });
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search_z2_z3z3");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        g.bench_function(name, |b| {
            b.iter(|| {
                let t = search_tables_with(1, 2, 6, DEFAULT_BUDGET, exec).unwrap();
                black_box(classify_inequivalent_with(&t, exec).unwrap())
            })
        });
    }
    g.finish();
}

// independent chain diagonalizations fanned out over the policy
fn chain_sweep(c: &mut Criterion) {
    let cases: Vec<(usize, u32)> = (1..=8).flat_map(|n| (2..=6).map(move |s| (n, s))).collect();
    let mut g = c.benchmark_group("chain_sweep");
    g.sample_size(10);
    for (name, exec) in POLICIES {
        g.bench_function(name, |b| {
            b.iter(|| {
                black_box(exec.map(&cases, |&(n, s)| {
                    chain_spectrum(n, Level::Finite(s)).unwrap()
                }))
            })
        });
    }
    g.finish();
}

criterion_group!(benches, jacobi, density, maxima, search, chain_sweep);
criterion_main!(benches);
