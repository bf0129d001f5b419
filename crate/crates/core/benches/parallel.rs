use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kft_core::construct::{star_construction, tree_of_cliques, TreeTemplate};
use kft_core::search::{search_minimum, SearchOptions};
use kft_core::verify::{verify_ft_with, VerifyOptions};
use kft_core::{Exec, FTParams};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_ft");
    let cases = [
        ("star-3-5-5", FTParams::new(3, 5, 5).unwrap(), star_construction(3, 5, 5).unwrap()),
        (
            "tree-2-8-3",
            FTParams::new(2, 8, 3).unwrap(),
            tree_of_cliques(2, 3, &TreeTemplate::path(8, 2, 3).unwrap()).unwrap(),
        ),
    ];
    for (name, params, g) in &cases {
        for (mode, exec) in MODES {
            let opts = VerifyOptions { exec, retain_witnesses: 0 };
            group.bench_with_input(BenchmarkId::new(mode, name), g, |b, g| {
                b.iter(|| verify_ft_with(g, *params, &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search_minimum");
    group.sample_size(10);
    let params = FTParams::new(1, 2, 3).unwrap();
    for (mode, exec) in MODES {
        let opts = SearchOptions { exec, ..SearchOptions::default() };
        group.bench_function(BenchmarkId::new(mode, "1-2-3"), |b| b.iter(|| search_minimum(params, 12, &opts).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, verify, search);
criterion_main!(benches);
