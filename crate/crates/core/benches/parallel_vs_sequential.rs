use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lvk_core::exec::{self, Mode};
use lvk_core::fuzz::{random_diagram, random_walk, rng};
use lvk_core::invariants::{catalog, Colorer};
use lvk_core::search::equivalent_within_in;
use lvk_core::{Budget, GaussDiagram};

fn pair() -> (GaussDiagram, GaussDiagram) {
    let mut g = rng(42);
    let base = random_diagram(&mut g, 4);
    let (end, _) = random_walk(&mut g, &base, 6, 6);
    (base, end)
}

fn modes(c: &mut Criterion) {
    let (a, b) = pair();
    let budget = Budget::default_for(&[&a, &b]);
    let structures = catalog(3);
    let knots: Vec<GaussDiagram> = (0..32).map(|i| random_diagram(&mut rng(i), 6)).collect();

    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for mode in [Mode::Sequential, Mode::Parallel] {
        group.bench_with_input(BenchmarkId::new("equivalent_within", format!("{mode:?}")), &mode, |bch, &mode| {
            bch.iter(|| equivalent_within_in(mode, &a, &b, &budget))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("coloring");
    for mode in [Mode::Sequential, Mode::Parallel] {
        group.bench_with_input(BenchmarkId::new("catalog_matrices", format!("{mode:?}")), &mode, |bch, &mode| {
            bch.iter(|| {
                exec::map(mode, &structures, |x| {
                    let c = Colorer::new(x).unwrap();
                    knots.iter().map(|k| c.matrix(k).unwrap().total()).sum::<u64>()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, modes);
criterion_main!(benches);
