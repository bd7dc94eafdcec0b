use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use ordopoly_bench::{grids, sample_words};
use ordopoly_core::extension::histogram;
use ordopoly_core::{deletable_set, enumerate_extensions, extended, EnumOptions, StructuredTable};

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    for (name, g) in grids() {
        let count = enumerate_extensions(&g).count() as u64;
        group.throughput(Throughput::Elements(count));
        group.bench_with_input(BenchmarkId::new("iterator", name), &g, |b, g| {
            b.iter(|| enumerate_extensions(g).count())
        });
        group.bench_with_input(BenchmarkId::new("histogram", name), &g, |b, g| {
            let single = EnumOptions::unlimited().with_threads(1);
            b.iter(|| histogram(g, &single).unwrap())
        });
    }
    group.finish();
}

fn statistics(c: &mut Criterion) {
    let (g, words) = sample_words();
    let mut group = c.benchmark_group("statistics");
    group.throughput(Throughput::Elements(words.len() as u64));
    group.bench_function("deletable_set 3x4", |b| {
        b.iter(|| {
            words
                .iter()
                .map(|w| deletable_set(&g, w).unwrap().len())
                .sum::<usize>()
        })
    });
    group.finish();
}

fn expansion(c: &mut Criterion) {
    let (_, g) = grids().pop().unwrap();
    let table = extended(&g).unwrap().table().clone();
    c.bench_function("expand table 4x4", |b| {
        b.iter(|| StructuredTable::expand(&table))
    });
}

criterion_group!(benches, enumeration, statistics, expansion);
criterion_main!(benches);
