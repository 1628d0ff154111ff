use criterion::{criterion_group, criterion_main, Criterion};

use pentagram_core::classifier::{signatures, signatures_serial, ClassifiedContexts};
use pentagram_core::enumerator::{
    enumerate_pentagrams, enumerate_pentagrams_serial, ContextCatalog, ContextGraph,
};

fn bench_catalog(c: &mut Criterion) {
    c.bench_function("context_catalog", |b| b.iter(ContextCatalog::enumerate));
}

fn bench_pentagram_search(c: &mut Criterion) {
    let catalog = ContextCatalog::enumerate();
    let graph = ContextGraph::build(&catalog);
    let mut group = c.benchmark_group("pentagram_search");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| enumerate_pentagrams(&graph).unwrap())
    });
    group.bench_function("serial", |b| {
        b.iter(|| enumerate_pentagrams_serial(&graph).unwrap())
    });
    group.finish();
}

fn bench_signature_pass(c: &mut Criterion) {
    let catalog = ContextCatalog::enumerate();
    let graph = ContextGraph::build(&catalog);
    let pentagrams = enumerate_pentagrams(&graph).unwrap();
    let classified = ClassifiedContexts::build(&catalog);
    let mut group = c.benchmark_group("signature_pass");
    group.bench_function("parallel", |b| b.iter(|| signatures(&pentagrams, &classified)));
    group.bench_function("serial", |b| {
        b.iter(|| signatures_serial(&pentagrams, &classified))
    });
    group.finish();
}

criterion_group!(benches, bench_catalog, bench_pentagram_search, bench_signature_pass);
criterion_main!(benches);
