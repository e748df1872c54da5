use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use pslnet::graph::build_network;
use pslnet::ingest::build_index;
use pslnet::metrics::{self, ClusteringMode, MetricOptions, PairConvention};
use pslnet::models::{self, ModelKind, ModelSpec};
use pslnet::MetricReport;
use pslnet_bench::{league, psl_scale};

fn network(c: &mut Criterion) {
    let matches = league(284, 214, 1);
    c.bench_function("build_index", |b| b.iter(|| build_index(black_box(&matches))));
    let index = build_index(&matches);
    c.bench_function("build_network", |b| {
        b.iter(|| build_network(black_box(&index), black_box(&matches)).unwrap())
    });
}

fn centrality(c: &mut Criterion) {
    let (_, _, graph) = psl_scale(1);
    let mut group = c.benchmark_group("metrics");
    group.bench_function("betweenness", |b| {
        b.iter(|| metrics::betweenness(black_box(&graph), PairConvention::Ordered))
    });
    group.bench_function("closeness", |b| b.iter(|| metrics::closeness(black_box(&graph))));
    for mode in [ClusteringMode::Weighted, ClusteringMode::Binary] {
        group.bench_with_input(BenchmarkId::new("local_clustering", format!("{mode:?}")), &mode, |b, &m| {
            b.iter(|| metrics::local_clustering(black_box(&graph), m))
        });
    }
    group.bench_function("full_report", |b| {
        b.iter(|| MetricReport::compute(black_box(&graph), MetricOptions::default()))
    });
    group.finish();
}

fn generators(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate");
    for kind in ModelKind::ALL {
        let spec = ModelSpec {
            kind,
            n: 284,
            target_pairs: 3920,
            ws_rewire_p: models::DEFAULT_WS_REWIRE_P,
            seed: 0,
        };
        group.bench_function(kind.label(), |b| b.iter(|| models::generate(black_box(&spec)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, network, centrality, generators);
criterion_main!(benches);
