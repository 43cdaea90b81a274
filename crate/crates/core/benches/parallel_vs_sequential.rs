use criterion::{criterion_group, criterion_main, Criterion};

use radtower::fieldtower::checks::{random_element, rng};
use radtower::graphs::corpus::connected_graphs_up_to;
use radtower::par;
use radtower::roots::pth_root;
use radtower::suite::{depth_one, graph_color_report, test_towers};

fn graph_corpus(c: &mut Criterion) {
    let corpus = connected_graphs_up_to(5);
    let mut g = c.benchmark_group("graph_color_corpus");
    g.sample_size(10);
    g.bench_function("parallel", |b| b.iter(|| par::map(&corpus, graph_color_report)));
    g.bench_function("sequential", |b| b.iter(|| par::map_range_seq(corpus.len(), |i| graph_color_report(&corpus[i]))));
    g.finish();
}

fn round_trip(c: &mut Criterion) {
    let ctx = depth_one(&test_towers()[0].1).unwrap();
    let p = ctx.primes()[0];
    let one = |i: usize| {
        let b = random_element(&ctx, &mut rng(i as u64));
        pth_root(&b.pow(p), p)
    };
    let mut g = c.benchmark_group("root_round_trip");
    g.sample_size(10);
    g.bench_function("parallel", |b| b.iter(|| par::map_range(32, one)));
    g.bench_function("sequential", |b| b.iter(|| par::map_range_seq(32, one)));
    g.finish();
}

criterion_group!(benches, graph_corpus, round_trip);
criterion_main!(benches);
