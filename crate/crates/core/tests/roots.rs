use std::sync::Arc;
use std::time::Instant;

use radtower::fieldtower::checks::rng;
use radtower::fieldtower::tower::DEFAULT_DIM_CAP;
use radtower::fieldtower::{generator_var, Ctx, Depths, TowerCtx};
use radtower::graphs::{ColoredGraph, Graph};
use radtower::roots::corpus::{random_high_monomial, random_structured, random_unstructured};
use radtower::roots::{is_p_high, pth_root, HighVerdict, RootOptions, RootResult};

fn tower(cg: &ColoredGraph) -> Ctx {
    Arc::new(TowerCtx::graph_tower(cg, 0, &Depths::Uniform { vertex: 1, edge: 1 }, DEFAULT_DIM_CAP).unwrap())
}

fn k2() -> Ctx {
    tower(&ColoredGraph::monochromatic(Graph::complete(2)))
}

fn round_trip(ctx: &Ctx, n: usize, seed: u64) {
    let ctx = ctx.clone();
    let mut r = rng(seed);
    let t = Instant::now();
    for p in [ctx.primes()[0], ctx.primes()[1]] {
        for _ in 0..n {
            let b = random_structured(&ctx, &mut r);
            let a = b.pow(p);
            match pth_root(&a, p) {
                RootResult::Root(w) => assert_eq!(w.pow(p), a),
                other => panic!("{} for p = {p}: {other:?}", b.fmt_pretty()),
            }
        }
    }
    eprintln!("round trip {:?}", t.elapsed());
}

#[test]
fn round_trip_towers() {
    round_trip(&k2(), 200, 11);
    round_trip(&tower(&ColoredGraph::monochromatic(Graph::path(3))), 200, 12);
    round_trip(&tower(&ColoredGraph::new(Graph::complete(3), vec![0, 1, 2], 3).unwrap()), 200, 13);
}

#[test]
fn high_corpus_k2() {
    let ctx = k2();
    let p0 = ctx.primes()[0];
    let mut r = rng(5);
    let o = RootOptions::default();
    let t = Instant::now();
    for _ in 0..20 {
        let a = random_high_monomial(&ctx, p0, &mut r);
        assert_eq!(is_p_high(&a, p0, 3, &o), HighVerdict::True, "{}", a.fmt_pretty());
    }
    eprintln!("high {:?}", t.elapsed());
    let t = Instant::now();
    let mut refuted = 0;
    for _ in 0..20 {
        let a = random_unstructured(&ctx, p0, &mut r);
        let v = is_p_high(&a, p0, 3, &o);
        assert_ne!(v, HighVerdict::True, "{}", a.fmt_pretty());
        refuted += (v == HighVerdict::False) as usize;
    }
    eprintln!("unstructured {:?} refuted {refuted}", t.elapsed());
    let _ = generator_var(&ctx, 0, 0);
}
