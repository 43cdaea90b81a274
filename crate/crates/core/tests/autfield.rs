use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use radtower::autfield::{
    apply, check_substitution, decode_element, encode_element, minimal_support, sigma, verify_injectivity_sigma,
};
use radtower::fieldtower::checks::{random_element, rng};
use radtower::fieldtower::{generator_radical, generator_var, Ctx, Depths, Poly, TowerCtx, TowerElement};
use radtower::graphs::{aut_colored, transform, ColoredGraph, Graph};
use radtower::Error;

fn plus_tower(g: &Graph) -> (ColoredGraph, Ctx) {
    let cg = transform(g).unwrap();
    let ctx = TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: 1, edge: 1 }, u128::MAX).unwrap();
    (cg, Arc::new(ctx))
}

fn sigma_suite(g: &Graph, expected: usize, pairs: usize) {
    let t = Instant::now();
    let (cg, ctx) = plus_tower(g);
    let aut = aut_colored(&cg).unwrap();
    let rep = verify_injectivity_sigma(&cg, &ctx, &aut).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert_eq!(rep.image_order, expected);
    let mut r = rng(3);
    let mut codes = BTreeMap::new();
    for _ in 0..pairs {
        for _ in 0..2 {
            let a = random_element(&ctx, &mut r);
            let c = encode_element(&a).unwrap();
            assert_eq!(decode_element(&ctx, &c).unwrap(), a);
            if let Some(b) = codes.insert(c, a.clone()) {
                assert_eq!(b, a);
            }
            for phi in aut.elements() {
                let s = sigma(&cg, &ctx, phi).unwrap();
                let rel = c_relabel(&encode_element(&a).unwrap(), &cg, phi);
                assert_eq!(encode_element(&apply(&s, &a)).unwrap(), rel, "{}", a.fmt_pretty());
            }
        }
    }
    eprintln!("{} vertices, {} radicals: {:?}", ctx.nvars(), ctx.nradicals(), t.elapsed());
}

fn c_relabel(c: &radtower::autfield::Code, cg: &ColoredGraph, phi: &radtower::groups::Perm) -> radtower::autfield::Code {
    let g = &cg.graph;
    c.relabel(|l| g.label(phi.apply(g.vertex(l).unwrap())).to_string())
}

#[test]
fn sigma_k2() {
    sigma_suite(&Graph::complete(2), 2, 200);
}

#[test]
fn sigma_k3() {
    sigma_suite(&Graph::complete(3), 6, 100);
}

#[test]
fn negative_control() {
    let cg = ColoredGraph::monochromatic(Graph::complete(2));
    let ctx: Ctx = Arc::new(TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: 1, edge: 1 }, 2000).unwrap());
    let n = ctx.nvars();
    let images = vec![Poly::var(n, 0, 0).add(&Poly::one(n, 0)), Poly::var(n, 0, 1)];
    assert!(matches!(check_substitution(&ctx, &images, &[0]), Err(Error::RelationBroken(_))));
}

#[test]
fn supports() {
    let cg = ColoredGraph::monochromatic(Graph::complete(2));
    let ctx: Ctx = Arc::new(TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: 1, edge: 1 }, 2000).unwrap());
    let xs = generator_var(&ctx, 0, 0).unwrap();
    let xe = generator_radical(&ctx, 0, 0).unwrap();
    let one = TowerElement::one(&ctx);
    assert_eq!(minimal_support(&xs).len(), 1);
    assert_eq!(minimal_support(&xe).len(), 2);
    let t = xe.sub(&xs).sub(&one);
    assert_eq!(minimal_support(&t).into_iter().collect::<Vec<_>>(), vec![ctx.var_names()[1].clone()]);
}
