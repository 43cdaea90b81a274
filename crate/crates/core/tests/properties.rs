use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use radtower::autfield::{apply, decode_element, encode_element, sigma, FieldAut};
use radtower::fieldtower::checks::{random_element, random_monomial, rng};
use radtower::fieldtower::{Ctx, Depths, TowerCtx, TowerElement};
use radtower::graphs::{aut_colored, transform, Graph};
use radtower::roots::valuation::valuation_vector;

fn k2() -> &'static Ctx {
    static CTX: OnceLock<Ctx> = OnceLock::new();
    CTX.get_or_init(|| {
        let g = Graph::from_indices(2, &[(0, 1)]).unwrap();
        let cg = radtower::graphs::ColoredGraph::new(g, vec![0], 1).unwrap();
        Arc::new(TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: 1, edge: 1 }, u128::MAX).unwrap())
    })
}

/// The tower of transform(K2) with every `σ(φ)`.
fn plus_k2() -> &'static (Ctx, Vec<FieldAut>) {
    static CTX: OnceLock<(Ctx, Vec<FieldAut>)> = OnceLock::new();
    CTX.get_or_init(|| {
        let cg = transform(&Graph::from_indices(2, &[(0, 1)]).unwrap()).unwrap();
        let ctx: Ctx =
            Arc::new(TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: 1, edge: 1 }, u128::MAX).unwrap());
        let sig = aut_colored(&cg).unwrap().elements().iter().map(|p| sigma(&cg, &ctx, p).unwrap()).collect();
        (ctx, sig)
    })
}

fn elements(ctx: &Ctx, seed: u64, n: usize) -> Vec<TowerElement> {
    let mut r = rng(seed);
    (0..n).map(|_| random_element(ctx, &mut r)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let e = elements(k2(), seed, 3);
        let (a, b, c) = (&e[0], &e[1], &e[2]);
        prop_assert_eq!(a.add(b), b.add(a));
        prop_assert_eq!(a.mul(b), b.mul(a));
        prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
        prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
        prop_assert!(a.sub(a).is_zero());
    }

    #[test]
    fn inverses(seed in any::<u64>()) {
        let a = &elements(k2(), seed, 1)[0];
        prop_assume!(!a.is_zero());
        prop_assert_eq!(a.mul(&a.inv().unwrap()), TowerElement::one(k2()));
    }

    #[test]
    fn valuations_add(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_monomial(k2(), &mut r);
        let b = random_monomial(k2(), &mut r);
        let (va, vb, vab) =
            (valuation_vector(&a).unwrap(), valuation_vector(&b).unwrap(), valuation_vector(&a.mul(&b)).unwrap());
        for ((x, y), z) in va.iter().zip(&vb).zip(&vab) {
            if let (Some(u), Some(v), Some(w)) = (x.value, y.value, z.value) {
                prop_assert_eq!(u + v, w, "{}", x.label);
            }
        }
    }

    #[test]
    fn sigma_is_a_homomorphism(seed in any::<u64>()) {
        let (ctx, sig) = plus_k2();
        let e = elements(ctx, seed, 2);
        for s in sig {
            prop_assert_eq!(apply(s, &e[0].mul(&e[1])), apply(s, &e[0]).mul(&apply(s, &e[1])));
            prop_assert_eq!(apply(s, &e[0].add(&e[1])), apply(s, &e[0]).add(&apply(s, &e[1])));
        }
    }

    #[test]
    fn psi_is_injective(seed in any::<u64>()) {
        let (ctx, _) = plus_k2();
        let e = elements(ctx, seed, 2);
        let (ca, cb) = (encode_element(&e[0]).unwrap(), encode_element(&e[1]).unwrap());
        prop_assert_eq!(ca == cb, e[0] == e[1]);
        prop_assert_eq!(decode_element(ctx, &ca).unwrap(), e[0].clone());
    }
}
