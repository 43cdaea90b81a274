//! Desk checks on a tower: random elements, the primality smoke test and the
//! bounded algebraic-independence search.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Error;
use crate::par;

use super::element::{RadMono, TowerElement};
use super::poly::{coef_int, Coef, Mono, Poly};
use super::tower::Ctx;

/// Deterministic generator for a given seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_nonzero<R: Rng>(rng: &mut R) -> i64 {
    let v = rng.gen_range(1..=5);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// A small polynomial coefficient: a nonzero integer, or `X_s + c`.
fn small_coef<R: Rng>(ctx: &Ctx, rng: &mut R) -> Poly {
    let (n, ch) = (ctx.nvars(), ctx.characteristic());
    let c = Poly::int(n, ch, small_nonzero(rng));
    if n == 0 || rng.gen_bool(0.5) {
        if c.is_zero() {
            return Poly::one(n, ch);
        }
        return c;
    }
    let s = rng.gen_range(0..n);
    Poly::var(n, ch, s).add(&c)
}

/// `c · X^k · Y^m` with a nonzero integer `c`.
pub fn random_monomial<R: Rng>(ctx: &Ctx, rng: &mut R) -> TowerElement {
    let (n, ch) = (ctx.nvars(), ctx.characteristic());
    let mut k: Mono = vec![0; n];
    if n > 0 {
        k[rng.gen_range(0..n)] = rng.gen_range(0..=2);
    }
    let c = super::poly::coef_reduce(coef_int(small_nonzero(rng)), ch);
    let c = if c.is_zero() { Coef::one() } else { c };
    let m: RadMono = ctx
        .orders()
        .iter()
        .map(|&o| if rng.gen_bool(0.5) { rng.gen_range(0..o) as u32 } else { 0 })
        .collect();
    TowerElement::from_parts(ctx, [(m, Poly::monomial(n, ch, k, c))], Poly::one(n, ch))
}

/// `L·(a₀ + a₁·Y_e^j)` with `1 ≤ j < n_e`, integers `aᵢ` and `L` an integer
/// or `X_s + c`; without radicals, `L·(a₀ + a₁)`.
pub fn random_binomial<R: Rng>(ctx: &Ctx, rng: &mut R, edge: Option<usize>) -> TowerElement {
    let (n, ch) = (ctx.nvars(), ctx.characteristic());
    let l = small_coef(ctx, rng);
    let c0 = l.mul(&Poly::int(n, ch, small_nonzero(rng)));
    let c1 = l.mul(&Poly::int(n, ch, small_nonzero(rng)));
    match edge {
        Some(e) if ctx.orders()[e] > 1 => {
            let mut m = vec![0; ctx.nradicals()];
            m[e] = rng.gen_range(1..ctx.orders()[e]) as u32;
            let zero = vec![0; ctx.nradicals()];
            TowerElement::from_parts(ctx, [(zero, c0), (m, c1)], Poly::one(n, ch))
        }
        _ => {
            let mut s = c0.add(&c1);
            if s.is_zero() {
                s = c0;
            }
            TowerElement::from_poly(ctx, s)
        }
    }
}

/// A random nonzero element: a product of one to three factors, at most one
/// monomial `c·X^k·Y^m` and binomials `L·(a₀ + a₁·Y_e^j)` on distinct radicals.
pub fn random_element<R: Rng>(ctx: &Ctx, rng: &mut R) -> TowerElement {
    let factors = rng.gen_range(1..=3);
    let mut edges: Vec<usize> = (0..ctx.nradicals()).collect();
    edges.shuffle(rng);
    let mut acc = TowerElement::one(ctx);
    let mut used_monomial = false;
    for _ in 0..factors {
        let f = if !used_monomial && rng.gen_bool(0.4) {
            used_monomial = true;
            random_monomial(ctx, rng)
        } else {
            random_binomial(ctx, rng, edges.pop())
        };
        acc = acc.mul(&f);
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct SmokeFailure {
    pub trial: usize,
    pub kind: String,
    pub element: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SmokeReport {
    pub trials: usize,
    pub products_checked: usize,
    pub inverses_checked: usize,
    pub failures: Vec<SmokeFailure>,
}

impl SmokeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Multiply random nonzero pairs and invert random nonzero elements. A zero
/// product or a failed inverse would be a zero divisor in the tower.
pub fn primality_smoke(ctx: &Ctx, trials: usize, seed: u64) -> SmokeReport {
    let results = par::map_range(trials, |t| {
        let mut r = rng(seed ^ (t as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let a = random_element(ctx, &mut r);
        let b = random_element(ctx, &mut r);
        let mut fails = vec![];
        if a.mul(&b).is_zero() {
            fails.push(SmokeFailure { trial: t, kind: "zero product".into(), element: format!("{a:?} * {b:?}") });
        }
        match a.inv() {
            Ok(ai) if a.is_inverse_of(&ai) => {}
            Ok(_) => fails.push(SmokeFailure { trial: t, kind: "wrong inverse".into(), element: format!("{a:?}") }),
            Err(Error::SingularMultiplication(m)) => {
                fails.push(SmokeFailure { trial: t, kind: "singular".into(), element: m })
            }
            Err(e) => fails.push(SmokeFailure { trial: t, kind: e.to_string(), element: format!("{a:?}") }),
        }
        fails
    });
    SmokeReport {
        trials,
        products_checked: trials,
        inverses_checked: trials,
        failures: results.into_iter().flatten().collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IndependenceReport {
    pub max_degree: u32,
    pub monomials: usize,
    pub rank: usize,
}

impl IndependenceReport {
    /// No nonzero polynomial of degree `≤ max_degree` kills the `x_s^0`.
    pub fn independent(&self) -> bool {
        self.rank == self.monomials
    }
}

fn exponent_vectors(n: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = vec![];
        for v in &out {
            let used: u32 = v.iter().sum();
            for e in 0..=(max_degree - used) {
                let mut w = v.clone();
                w.push(e);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Rank of the images of all monomials of degree `≤ max_degree` in the
/// `x_s^0`. Full rank means no annihilating polynomial of that degree, with
/// any coefficients.
pub fn independence_check(ctx: &Ctx, max_degree: u32) -> IndependenceReport {
    let n = ctx.nvars();
    let gens: Vec<TowerElement> =
        (0..n).map(|s| super::element::generator_var(ctx, s, 0).unwrap()).collect();
    let monos = exponent_vectors(n, max_degree);
    let mut rows: Vec<BTreeMap<(RadMono, Mono), Coef>> = vec![];
    for e in &monos {
        let mut img = TowerElement::one(ctx);
        for (s, &k) in e.iter().enumerate() {
            if k > 0 {
                img = img.mul(&gens[s].pow(k as u64));
            }
        }
        let mut row = BTreeMap::new();
        for (m, p) in img.numerators() {
            for (x, c) in p.terms() {
                row.insert((m.clone(), x.clone()), c.clone());
            }
        }
        rows.push(row);
    }
    IndependenceReport { max_degree, monomials: monos.len(), rank: rank(rows, ctx.characteristic()) }
}

/// Row rank by elimination on sparse rows.
fn rank(mut rows: Vec<BTreeMap<(RadMono, Mono), Coef>>, ch: u32) -> usize {
    use super::poly::{coef_add, coef_inv, coef_mul, coef_neg};
    let mut pivots: Vec<((RadMono, Mono), BTreeMap<(RadMono, Mono), Coef>)> = vec![];
    for mut row in rows.drain(..) {
        for (key, prow) in &pivots {
            if let Some(c) = row.get(key).cloned() {
                for (k, v) in prow {
                    let e = row.entry(k.clone()).or_insert_with(Coef::zero);
                    *e = coef_add(e, &coef_neg(&coef_mul(&c, v, ch), ch), ch);
                }
                row.retain(|_, v| !v.is_zero());
            }
        }
        if let Some((k, c)) = row.iter().next().map(|(k, c)| (k.clone(), c.clone())) {
            let inv = coef_inv(&c, ch).unwrap();
            for v in row.values_mut() {
                *v = coef_mul(v, &inv, ch);
            }
            pivots.push((k, row));
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::tower::{Depths, TowerCtx, DEFAULT_DIM_CAP};
    use crate::graphs::{ColoredGraph, Graph};
    use std::sync::Arc;

    fn tower(g: Graph, depth: u32) -> Ctx {
        let cg = ColoredGraph::monochromatic(g);
        Arc::new(TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: depth, edge: depth }, DEFAULT_DIM_CAP).unwrap())
    }

    #[test]
    fn smoke_on_small_towers() {
        let r = primality_smoke(&tower(Graph::complete(2), 1), 40, 7);
        assert!(r.passed(), "{:?}", r.failures);
        let r = primality_smoke(&tower(Graph::complete(3), 0), 20, 7);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn vertex_generators_independent() {
        let r = independence_check(&tower(Graph::complete(3), 1), 3);
        assert_eq!(r.monomials, 20);
        assert!(r.independent());
    }

    #[test]
    fn rank_sees_dependence() {
        let ctx = tower(Graph::complete(2), 1);
        let x = super::super::element::generator_var(&ctx, 0, 0).unwrap();
        let mut rows = vec![];
        for e in [x.clone(), x.scale(&coef_int(2))] {
            let mut row = BTreeMap::new();
            for (m, p) in e.numerators() {
                for (k, c) in p.terms() {
                    row.insert((m.clone(), k.clone()), c.clone());
                }
            }
            rows.push(row);
        }
        assert_eq!(rank(rows, 0), 1);
    }
}
