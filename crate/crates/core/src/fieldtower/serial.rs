//! JSON form of tower elements: a map from radical exponent vectors
//! (`"e1,e2,…"`) to reduced rational functions, each a pair of sparse term
//! lists `[[exponents], "p/q"]`. Deterministic in the fixed monomial order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::element::{RadMono, TowerElement};
use super::poly::{coef_reduce, Coef, Mono, Poly};
use super::ratfunc::RatFunc;
use super::tower::{Ctx, TowerProfile};

pub type PolyJson = Vec<(Mono, String)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFuncJson {
    pub num: PolyJson,
    pub den: PolyJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementJson {
    pub profile: TowerProfile,
    pub variables: Vec<String>,
    pub radicals: Vec<String>,
    pub coeffs: BTreeMap<String, RatFuncJson>,
}

pub fn poly_to_json(p: &Poly) -> PolyJson {
    p.terms().iter().map(|(m, c)| (m.clone(), c.to_string())).collect()
}

pub fn poly_from_json(j: &PolyJson, nvars: usize, ch: u32) -> Result<Poly> {
    let mut terms = vec![];
    for (m, c) in j {
        if m.len() != nvars {
            return Err(Error::Parse(format!("exponent vector {m:?} has length {}, expected {nvars}", m.len())));
        }
        let c: Coef = c.parse().map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
        terms.push((m.clone(), coef_reduce(c, ch)));
    }
    Ok(Poly::from_terms(nvars, ch, terms))
}

fn key(m: &RadMono) -> String {
    m.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_key(k: &str, n: usize) -> Result<RadMono> {
    if n == 0 {
        return if k.is_empty() { Ok(vec![]) } else { Err(Error::Parse(format!("bad monomial key {k:?}"))) };
    }
    let m: RadMono = k
        .split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad monomial key {k:?}"))))
        .collect::<Result<_>>()?;
    if m.len() != n {
        return Err(Error::Parse(format!("monomial key {k:?} has {} entries, expected {n}", m.len())));
    }
    Ok(m)
}

pub fn to_json(a: &TowerElement) -> ElementJson {
    let ctx = a.ctx();
    ElementJson {
        profile: ctx.profile(),
        variables: ctx.var_names(),
        radicals: ctx.radicals().iter().map(|r| r.name.clone()).collect(),
        coeffs: a
            .coefficients()
            .iter()
            .map(|(m, r)| (key(m), RatFuncJson { num: poly_to_json(r.num()), den: poly_to_json(r.den()) }))
            .collect(),
    }
}

/// Read an element back into `ctx`, whose profile and generator names must
/// match the recorded ones.
pub fn from_json(ctx: &Ctx, j: &ElementJson) -> Result<TowerElement> {
    if j.profile != ctx.profile() || j.variables != ctx.var_names() {
        return Err(Error::Incompatible("serialized profile differs from the context".into()));
    }
    let (n, ch) = (ctx.nvars(), ctx.characteristic());
    let mut acc = TowerElement::zero(ctx);
    for (k, r) in &j.coeffs {
        let m = parse_key(k, ctx.nradicals())?;
        if m.iter().zip(ctx.orders()).any(|(&e, o)| e as u64 >= o) {
            return Err(Error::Parse(format!("monomial {k:?} is not reduced")));
        }
        let num = poly_from_json(&r.num, n, ch)?;
        let den = poly_from_json(&r.den, n, ch)?;
        let f = RatFunc::new(num, den)?;
        acc = acc.add(&TowerElement::monomial(ctx, m, &f));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::checks::{random_element, rng};
    use crate::fieldtower::tower::{Depths, TowerCtx, DEFAULT_DIM_CAP};
    use crate::graphs::{ColoredGraph, Graph};
    use std::sync::Arc;

    #[test]
    fn round_trip() {
        let cg = ColoredGraph::monochromatic(Graph::path(3));
        let ctx = Arc::new(
            TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: 1, edge: 1 }, DEFAULT_DIM_CAP).unwrap(),
        );
        let mut r = rng(3);
        for _ in 0..10 {
            let a = random_element(&ctx, &mut r).inv().unwrap();
            let j = to_json(&a);
            let s = serde_json::to_string(&j).unwrap();
            let back: ElementJson = serde_json::from_str(&s).unwrap();
            assert_eq!(from_json(&ctx, &back).unwrap(), a);
            assert_eq!(serde_json::to_string(&to_json(&a)).unwrap(), s);
        }
    }

    #[test]
    fn rejects_unreduced() {
        let cg = ColoredGraph::monochromatic(Graph::complete(2));
        let ctx = Arc::new(
            TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: 1, edge: 1 }, DEFAULT_DIM_CAP).unwrap(),
        );
        let mut j = to_json(&TowerElement::one(&ctx));
        let one = j.coeffs.remove("0").unwrap();
        j.coeffs.insert("5".into(), one);
        assert!(matches!(from_json(&ctx, &j), Err(Error::Parse(_))));
    }
}
