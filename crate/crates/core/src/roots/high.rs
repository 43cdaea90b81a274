//! The three-stage root procedure and p-high elements.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fieldtower::checks::{random_element, random_monomial, rng};
use crate::fieldtower::poly::{coef_int, coef_mul, Coef};
use crate::fieldtower::primes::prime_factors;
use crate::fieldtower::{embed, Ctx, TowerCtx, TowerElement};

use super::extract::{decompose, structured_root};
use super::special::{specialization_refute, SpecialOutcome};
use super::valuation::valuation_vector;
use super::{Certificate, RootResult};

#[derive(Clone, Copy, Debug)]
pub struct RootOptions {
    /// Specialization trials.
    pub trials: usize,
    pub seed: u64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { trials: 20, seed: 0 }
    }
}

pub fn pth_root(a: &TowerElement, p: u64) -> RootResult {
    pth_root_with(a, p, &RootOptions::default())
}

pub fn pth_root_with(a: &TowerElement, p: u64, opts: &RootOptions) -> RootResult {
    if a.is_zero() {
        return RootResult::Root(a.clone());
    }
    if let Some(b) = structured_root(a, p) {
        return RootResult::Root(b);
    }
    let mut relative = None;
    if let Ok(vals) = valuation_vector(a) {
        for pv in &vals {
            if pv.obstructs(p) || pv.obstructs_absolutely(p) {
                let absolute = pv.obstructs_absolutely(p);
                let cert = Certificate::Valuation {
                    place: pv.label.clone(),
                    value: pv.value.map(|v| v.to_string()).unwrap_or_default(),
                    ramification: pv.ramification,
                    absolute,
                };
                if absolute {
                    return RootResult::No(cert);
                }
                relative.get_or_insert(cert);
            }
        }
    }
    if a.ctx().characteristic() == 0 {
        match specialization_refute(a, p, opts.trials, opts.seed) {
            Ok(SpecialOutcome::Refuted { certificate }) => return RootResult::No(certificate),
            Ok(SpecialOutcome::Consistent { .. }) => {}
            Err(e) => {
                if let Some(c) = relative {
                    return RootResult::No(c);
                }
                return RootResult::Unknown(format!("specialization failed: {e}"));
            }
        }
    }
    match relative {
        Some(c) => RootResult::No(c),
        None => RootResult::Unknown(format!("no root, obstruction or refutation for p = {p}")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HighVerdict {
    True,
    False,
    Unknown,
}

/// The same tower with every generator of prime `p` one level deeper.
fn deepen(ctx: &Ctx, p: u64) -> Result<Option<Ctx>> {
    let mut prof = ctx.profile();
    let mut changed = false;
    for (d, v) in prof.var_depths.iter_mut().zip(ctx.vars()) {
        if v.prime == p {
            *d += 1;
            changed = true;
        }
    }
    for (d, r) in prof.radical_depths.iter_mut().zip(ctx.radicals()) {
        if r.prime == p {
            *d += 1;
            changed = true;
        }
    }
    if !changed {
        return Ok(None);
    }
    Ok(Some(Arc::new(ctx.with_profile(&prof)?)))
}

/// Take `budget` successive `p`-th roots, deepening the tower along `p`
/// when the current truncation has none.
pub fn is_p_high(a: &TowerElement, p: u64, budget: u32, opts: &RootOptions) -> HighVerdict {
    if a.is_zero() {
        return HighVerdict::True;
    }
    let mut cur = a.clone();
    for step in 0..budget {
        let o = RootOptions { seed: opts.seed.wrapping_add(step as u64), ..*opts };
        let mut deepened = 0;
        loop {
            match pth_root_with(&cur, p, &o) {
                RootResult::Root(b) => {
                    cur = b;
                    break;
                }
                RootResult::No(c) if c.is_absolute() => return HighVerdict::False,
                _ if deepened < 2 => {
                    let next = match deepen(cur.ctx(), p) {
                        Ok(Some(c)) => c,
                        _ => return HighVerdict::Unknown,
                    };
                    cur = match embed(&cur, &next) {
                        Ok(e) => e,
                        Err(_) => return HighVerdict::Unknown,
                    };
                    deepened += 1;
                }
                _ => return HighVerdict::Unknown,
            }
        }
    }
    HighVerdict::True
}

/// `ε · ∏ (x_s^{n_s})^{m_s} · ∏ (x_e^{n_e})^{m_e}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PHighForm {
    #[serde(serialize_with = "ser_coef")]
    pub unit: Coef,
    pub vertex_part: BTreeMap<String, (u32, i64)>,
    pub edge_part: BTreeMap<String, (u32, i64)>,
    /// The unit is p-high in the base field and every generator involved
    /// has prime `p`.
    pub predicts_high: bool,
}

fn ser_coef<S: serde::Serializer>(c: &Coef, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

/// Is the constant `c` p-high in the prime field?
pub fn constant_p_high(c: &Coef, p: u64, ch: u32) -> bool {
    if c.is_zero() {
        return true;
    }
    if ch == 0 {
        return c.is_one() || (p != 2 && (-c).is_one());
    }
    let r = ch as u64;
    if p == r || (r - 1) % p != 0 {
        return true;
    }
    // The prime-to-p part of F_r^×.
    let mut m = r - 1;
    while m % p == 0 {
        m /= p;
    }
    let mut acc = Coef::one();
    for _ in 0..m {
        acc = coef_mul(&acc, c, ch);
    }
    acc.is_one()
}

/// Split `k = m · ℓ^{d−n}` with `n` as small as possible.
fn depth_split(k: i64, l: u64, d: u32) -> (u32, i64) {
    let mut v = 0;
    let mut m = k;
    while v < d && m % l as i64 == 0 {
        m /= l as i64;
        v += 1;
    }
    (d - v, m)
}

/// `None` when the element is not a constant times a generator monomial.
pub fn classify_p_high(a: &TowerElement, p: u64) -> Option<PHighForm> {
    let d = decompose(a)?;
    let ctx = a.ctx();
    if !d.unit.den().is_constant() || !d.unit.num().is_constant() {
        return None;
    }
    let ch = ctx.characteristic();
    let unit = crate::fieldtower::poly::coef_reduce(
        d.unit.num().leading_coef() / d.unit.den().leading_coef(),
        ch,
    );
    let mut predicts_high = constant_p_high(&unit, p, ch);
    let mut vertex_part = BTreeMap::new();
    for (s, &k) in d.xk.iter().enumerate() {
        if k != 0 {
            let v = &ctx.vars()[s];
            vertex_part.insert(v.name.clone(), depth_split(k, v.prime, v.depth));
            predicts_high &= v.prime == p;
        }
    }
    let mut edge_part = BTreeMap::new();
    let mut colors = Vec::new();
    for (f, &k) in d.ye.iter().enumerate() {
        if k != 0 {
            let r = &ctx.radicals()[f];
            edge_part.insert(r.name.clone(), depth_split(k, r.prime, r.depth));
            predicts_high &= r.prime == p;
            colors.push(r.color);
        }
    }
    colors.dedup();
    predicts_high &= colors.len() <= 1;
    Some(PHighForm { unit, vertex_part, edge_part, predicts_high })
}

/// `X^p − g` is irreducible over the tower, by Abel: `g` has no `p`-th root.
pub fn check_irreducible_radical(g: &TowerElement, p: u64, opts: &RootOptions) -> Result<bool> {
    match pth_root_with(g, p, opts) {
        RootResult::Root(_) => Ok(false),
        RootResult::No(_) => Ok(true),
        RootResult::Unknown(note) => Err(Error::Unknown(note)),
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct QHighReport {
    pub q: u64,
    pub samples: usize,
    pub refuted: usize,
    pub unknown: usize,
    /// Non-base samples reported `q`-high.
    pub violations: Vec<String>,
    /// Base constants whose verdict disagrees with the prime-field rule.
    pub base_mismatches: Vec<String>,
}

impl QHighReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.base_mismatches.is_empty()
    }
}

/// Sampled elements outside the base field are never `q`-high.
pub fn q_high_descends(ctx: &Ctx, q: u64, samples: usize, budget: u32, seed: u64) -> QHighReport {
    let mut r = rng(seed);
    let mut rep = QHighReport { q, ..Default::default() };
    let opts = RootOptions { trials: 20, seed };
    for i in 0..samples {
        let a = if i % 2 == 0 { random_monomial(ctx, &mut r) } else { random_element(ctx, &mut r) };
        if a.is_zero() || a.as_constant().is_some() {
            continue;
        }
        rep.samples += 1;
        match is_p_high(&a, q, budget, &opts) {
            HighVerdict::False => rep.refuted += 1,
            HighVerdict::Unknown => rep.unknown += 1,
            HighVerdict::True => rep.violations.push(a.fmt_pretty()),
        }
    }
    let ch = ctx.characteristic();
    for c in [1i64, -1, 2, 3] {
        let k = crate::fieldtower::poly::coef_reduce(coef_int(c), ch);
        if k.is_zero() {
            continue;
        }
        let expect = constant_p_high(&k, q, ch);
        let got = is_p_high(&TowerElement::constant(ctx, k.clone()), q, budget, &opts);
        if got != if expect { HighVerdict::True } else { HighVerdict::False } {
            rep.base_mismatches.push(format!("{k}: {got:?}"));
        }
    }
    rep
}

/// Primes `q` outside the generator primes and the characteristic, smallest
/// first.
pub fn foreign_primes(ctx: &TowerCtx, count: usize) -> Vec<u64> {
    let used: Vec<u64> = ctx.vars().iter().map(|v| v.prime).chain(ctx.radicals().iter().map(|r| r.prime)).collect();
    (2u64..)
        .filter(|&n| prime_factors(n) == vec![n] && !used.contains(&n) && n != ctx.characteristic() as u64)
        .take(count)
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::tower::{Depths, DEFAULT_DIM_CAP};
    use crate::fieldtower::{generator_radical, generator_var};
    use crate::graphs::{ColoredGraph, Graph};

    fn k2(v: u32, e: u32) -> Ctx {
        let cg = ColoredGraph::monochromatic(Graph::complete(2));
        Arc::new(TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: v, edge: e }, DEFAULT_DIM_CAP).unwrap())
    }

    #[test]
    fn vertex_roots() {
        let ctx = k2(1, 1);
        let x0 = generator_var(&ctx, 0, 0).unwrap();
        let x1 = generator_var(&ctx, 0, 1).unwrap();
        match pth_root(&x0, 3) {
            RootResult::Root(b) => assert_eq!(b, x1),
            r => panic!("{r:?}"),
        }
        assert!(pth_root(&x0.add(&TowerElement::one(&ctx)), 3).is_no());
        for p in [2, 5] {
            match pth_root(&x0, p) {
                RootResult::No(c) => assert!(c.is_absolute()),
                r => panic!("{r:?}"),
            }
        }
        // X_s itself has no cube root at depth 1, but does one level down.
        assert!(matches!(pth_root(&x1, 3), RootResult::No(Certificate::Valuation { absolute: false, .. })));
    }

    #[test]
    fn constants() {
        let ctx = k2(1, 1);
        let o = RootOptions::default();
        assert_eq!(is_p_high(&TowerElement::one(&ctx), 3, 3, &o), HighVerdict::True);
        assert_eq!(is_p_high(&TowerElement::int(&ctx, -1), 5, 3, &o), HighVerdict::True);
        assert_eq!(is_p_high(&TowerElement::int(&ctx, 2), 3, 3, &o), HighVerdict::False);
        assert_eq!(is_p_high(&TowerElement::int(&ctx, -1), 2, 3, &o), HighVerdict::False);
    }

    #[test]
    fn vertex_is_high() {
        let ctx = k2(1, 1);
        let x0 = generator_var(&ctx, 0, 0).unwrap();
        assert_eq!(is_p_high(&x0, 3, 3, &RootOptions::default()), HighVerdict::True);
        assert_eq!(is_p_high(&x0, 5, 3, &RootOptions::default()), HighVerdict::False);
    }

    #[test]
    fn classification() {
        let ctx = k2(1, 1);
        let a = generator_var(&ctx, 0, 1).unwrap().mul(&generator_var(&ctx, 1, 0).unwrap());
        let f = classify_p_high(&a, 3).unwrap();
        assert_eq!(f.unit, coef_int(1));
        assert_eq!(f.vertex_part.values().cloned().collect::<Vec<_>>(), vec![(1, 1), (0, 1)]);
        assert!(f.predicts_high);
        let e = generator_radical(&ctx, 0, 0).unwrap();
        let b = e.pow(2).neg();
        let f = classify_p_high(&b, 5).unwrap();
        assert_eq!(f.unit, coef_int(-1));
        assert_eq!(f.edge_part.values().cloned().collect::<Vec<_>>(), vec![(0, 2)]);
        assert!(f.vertex_part.is_empty());
        let s = generator_var(&ctx, 0, 0).unwrap().add(&generator_var(&ctx, 1, 0).unwrap());
        assert!(classify_p_high(&s, 3).is_none());
    }

    #[test]
    fn irreducible_radicals() {
        let ctx = k2(1, 1);
        let o = RootOptions::default();
        let xs = generator_var(&ctx, 0, 1).unwrap();
        assert!(check_irreducible_radical(&xs, 3, &o).unwrap());
        let ye = generator_radical(&ctx, 0, 1).unwrap();
        assert!(check_irreducible_radical(&ye, 5, &o).unwrap());
        assert!(!check_irreducible_radical(&xs.pow(3), 3, &o).unwrap());
    }

    #[test]
    fn finite_field_units() {
        // F_7: cubes are {1, 6}; 2 is not 3-high, while every unit is 5-high.
        assert!(!constant_p_high(&coef_int(2), 3, 7));
        assert!(constant_p_high(&coef_int(6), 3, 7));
        assert!(constant_p_high(&coef_int(3), 5, 7));
    }

    #[test]
    fn two_high_descends() {
        let ctx = k2(1, 1);
        let rep = q_high_descends(&ctx, 2, 10, 2, 7);
        assert!(rep.passed(), "{rep:?}");
        let x0 = generator_var(&ctx, 0, 0).unwrap();
        assert_eq!(is_p_high(&x0, 2, 2, &RootOptions::default()), HighVerdict::False);
        let e0 = generator_radical(&ctx, 0, 0).unwrap();
        assert_eq!(is_p_high(&e0, 2, 2, &RootOptions::default()), HighVerdict::False);
    }
}
