//! The element codec `Ψ: K_Γ → X^⟨<ω⟩`, built without a global order on
//! the vertices.
//!
//! Vertices of the support get a label-free signature from the shape of the
//! terms they occur in. For every ordering of the support that lists the
//! signature classes in signature order, the element is written relative to
//! that ordering (positions instead of labels, coefficients divided by a
//! pivot chosen through the positions) and the serialization becomes a
//! number `N`. The sequence for the ordering `v₁ … v_k` is `v₁ … v_k`
//! followed by `N` further copies of `v₁`. The code is the set of these
//! sequences, so relabeling commutes with `Ψ`, and any single sequence
//! decodes the element.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fieldtower::poly::{coef_inv, coef_mul, Coef};
use crate::fieldtower::{Ctx, Poly, TowerElement};

/// A finite sequence of vertex labels, stored as runs `(label, length)`.
pub type Sequence = Vec<(String, BigUint)>;

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Code {
    #[serde(serialize_with = "ser_sequences")]
    pub sequences: BTreeSet<Sequence>,
}

/// Runs as `[label, length]` with the length in decimal.
fn ser_sequences<S: serde::Serializer>(seqs: &BTreeSet<Sequence>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<(&str, String)>> =
        seqs.iter().map(|q| q.iter().map(|(l, n)| (l.as_str(), n.to_string())).collect()).collect();
    v.serialize(s)
}

impl Code {
    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    /// Rename every label.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Code {
        Code {
            sequences: self
                .sequences
                .iter()
                .map(|s| s.iter().map(|(l, n)| (f(l), n.clone())).collect())
                .collect(),
        }
    }
}

/// Orderings tried before giving up.
pub const MAX_ORDERINGS: usize = 40_320;

/// One term: `X`-exponents and radical exponents by position.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
struct Atom {
    den: bool,
    x: Vec<(u32, u32)>,
    y: Vec<(u32, u32, u32)>,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct Datum {
    atoms: Vec<Atom>,
}

/// Terms as (is denominator, X-exponents by variable, radical monomial,
/// coefficient).
fn raw_terms(a: &TowerElement) -> Vec<(bool, Vec<u32>, Vec<u32>, Coef)> {
    let mut out = Vec::new();
    for (m, p) in a.numerators() {
        for (x, c) in p.terms() {
            out.push((false, x.clone(), m.clone(), c.clone()));
        }
    }
    let zero = vec![0; a.ctx().nradicals()];
    for (x, c) in a.denominator().terms() {
        out.push((true, x.clone(), zero.clone(), c.clone()));
    }
    out
}

fn radical_ends(ctx: &Ctx, f: usize) -> (usize, usize) {
    ctx.edge_endpoints(f).unwrap_or_else(|| {
        let s = &ctx.radicals()[f].support;
        (s[0], *s.last().unwrap())
    })
}

/// Variables taking part in one term.
fn term_vars(ctx: &Ctx, x: &[u32], m: &[u32]) -> BTreeSet<usize> {
    let mut out: BTreeSet<usize> = x.iter().enumerate().filter(|(_, &e)| e > 0).map(|(s, _)| s).collect();
    for (f, &e) in m.iter().enumerate() {
        if e > 0 {
            let (s, t) = radical_ends(ctx, f);
            out.insert(s);
            out.insert(t);
        }
    }
    out
}

/// Label-free signature of every support variable, refined once through
/// the terms it shares.
fn signatures(ctx: &Ctx, terms: &[(bool, Vec<u32>, Vec<u32>, Coef)]) -> BTreeMap<usize, String> {
    let tv: Vec<BTreeSet<usize>> = terms.iter().map(|(_, x, m, _)| term_vars(ctx, x, m)).collect();
    let shape = |i: usize, v: usize| -> String {
        let (den, x, m, _) = &terms[i];
        let mut ys: Vec<u32> = (0..m.len())
            .filter(|&f| m[f] > 0 && {
                let (s, t) = radical_ends(ctx, f);
                s == v || t == v
            })
            .map(|f| m[f])
            .collect();
        ys.sort_unstable();
        let deg: u32 = x.iter().sum();
        format!("{}:{}:{:?}:{}:{}", *den as u8, x[v], ys, deg, tv[i].len())
    };
    let mut sig0: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (i, vs) in tv.iter().enumerate() {
        for &v in vs {
            sig0.entry(v).or_default().push(shape(i, v));
        }
    }
    for s in sig0.values_mut() {
        s.sort();
    }
    let flat0: BTreeMap<usize, String> = sig0.iter().map(|(&v, s)| (v, s.join(","))).collect();
    let mut sig1: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    for (i, vs) in tv.iter().enumerate() {
        for &v in vs {
            let mut others: Vec<&str> = vs.iter().filter(|&&u| u != v).map(|u| flat0[u].as_str()).collect();
            others.sort_unstable();
            sig1.entry(v).or_default().push(format!("{}|{}", shape(i, v), others.join(";")));
        }
    }
    sig1.into_iter()
        .map(|(v, mut s)| {
            s.sort();
            (v, format!("{}#{}", flat0[&v], s.join("/")))
        })
        .collect()
}

/// Orderings of the support listing signature classes in order.
fn orderings(sigs: &BTreeMap<usize, String>) -> Result<Vec<Vec<usize>>> {
    let mut cells: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (&v, s) in sigs {
        cells.entry(s.as_str()).or_default().push(v);
    }
    let mut count: usize = 1;
    for c in cells.values() {
        for k in 2..=c.len() {
            count = count.saturating_mul(k);
        }
    }
    if count > MAX_ORDERINGS {
        return Err(Error::BudgetExceeded(format!("{count} orderings of the support")));
    }
    let mut out = vec![Vec::new()];
    for cell in cells.values() {
        let perms = permutations(cell);
        out = out
            .iter()
            .flat_map(|pre| {
                perms.iter().map(move |p| {
                    let mut v = pre.clone();
                    v.extend(p);
                    v
                })
            })
            .collect();
    }
    Ok(out)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// The element relative to an ordering, as a number.
fn datum_number(ctx: &Ctx, terms: &[(bool, Vec<u32>, Vec<u32>, Coef)], order: &[usize]) -> BigUint {
    let ch = ctx.characteristic();
    let pos: BTreeMap<usize, u32> = order.iter().enumerate().map(|(i, &v)| (v, i as u32)).collect();
    let mut atoms: Vec<(Atom, Coef)> = terms
        .iter()
        .map(|(den, x, m, c)| {
            let mut xs: Vec<(u32, u32)> =
                x.iter().enumerate().filter(|(_, &e)| e > 0).map(|(s, &e)| (pos[&s], e)).collect();
            xs.sort_unstable();
            let mut ys: Vec<(u32, u32, u32)> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(f, &e)| {
                    let (s, t) = radical_ends(ctx, f);
                    let (a, b) = (pos[&s], pos[&t]);
                    (a.min(b), a.max(b), e)
                })
                .collect();
            ys.sort_unstable();
            (Atom { den: *den, x: xs, y: ys, c: String::new() }, c.clone())
        })
        .collect();
    // Pivot: the largest denominator term.
    let pivot = atoms.iter().filter(|(a, _)| a.den).max_by(|a, b| a.0.cmp(&b.0)).map(|(_, c)| c.clone());
    let inv = coef_inv(&pivot.unwrap_or_else(Coef::one), ch).expect("nonzero pivot");
    for (a, c) in atoms.iter_mut() {
        a.c = coef_mul(c, &inv, ch).to_string();
    }
    let mut atoms: Vec<Atom> = atoms.into_iter().map(|(a, _)| a).collect();
    atoms.sort();
    let bytes = serde_json::to_vec(&Datum { atoms }).expect("serializable");
    BigUint::from_bytes_be(&bytes)
}

/// `Ψ(a)`; zero gets the empty code.
pub fn encode_element(a: &TowerElement) -> Result<Code> {
    let mut code = Code::default();
    if a.is_zero() {
        return Ok(code);
    }
    let ctx = a.ctx();
    let names = ctx.var_names();
    let terms = raw_terms(a);
    let sigs = signatures(ctx, &terms);
    if sigs.is_empty() {
        // A constant has no positions, so every vertex serves as the prefix.
        let n = datum_number(ctx, &terms, &[]);
        for l in &names {
            code.sequences.insert(vec![(l.clone(), n.clone() + 1u32)]);
        }
        return Ok(code);
    }
    for order in orderings(&sigs)? {
        let n = datum_number(ctx, &terms, &order);
        let mut seq: Sequence = order.iter().map(|&v| (names[v].clone(), BigUint::one())).collect();
        seq.push((names[order[0]].clone(), n));
        code.sequences.insert(normalize_runs(seq));
    }
    Ok(code)
}

/// Merge adjacent runs of one label.
fn normalize_runs(seq: Sequence) -> Sequence {
    let mut out: Sequence = Vec::new();
    for (l, n) in seq {
        match out.last_mut() {
            Some((pl, pn)) if *pl == l => *pn += n,
            _ => out.push((l, n)),
        }
    }
    out
}

/// Recover the element from any one sequence of its code.
pub fn decode_element(ctx: &Ctx, code: &Code) -> Result<TowerElement> {
    let Some(seq) = code.sequences.iter().next() else { return Ok(TowerElement::zero(ctx)) };
    let (order, n) = {
        // Expand: the prefix ends at the first repeated label.
        let mut order: Vec<String> = Vec::new();
        let mut n = BigUint::zero();
        let mut tail = false;
        for (l, c) in seq {
            if tail {
                return Err(Error::Parse("sequence continues after the datum".into()));
            }
            if order.contains(l) {
                if *l != order[0] {
                    return Err(Error::Parse("datum run does not repeat the first vertex".into()));
                }
                n = c.clone();
                tail = true;
            } else {
                order.push(l.clone());
                if *c > BigUint::one() {
                    if order.len() != 1 {
                        return Err(Error::Parse("repeated vertex inside the ordering".into()));
                    }
                    n = c - 1u32;
                    tail = true;
                }
            }
        }
        if !tail {
            return Err(Error::Parse("missing datum".into()));
        }
        let vars: Vec<usize> = order
            .iter()
            .map(|l| ctx.var_index(l).ok_or_else(|| Error::Parse(format!("unknown vertex {l}"))))
            .collect::<Result<_>>()?;
        (vars, n)
    };
    let datum: Datum =
        serde_json::from_slice(&n.to_bytes_be()).map_err(|e| Error::Parse(format!("datum: {e}")))?;
    let (nv, ch) = (ctx.nvars(), ctx.characteristic());
    let var = |p: u32| -> Result<usize> {
        order.get(p as usize).copied().ok_or_else(|| Error::Parse(format!("position {p} out of range")))
    };
    let mut num: BTreeMap<Vec<u32>, Vec<(Vec<u32>, Coef)>> = BTreeMap::new();
    let mut den: Vec<(Vec<u32>, Coef)> = Vec::new();
    for at in datum.atoms {
        let c: Coef = at.c.parse().map_err(|_| Error::Parse(format!("coefficient {}", at.c)))?;
        let mut x = vec![0u32; nv];
        for (p, e) in at.x {
            x[var(p)?] = e;
        }
        if at.den {
            den.push((x, c));
            continue;
        }
        let mut m = vec![0u32; ctx.nradicals()];
        for (a, b, e) in at.y {
            let f = ctx
                .edge_index(var(a)?, var(b)?)
                .ok_or_else(|| Error::Parse("radical between non-adjacent vertices".into()))?;
            m[f] = e;
        }
        num.entry(m).or_default().push((x, c));
    }
    let terms: Vec<(Vec<u32>, Poly)> = num.into_iter().map(|(m, ts)| (m, Poly::from_terms(nv, ch, ts))).collect();
    Ok(TowerElement::from_parts(ctx, terms, Poly::from_terms(nv, ch, den)))
}

/// Largest run length, for reports.
pub fn longest_run_bits(code: &Code) -> u64 {
    code.sequences.iter().flat_map(|s| s.iter().map(|(_, n)| n.bits())).max().unwrap_or(0)
}
