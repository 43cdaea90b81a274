//! Substitution automorphisms `σ(φ)` of `K_Γ` induced by color-preserving
//! graph automorphisms.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fieldtower::element::RadMono;
use crate::fieldtower::{generator_var, Ctx, Poly, TowerElement};
use crate::graphs::aut::is_automorphism;
use crate::graphs::ColoredGraph;
use crate::groups::{Perm, PermGroup};

/// `X_s ↦ X_{φ(s)}`, `Y_e ↦ Y_{φ(e)}` in context indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldAut {
    pub vertex_map: Vec<usize>,
    pub radical_map: Vec<usize>,
}

/// Graph vertex index to context variable index.
fn var_of(cg: &ColoredGraph, ctx: &Ctx) -> Result<Vec<usize>> {
    cg.graph
        .labels()
        .iter()
        .map(|l| ctx.var_index(l).ok_or_else(|| Error::Incompatible(format!("vertex {l} missing from the tower"))))
        .collect()
}

impl FieldAut {
    pub fn identity(ctx: &Ctx) -> Self {
        FieldAut { vertex_map: (0..ctx.nvars()).collect(), radical_map: (0..ctx.nradicals()).collect() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FieldAut) -> FieldAut {
        FieldAut {
            vertex_map: other.vertex_map.iter().map(|&i| self.vertex_map[i]).collect(),
            radical_map: other.radical_map.iter().map(|&i| self.radical_map[i]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertex_map.iter().enumerate().all(|(i, &j)| i == j)
            && self.radical_map.iter().enumerate().all(|(i, &j)| i == j)
    }

    fn map_radmono(&self, m: &RadMono) -> RadMono {
        let mut out = vec![0; m.len()];
        for (f, &e) in m.iter().enumerate() {
            out[self.radical_map[f]] = e;
        }
        out
    }
}

/// `σ(φ)` for a color-preserving automorphism `φ` of the graph the tower was
/// built from. The image of every defining relation is checked.
pub fn sigma(cg: &ColoredGraph, ctx: &Ctx, phi: &Perm) -> Result<FieldAut> {
    let g = &cg.graph;
    if phi.degree() != g.num_vertices() || !is_automorphism(g, None, phi) {
        return Err(Error::InvalidStructure("not a graph automorphism".into()));
    }
    if !is_automorphism(g, Some(&cg.colors), phi) {
        return Err(Error::ColorViolation);
    }
    let vars = var_of(cg, ctx)?;
    let mut vertex_map = vec![0; ctx.nvars()];
    for (v, &s) in vars.iter().enumerate() {
        vertex_map[s] = vars[phi.apply(v)];
    }
    let mut radical_map = Vec::with_capacity(ctx.nradicals());
    for f in 0..ctx.nradicals() {
        let (s, t) = ctx
            .edge_endpoints(f)
            .ok_or_else(|| Error::Incompatible("radical without an edge".into()))?;
        let img = ctx
            .edge_index(vertex_map[s], vertex_map[t])
            .ok_or_else(|| Error::RelationBroken(format!("edge {} has no image", ctx.radicals()[f].name)))?;
        radical_map.push(img);
    }
    let alpha = FieldAut { vertex_map, radical_map };
    check_substitution(ctx, &shallow_images(ctx, &alpha), &alpha.radical_map)?;
    Ok(alpha)
}

/// Images of the shallow generators `x_s^0` under a variable permutation.
fn shallow_images(ctx: &Ctx, a: &FieldAut) -> Vec<Poly> {
    let n = ctx.nvars();
    a.vertex_map.iter().map(|&j| Poly::var(n, ctx.characteristic(), j)).collect()
}

/// Check that `x_s^0 ↦ images[s]` (polynomials in the `x^0`) together with
/// `Y_f ↦ Y_{radical_map[f]}` sends each defining relation to a defining
/// relation: `A_f(images) = A_{π(f)}`, with matching depths and primes.
pub fn check_substitution(ctx: &Ctx, images: &[Poly], radical_map: &[usize]) -> Result<()> {
    if images.len() != ctx.nvars() || radical_map.len() != ctx.nradicals() {
        return Err(Error::Incompatible("substitution shape differs from the tower".into()));
    }
    let mut seen = BTreeSet::new();
    for (f, &g) in radical_map.iter().enumerate() {
        let (rf, rg) = (&ctx.radicals()[f], &ctx.radicals()[g]);
        if !seen.insert(g) {
            return Err(Error::RelationBroken(format!("two radicals map to {}", rg.name)));
        }
        if rf.prime != rg.prime || rf.depth != rg.depth {
            return Err(Error::RelationBroken(format!("{} and {} have different orders", rf.name, rg.name)));
        }
        if rf.shallow_base.compose(images) != rg.shallow_base {
            return Err(Error::RelationBroken(format!("relation of {} is not sent to that of {}", rf.name, rg.name)));
        }
    }
    Ok(())
}

pub fn apply(alpha: &FieldAut, a: &TowerElement) -> TowerElement {
    let ctx = a.ctx();
    let n = ctx.nvars();
    a.map_into(ctx, |m| alpha.map_radmono(m), |p| p.rename(&alpha.vertex_map, n))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct EdgeImageReport {
    pub edges_checked: usize,
    pub violations: Vec<String>,
}

impl EdgeImageReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every edge `{s,t}` of color `l`, `α(x_s^0)` and `α(x_t^0)` are vertex
/// generators joined by an edge of color `l`.
pub fn verify_edge_image(ctx: &Ctx, alpha: &FieldAut) -> Result<EdgeImageReport> {
    let gens: Vec<TowerElement> = (0..ctx.nvars()).map(|s| generator_var(ctx, s, 0)).collect::<Result<_>>()?;
    let names = ctx.var_names();
    let find = |a: &TowerElement| gens.iter().position(|g| g == a);
    let mut rep = EdgeImageReport::default();
    for f in 0..ctx.nradicals() {
        let Some((s, t)) = ctx.edge_endpoints(f) else { continue };
        rep.edges_checked += 1;
        let color = ctx.radicals()[f].color;
        let (is, it) = (find(&apply(alpha, &gens[s])), find(&apply(alpha, &gens[t])));
        match (is, it) {
            (Some(a), Some(b)) => match ctx.edge_index(a, b) {
                Some(g) if ctx.radicals()[g].color == color => {}
                _ => rep.violations.push(format!(
                    "{{{},{}}} goes to {{{},{}}}, not an edge of the same color",
                    names[s], names[t], names[a], names[b]
                )),
            },
            _ => rep.violations.push(format!("{{{},{}}}: image is not a vertex generator", names[s], names[t])),
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaReport {
    pub aut_order: usize,
    pub image_order: usize,
    pub homomorphism_failures: Vec<String>,
    pub edge_image_failures: Vec<String>,
}

impl SigmaReport {
    pub fn passed(&self) -> bool {
        self.aut_order == self.image_order && self.homomorphism_failures.is_empty() && self.edge_image_failures.is_empty()
    }
}

/// `σ` on all of `Aut(Γ)`: distinct images of the `x_s^0` for distinct
/// automorphisms, `σ(φψ) = σ(φ)σ(ψ)`, and the edge-image property.
pub fn verify_injectivity_sigma(cg: &ColoredGraph, ctx: &Ctx, aut: &PermGroup) -> Result<SigmaReport> {
    let sig: Vec<FieldAut> = aut.elements().iter().map(|p| sigma(cg, ctx, p)).collect::<Result<_>>()?;
    let gens: Vec<TowerElement> = (0..ctx.nvars()).map(|s| generator_var(ctx, s, 0)).collect::<Result<_>>()?;
    let images: BTreeSet<Vec<String>> =
        sig.iter().map(|a| gens.iter().map(|g| apply(a, g).fmt_pretty()).collect()).collect();
    let mut homomorphism_failures = Vec::new();
    let els = aut.elements();
    for (i, p) in els.iter().enumerate() {
        for (j, q) in els.iter().enumerate() {
            let pq = sigma(cg, ctx, &p.compose(q))?;
            if pq != sig[i].compose(&sig[j]) {
                homomorphism_failures.push(format!("{:?} {:?}", p.cycles(), q.cycles()));
            }
        }
    }
    if !sig.iter().any(|a| a.is_identity()) {
        homomorphism_failures.push("identity missing".into());
    }
    let mut edge_image_failures = Vec::new();
    for a in &sig {
        edge_image_failures.extend(verify_edge_image(ctx, a)?.violations);
    }
    Ok(SigmaReport { aut_order: aut.order(), image_order: images.len(), homomorphism_failures, edge_image_failures })
}

/// Vertices occurring in the canonical form, through a variable or an
/// endpoint of a radical.
pub fn minimal_support(a: &TowerElement) -> BTreeSet<String> {
    let ctx = a.ctx();
    let names = ctx.var_names();
    let mut out = BTreeSet::new();
    let polys = a.numerators().values().chain(std::iter::once(a.denominator()));
    for p in polys {
        for (m, _) in p.terms() {
            for (s, &e) in m.iter().enumerate() {
                if e > 0 {
                    out.insert(names[s].clone());
                }
            }
        }
    }
    for m in a.numerators().keys() {
        for (f, &e) in m.iter().enumerate() {
            if e > 0 {
                match ctx.edge_endpoints(f) {
                    Some((s, t)) => {
                        out.insert(names[s].clone());
                        out.insert(names[t].clone());
                    }
                    None => {
                        for &s in &ctx.radicals()[f].support {
                            out.insert(names[s].clone());
                        }
                    }
                }
            }
        }
    }
    out
}
