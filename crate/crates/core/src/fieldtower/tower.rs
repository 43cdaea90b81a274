//! Tower contexts: the variables `X` (deepest roots of transcendentals) and
//! radicals `Y` with `Y^n = A(X)`, for `K_Γ` and for generic radical
//! extensions of a rational function field.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::ColoredGraph;

use super::poly::{gcd, Poly};
use super::primes::{choose_primes, is_prime};

/// Default cap on the basis dimension `∏ n_e`.
pub const DEFAULT_DIM_CAP: u128 = 2000;

/// A transcendental generator: the variable `X` is its deepest root and
/// `x^i = X^{prime^{depth−i}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub name: String,
    pub prime: u64,
    pub depth: u32,
}

impl Variable {
    pub fn inflation(&self) -> u64 {
        self.prime.pow(self.depth)
    }
}

/// A radical generator `Y` with `Y^{prime^depth} = base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radical {
    pub name: String,
    pub prime: u64,
    pub depth: u32,
    /// `y^0` written in the shallow generators `x^0`.
    pub shallow_base: Poly,
    /// Indices of the variables `y^0` depends on.
    pub support: Vec<usize>,
    /// Edge color, for radicals coming from a colored graph.
    pub color: Option<u32>,
}

impl Radical {
    pub fn order(&self) -> u64 {
        self.prime.pow(self.depth)
    }
}

/// Depths of every generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerProfile {
    pub characteristic: u32,
    pub primes: Vec<u64>,
    pub var_depths: Vec<u32>,
    pub radical_depths: Vec<u32>,
}

impl TowerProfile {
    /// Pointwise `self ≤ other`.
    pub fn le(&self, other: &TowerProfile) -> bool {
        self.var_depths.len() == other.var_depths.len()
            && self.radical_depths.len() == other.radical_depths.len()
            && self.var_depths.iter().zip(&other.var_depths).all(|(a, b)| a <= b)
            && self.radical_depths.iter().zip(&other.radical_depths).all(|(a, b)| a <= b)
    }

    pub fn max(&self, other: &TowerProfile) -> TowerProfile {
        TowerProfile {
            characteristic: self.characteristic,
            primes: self.primes.clone(),
            var_depths: self.var_depths.iter().zip(&other.var_depths).map(|(a, b)| *a.max(b)).collect(),
            radical_depths: self.radical_depths.iter().zip(&other.radical_depths).map(|(a, b)| *a.max(b)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerCtx {
    ch: u32,
    primes: Vec<u64>,
    vars: Vec<Variable>,
    radicals: Vec<Radical>,
    /// `Y_i^{n_i} = bases[i]` in the deep variables.
    bases: Vec<Poly>,
    cap: u128,
    /// For graph towers: edge endpoints (variable indices) per radical.
    edges: Vec<Option<(usize, usize)>>,
}

/// Per-generator depths for a graph tower; vertices and edges in the
/// context's order (labels sorted; edges by sorted endpoint labels).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Depths {
    Uniform { vertex: u32, edge: u32 },
    Explicit { vertex: Vec<u32>, edge: Vec<u32> },
}

fn check_char(r: u32) -> Result<()> {
    if r == 0 || is_prime(r as u64) {
        Ok(())
    } else {
        Err(Error::UnsupportedCharacteristic(r))
    }
}

impl TowerCtx {
    fn assemble(
        ch: u32,
        primes: Vec<u64>,
        vars: Vec<Variable>,
        radicals: Vec<Radical>,
        edges: Vec<Option<(usize, usize)>>,
        cap: u128,
    ) -> Result<Self> {
        let mut dim: u128 = 1;
        for r in &radicals {
            dim = dim.saturating_mul(r.order() as u128);
        }
        if dim > cap {
            return Err(Error::TooLarge { dim, cap });
        }
        let infl: Vec<u32> = vars.iter().map(|v| v.inflation() as u32).collect();
        let bases = radicals.iter().map(|r| r.shallow_base.inflate(&infl)).collect();
        Ok(TowerCtx { ch, primes, vars, radicals, bases, cap, edges })
    }

    /// `K_Γ` truncated at the given depths: vertex variables `X_s` with
    /// `x_s^0 = X_s^{p₀^{d_s}}`, and for each edge `e = {s,t}` of color `l` a
    /// radical `Y_e^{p_{l+1}^{d_e}} = x_s^0 + x_t^0 + 1`.
    pub fn graph_tower(cg: &ColoredGraph, ch: u32, depths: &Depths, cap: u128) -> Result<Self> {
        check_char(ch)?;
        let g = &cg.graph;
        let n = g.num_vertices();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| g.label(a).cmp(g.label(b)));
        let mut var_of = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            var_of[v] = i;
        }
        let primes = choose_primes(ch, cg.color_count as usize);
        let (vd, ed): (Vec<u32>, Vec<u32>) = match depths {
            Depths::Uniform { vertex, edge } => (vec![*vertex; n], vec![*edge; g.num_edges()]),
            Depths::Explicit { vertex, edge } => {
                if vertex.len() != n || edge.len() != g.num_edges() {
                    return Err(Error::Incompatible("depth vector length mismatch".into()));
                }
                (vertex.clone(), edge.clone())
            }
        };
        let vars: Vec<Variable> = order
            .iter()
            .enumerate()
            .map(|(i, &v)| Variable { name: g.label(v).to_string(), prime: primes[0], depth: vd[i] })
            .collect();
        let mut es: Vec<(usize, usize, u32)> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                let (x, y) = (var_of[a as usize], var_of[b as usize]);
                (x.min(y), x.max(y), cg.colors[i])
            })
            .collect();
        es.sort_unstable();
        let mut radicals = Vec::with_capacity(es.len());
        let mut edges = Vec::with_capacity(es.len());
        for (i, &(s, t, c)) in es.iter().enumerate() {
            let base = Poly::var(n, ch, s).add(&Poly::var(n, ch, t)).add(&Poly::one(n, ch));
            radicals.push(Radical {
                name: format!("{},{}", vars[s].name, vars[t].name),
                prime: primes[c as usize + 1],
                depth: ed[i],
                shallow_base: base,
                support: vec![s, t],
                color: Some(c),
            });
            edges.push(Some((s, t)));
        }
        Self::assemble(ch, primes, vars, radicals, edges, cap)
    }

    /// The rational function field in the named variables (no radicals).
    pub fn rational(ch: u32, names: &[&str], prime: u64) -> Result<Self> {
        check_char(ch)?;
        let vars = names
            .iter()
            .map(|n| Variable { name: n.to_string(), prime, depth: 0 })
            .collect();
        Self::assemble(ch, vec![prime], vars, vec![], vec![], DEFAULT_DIM_CAP)
    }

    /// Same shape, other depths.
    pub fn with_profile(&self, p: &TowerProfile) -> Result<Self> {
        if p.var_depths.len() != self.vars.len() || p.radical_depths.len() != self.radicals.len() {
            return Err(Error::Incompatible("profile shape differs from context".into()));
        }
        let vars = self
            .vars
            .iter()
            .zip(&p.var_depths)
            .map(|(v, &d)| Variable { depth: d, ..v.clone() })
            .collect();
        let radicals = self
            .radicals
            .iter()
            .zip(&p.radical_depths)
            .map(|(r, &d)| Radical { depth: d, ..r.clone() })
            .collect();
        Self::assemble(self.ch, self.primes.clone(), vars, radicals, self.edges.clone(), self.cap)
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn profile(&self) -> TowerProfile {
        TowerProfile {
            characteristic: self.ch,
            primes: self.primes.clone(),
            var_depths: self.vars.iter().map(|v| v.depth).collect(),
            radical_depths: self.radicals.iter().map(|r| r.depth).collect(),
        }
    }

    pub fn same_shape(&self, o: &TowerCtx) -> bool {
        self.ch == o.ch
            && self.vars.len() == o.vars.len()
            && self.radicals.len() == o.radicals.len()
            && self.vars.iter().zip(&o.vars).all(|(a, b)| a.name == b.name && a.prime == b.prime)
            && self
                .radicals
                .iter()
                .zip(&o.radicals)
                .all(|(a, b)| a.name == b.name && a.prime == b.prime && a.shallow_base == b.shallow_base)
    }

    pub fn characteristic(&self) -> u32 {
        self.ch
    }
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }
    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }
    pub fn radicals(&self) -> &[Radical] {
        &self.radicals
    }
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }
    pub fn nradicals(&self) -> usize {
        self.radicals.len()
    }
    pub fn var_names(&self) -> Vec<String> {
        self.vars.iter().map(|v| v.name.clone()).collect()
    }
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }
    /// Radical for the edge between two variables, if any.
    pub fn edge_index(&self, s: usize, t: usize) -> Option<usize> {
        let key = (s.min(t), s.max(t));
        self.edges.iter().position(|e| *e == Some(key))
    }
    pub fn edge_endpoints(&self, i: usize) -> Option<(usize, usize)> {
        self.edges[i]
    }
    pub fn is_graph_tower(&self) -> bool {
        !self.edges.is_empty() && self.edges.iter().all(|e| e.is_some())
    }
    pub fn orders(&self) -> Vec<u64> {
        self.radicals.iter().map(|r| r.order()).collect()
    }
    /// `A_i` in the deep variables.
    pub fn base(&self, i: usize) -> &Poly {
        &self.bases[i]
    }
    pub fn dimension(&self) -> u128 {
        self.radicals.iter().map(|r| r.order() as u128).product()
    }
    pub fn cap(&self) -> u128 {
        self.cap
    }
    /// Inflation exponents `prime^depth` per variable.
    pub fn inflations(&self) -> Vec<u32> {
        self.vars.iter().map(|v| v.inflation() as u32).collect()
    }

    /// Extend by a new transcendental `z` (deepest root `Z`, `z_0 =
    /// Z^{p^{d_z}}`) and radicals `t^v` with `(t^v)^{p_{k(v)}^{d_v}} =
    /// T_v(z_0)`. The `T_v` are polynomials over the current shallow
    /// generators with one extra last variable for `z_0`.
    pub fn prohle_extend(&self, spec: &RadicalSpec, z_depth: u32, root_depths: &[u32]) -> Result<Self> {
        let n = self.nvars();
        let zi = n;
        spec.validate(self.ch, n + 1)?;
        if root_depths.len() != spec.t.len() {
            return Err(Error::SpecInvalid("one depth per T_v required".into()));
        }
        let mut vars = self.vars.clone();
        vars.push(Variable { name: spec.z_name.clone(), prime: spec.p, depth: z_depth });
        let mut radicals: Vec<Radical> = self
            .radicals
            .iter()
            .map(|r| {
                let all: Vec<usize> = (0..n).collect();
                Radical { shallow_base: r.shallow_base.rename(&all, n + 1), ..r.clone() }
            })
            .collect();
        let mut edges = self.edges.clone();
        for (v, t) in spec.t.iter().enumerate() {
            let k = spec.partition[v];
            let mut support = t.vars_used();
            if !support.contains(&zi) {
                support.push(zi);
            }
            radicals.push(Radical {
                name: format!("t{v}"),
                prime: spec.branch_primes[k],
                depth: root_depths[v],
                shallow_base: t.clone(),
                support,
                color: None,
            });
            edges.push(None);
        }
        let mut primes = self.primes.clone();
        primes.push(spec.p);
        primes.extend(spec.branch_primes.iter().copied());
        Self::assemble(self.ch, primes, vars, radicals, edges, self.cap)
    }
}

/// Hypotheses for a generic radical extension over `F(z_0)`.
#[derive(Clone, Debug)]
pub struct RadicalSpec {
    pub z_name: String,
    pub p: u64,
    pub branch_primes: Vec<u64>,
    /// `partition[v] = k` means `T_v` gets `p_k`-power roots.
    pub partition: Vec<usize>,
    /// `T_v` as polynomials whose last variable is `z_0`.
    pub t: Vec<Poly>,
}

impl RadicalSpec {
    fn validate(&self, ch: u32, nvars: usize) -> Result<()> {
        let z = nvars - 1;
        let bad = |m: String| Err(Error::SpecInvalid(m));
        let mut ps = vec![self.p];
        ps.extend(&self.branch_primes);
        for &p in &ps {
            if !is_prime(p) || p as u32 == ch {
                return bad(format!("{p} is not a prime different from the characteristic"));
            }
        }
        let mut sorted = ps.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != ps.len() {
            return bad("primes must be pairwise distinct".into());
        }
        if self.partition.len() != self.t.len() {
            return bad("partition must assign every T_v".into());
        }
        if self.partition.iter().any(|&k| k >= self.branch_primes.len()) {
            return bad("partition refers to a missing branch prime".into());
        }
        for (v, t) in self.t.iter().enumerate() {
            if t.nvars() != nvars || t.characteristic() != ch {
                return bad(format!("T_{v} lives in the wrong ring"));
            }
            if t.degree_in(z) == 0 {
                return bad(format!("T_{v} is constant in z"));
            }
            if t.min_degree_in(z) > 0 {
                return bad(format!("T_{v} is divisible by X"));
            }
            if gcd(t, &t.derivative(z)).degree_in(z) > 0 {
                return bad(format!("T_{v} is not separable"));
            }
            for (u, s) in self.t.iter().enumerate().take(v) {
                if gcd(t, s).degree_in(z) > 0 {
                    return bad(format!("T_{u} and T_{v} are not coprime"));
                }
            }
        }
        Ok(())
    }
}

pub type Ctx = Arc<TowerCtx>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Graph;

    #[test]
    fn k2_tower() {
        let cg = ColoredGraph::monochromatic(Graph::complete(2));
        let ctx = TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: 1, edge: 1 }, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(ctx.primes(), &[3, 5]);
        assert_eq!(ctx.dimension(), 5);
        // Y^5 = X_0^3 + X_1^3 + 1.
        let x = |i| Poly::var(2, 0, i);
        assert_eq!(ctx.base(0), &x(0).pow(3).add(&x(1).pow(3)).add(&Poly::one(2, 0)));
        let d2 = ctx.with_profile(&TowerProfile { radical_depths: vec![2], ..ctx.profile() }).unwrap();
        assert_eq!(d2.dimension(), 25);
        let d0 = TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: 0, edge: 0 }, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(d0.dimension(), 1);
    }

    #[test]
    fn too_large() {
        let cg = ColoredGraph::monochromatic(Graph::complete(4));
        let r = TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: 1, edge: 1 }, DEFAULT_DIM_CAP);
        assert!(matches!(r, Err(Error::TooLarge { .. })));
    }

    #[test]
    fn prohle_spec_validation() {
        let base = TowerCtx::rational(0, &[], 3).unwrap();
        let z = Poly::var(1, 0, 0);
        let one = Poly::one(1, 0);
        let spec = |t: Vec<Poly>| RadicalSpec {
            z_name: "z".into(),
            p: 3,
            branch_primes: vec![5],
            partition: vec![0; t.len()],
            t,
        };
        let ok = base.prohle_extend(&spec(vec![z.add(&one)]), 1, &[1]).unwrap();
        assert_eq!(ok.dimension(), 5);
        assert_eq!(ok.base(0), &z.pow(3).add(&one));
        let e = base.prohle_extend(&spec(vec![z.clone()]), 1, &[1]).unwrap_err();
        assert!(e.to_string().contains("divisible by X"));
        let two = Poly::int(1, 0, 2);
        let e = base
            .prohle_extend(&spec(vec![z.add(&one), z.add(&one).mul(&z.add(&two))]), 1, &[1, 1])
            .unwrap_err();
        assert!(e.to_string().contains("coprime"));
    }
}
