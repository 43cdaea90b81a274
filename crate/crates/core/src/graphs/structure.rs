//! Finite relational structures with unary functions, and their coding as
//! connected graphs with the same automorphism group.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{Perm, PermGroup};

use super::aut::{aut_graph_with, AutOptions};
use super::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    pub arity: usize,
    /// Tuples of universe indices.
    pub tuples: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnaryFunction {
    pub name: String,
    /// `map[i]` is the image of element `i`.
    pub map: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteStructure {
    pub universe: Vec<String>,
    #[serde(default)]
    pub relations: Vec<Relation>,
    #[serde(default)]
    pub unary_functions: Vec<UnaryFunction>,
}

impl FiniteStructure {
    pub fn new(universe: Vec<String>, relations: Vec<Relation>, unary_functions: Vec<UnaryFunction>) -> Result<Self> {
        let s = FiniteStructure { universe, relations, unary_functions };
        s.validate()?;
        Ok(s)
    }

    /// A bare set of size `n`.
    pub fn pure_set(n: usize) -> Self {
        FiniteStructure { universe: (0..n).map(|i| i.to_string()).collect(), relations: vec![], unary_functions: vec![] }
    }

    /// `{0,…,n−1}` with the strict order `<`.
    pub fn linear_order(n: usize) -> Self {
        let mut tuples = Vec::new();
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                tuples.push(vec![i, j]);
            }
        }
        FiniteStructure {
            universe: (0..n).map(|i| i.to_string()).collect(),
            relations: vec![Relation { name: "<".into(), arity: 2, tuples }],
            unary_functions: vec![],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.universe.len() as u32;
        for r in &self.relations {
            for t in &r.tuples {
                if t.len() != r.arity {
                    return Err(Error::InvalidStructure(format!("{}: tuple {t:?} has wrong arity", r.name)));
                }
                if t.iter().any(|&x| x >= n) {
                    return Err(Error::InvalidStructure(format!("{}: tuple {t:?} leaves the universe", r.name)));
                }
            }
        }
        for f in &self.unary_functions {
            if f.map.len() != n as usize || f.map.iter().any(|&x| x >= n) {
                return Err(Error::InvalidStructure(format!("{}: not a total map on the universe", f.name)));
            }
        }
        Ok(())
    }

    /// Relations with each unary function replaced by its graph.
    pub fn relational(&self) -> Vec<Relation> {
        let mut rels = self.relations.clone();
        for f in &self.unary_functions {
            rels.push(Relation {
                name: f.name.clone(),
                arity: 2,
                tuples: f.map.iter().enumerate().map(|(i, &y)| vec![i as u32, y]).collect(),
            });
        }
        for r in &mut rels {
            r.tuples.sort();
            r.tuples.dedup();
        }
        rels
    }

    pub fn is_automorphism(&self, p: &Perm) -> bool {
        if p.degree() != self.universe.len() {
            return false;
        }
        let rels = self.relational();
        rels.iter().all(|r| {
            r.tuples.iter().all(|t| {
                let img: Vec<u32> = t.iter().map(|&x| p.apply(x as usize) as u32).collect();
                r.tuples.binary_search(&img).is_ok()
            })
        })
    }
}

/// Every permutation of the universe, filtered. Oracle for small universes.
pub fn aut_structure_brute_force(s: &FiniteStructure) -> Result<PermGroup> {
    let n = s.universe.len();
    if n > 8 {
        return Err(Error::BudgetExceeded(format!("brute force over {n}! permutations")));
    }
    let mut found = Vec::new();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    loop {
        let p = Perm::from_images(perm.clone())?;
        if s.is_automorphism(&p) {
            found.push(p);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    PermGroup::from_elements(n, found)
}

pub(crate) fn next_permutation(a: &mut [u32]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// A coded structure: the graph and the range of vertex indices holding the
/// universe (`0..universe_len`).
#[derive(Clone, Debug)]
pub struct CodedStructure {
    pub graph: Graph,
    pub universe_len: usize,
}

/// Code `s` as a connected graph with `Aut(graph) ≅ Aut(s)` by restriction to
/// vertices `0..|universe|`.
///
/// Core vertices: the universe, a hub joined to every universe vertex, one
/// vertex per tuple and one per (tuple, position), the latter joined to the
/// tuple vertex and the universe element at that position. Each core vertex
/// of type `k` carries two pendant paths of lengths `k+1` and `k+2`; types
/// are universe, hub, each position, and each relation name. Core vertices
/// are exactly those of degree at least 3, so the tags are recovered by any
/// automorphism.
pub fn code_structure(s: &FiniteStructure) -> Result<CodedStructure> {
    s.validate()?;
    let rels = s.relational();
    let n = s.universe.len();
    let max_arity = rels.iter().map(|r| r.arity).max().unwrap_or(0);
    let mut labels: Vec<String> = s.universe.iter().map(|u| format!("u:{u}")).collect();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut kinds: Vec<usize> = vec![0; n];
    let add = |label: String, kind: usize, labels: &mut Vec<String>, kinds: &mut Vec<usize>| {
        labels.push(label);
        kinds.push(kind);
        (labels.len() - 1) as u32
    };
    let hub = add("hub".into(), 1, &mut labels, &mut kinds);
    for u in 0..n as u32 {
        edges.push((hub, u));
    }
    for (ri, r) in rels.iter().enumerate() {
        for (ti, t) in r.tuples.iter().enumerate() {
            let tv = add(format!("t:{ri}:{ti}"), 2 + max_arity + ri, &mut labels, &mut kinds);
            for (j, &x) in t.iter().enumerate() {
                let pv = add(format!("p:{ri}:{ti}:{j}"), 2 + j, &mut labels, &mut kinds);
                edges.push((tv, pv));
                edges.push((pv, x));
            }
        }
    }
    let core = labels.len();
    for v in 0..core {
        let k = kinds[v];
        for len in [k + 1, k + 2] {
            let mut prev = v as u32;
            for step in 0..len {
                labels.push(format!("tag:{v}:{len}:{step}"));
                let w = (labels.len() - 1) as u32;
                edges.push((prev, w));
                prev = w;
            }
        }
    }
    let graph = Graph::from_indices(labels.len(), &edges)?;
    let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i as u32)).collect();
    let graph = Graph::from_parts(labels, index, graph.edges())?;
    Ok(CodedStructure { graph, universe_len: n })
}

impl CodedStructure {
    /// `Aut(graph)` restricted to the universe vertices.
    pub fn universe_aut(&self, node_budget: u64) -> Result<PermGroup> {
        let opts = AutOptions { max_vertices: usize::MAX, node_budget, ..Default::default() };
        let a = aut_graph_with(&self.graph, None, opts)?;
        let n = self.universe_len;
        let mut imgs = Vec::with_capacity(a.order());
        for p in a.elements() {
            let img: Vec<u32> = (0..n).map(|i| p.apply(i) as u32).collect();
            if img.iter().any(|&x| x as usize >= n) {
                return Err(Error::InvalidStructure("automorphism leaves the universe".into()));
            }
            imgs.push(Perm::from_images(img)?);
        }
        imgs.sort();
        imgs.dedup();
        if imgs.len() != a.order() {
            return Err(Error::InvalidStructure("restriction to the universe is not injective".into()));
        }
        PermGroup::from_elements(n, imgs)
    }
}

/// Universe = elements of `group`; one unary function `x ↦ x·g` per element.
/// Automorphisms are the left translations.
pub fn cayley_structure(group: &PermGroup) -> FiniteStructure {
    let els = group.elements();
    let universe: Vec<String> = (0..els.len()).map(|i| format!("g{i}")).collect();
    let unary_functions = els
        .iter()
        .enumerate()
        .map(|(gi, g)| UnaryFunction {
            name: format!("f{gi}"),
            // x·g acts as "x first, then g" in composition order g∘x.
            map: els.iter().map(|x| group.index_of(&g.compose(x)).unwrap() as u32).collect(),
        })
        .collect();
    FiniteStructure { universe, relations: vec![], unary_functions }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(s: &FiniteStructure) -> usize {
        let oracle = aut_structure_brute_force(s).unwrap();
        let coded = code_structure(s).unwrap();
        assert!(coded.graph.is_connected());
        let got = coded.universe_aut(10_000_000).unwrap();
        assert_eq!(got, oracle);
        oracle.order()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(check(&FiniteStructure::pure_set(3)), 6);
        assert_eq!(check(&FiniteStructure::linear_order(2)), 1);
        assert_eq!(check(&cayley_structure(&PermGroup::cyclic(3))), 3);
    }

    #[test]
    fn cayley_orders() {
        assert_eq!(aut_structure_brute_force(&cayley_structure(&PermGroup::cyclic(2))).unwrap().order(), 2);
        assert_eq!(aut_structure_brute_force(&cayley_structure(&PermGroup::symmetric(3))).unwrap().order(), 6);
        assert_eq!(aut_structure_brute_force(&cayley_structure(&PermGroup::trivial(1))).unwrap().order(), 1);
    }

    #[test]
    fn validation() {
        let bad = FiniteStructure::new(
            vec!["a".into()],
            vec![Relation { name: "R".into(), arity: 2, tuples: vec![vec![0]] }],
            vec![],
        );
        assert!(bad.is_err());
    }
}
