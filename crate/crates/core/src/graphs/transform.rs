//! The gadget graph and the edge-replacement transform `Γ ↦ Γ⁺` with its
//! 7-coloring induced by the homomorphism `f: Γ⁺ → G′`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::Perm;

use super::graph::{ColoredGraph, Graph};

/// Gadget vertex names. `x` and `y` are the attachment points.
pub const GADGET_VERTICES: [&str; 6] = ["x", "y", "z", "a", "b", "c"];
/// Interior gadget vertices, in the order used for `(2,u,w)` vertices.
pub const INTERIOR: [&str; 4] = ["z", "a", "b", "c"];
/// Edges of `G′ = G − y`, sorted lexicographically under `x < z < a < b < c`.
/// Index `i` is color `i`.
pub const G_PRIME_EDGES: [(&str, &str); 7] = [
    ("x", "z"),
    ("x", "c"),
    ("z", "a"),
    ("z", "b"),
    ("z", "c"),
    ("a", "b"),
    ("b", "c"),
];
pub const COLOR_COUNT: u32 = 7;

const GADGET_EDGES: [(&str, &str); 9] = [
    ("z", "x"),
    ("z", "y"),
    ("z", "a"),
    ("z", "b"),
    ("z", "c"),
    ("a", "b"),
    ("b", "c"),
    ("x", "c"),
    ("y", "c"),
];

pub fn gadget() -> Graph {
    Graph::new(&GADGET_VERTICES, &GADGET_EDGES).expect("gadget is valid")
}

/// `G′`, the gadget with `y` removed.
pub fn gadget_prime() -> Graph {
    gadget().remove_vertex("y").expect("y exists")
}

fn color_of(w1: &str, w2: &str) -> u32 {
    G_PRIME_EDGES
        .iter()
        .position(|&(a, b)| (a, b) == (w1, w2) || (a, b) == (w2, w1))
        .expect("edge of G′") as u32
}

/// Vertex of `Γ⁺` as a tagged value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PlusVertex {
    /// `(1,x)`, holding the index of `x` in `Γ`.
    Original(usize),
    /// `(2,u,w)`, holding the edge index of `u` in `Γ` and the interior vertex.
    Interior(usize, &'static str),
}

fn check_label(l: &str) -> Result<()> {
    if l.contains([':', '|', ',']) {
        return Err(Error::InvalidGraph(format!("label {l:?} contains a reserved character")));
    }
    Ok(())
}

/// Build `Γ⁺`. Labels are `1:x` for original vertices and `2:s|t:w` for the
/// interior vertex `w` of the copy sitting on edge `{s,t}`.
pub fn transform(g: &Graph) -> Result<ColoredGraph> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    for l in g.labels() {
        check_label(l)?;
    }
    let n = g.num_vertices();
    let mut labels: Vec<String> = g.labels().iter().map(|l| format!("1:{l}")).collect();
    for &(s, t) in g.edges() {
        for w in INTERIOR {
            labels.push(format!("2:{}|{}:{w}", g.label(s as usize), g.label(t as usize)));
        }
    }
    let interior = |e: usize, w: &str| (n + 4 * e + INTERIOR.iter().position(|&v| v == w).unwrap()) as u32;
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut color_by_edge: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    let mut push = |a: u32, b: u32, c: u32, edges: &mut Vec<(u32, u32)>| {
        edges.push((a, b));
        color_by_edge.insert((a.min(b), a.max(b)), c);
    };
    for (e, &(s, t)) in g.edges().iter().enumerate() {
        for &(w1, w2) in &GADGET_EDGES {
            let attach = |w: &str| w == "x" || w == "y";
            match (attach(w1), attach(w2)) {
                (false, false) => push(interior(e, w1), interior(e, w2), color_of(w1, w2), &mut edges),
                (true, false) | (false, true) => {
                    let (end, w) = if attach(w1) { (w1, w2) } else { (w2, w1) };
                    let v = if end == "x" { s } else { t };
                    push(v, interior(e, w), color_of("x", w), &mut edges);
                }
                (true, true) => unreachable!("x and y are not adjacent"),
            }
        }
    }
    let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i as u32)).collect();
    let plus = Graph::from_parts(labels, index, &edges)?;
    let colors = plus.edges().iter().map(|e| color_by_edge[e]).collect();
    ColoredGraph::new(plus, colors, COLOR_COUNT)
}

/// Decode a `Γ⁺` vertex label.
pub fn parse_plus_label(label: &str) -> Result<(Option<&str>, Option<(&str, &str, &str)>)> {
    let bad = || Error::NotFromTransform(format!("unexpected label {label:?}"));
    if let Some(x) = label.strip_prefix("1:") {
        return Ok((Some(x), None));
    }
    let rest = label.strip_prefix("2:").ok_or_else(bad)?;
    let (edge, w) = rest.rsplit_once(':').ok_or_else(bad)?;
    let (s, t) = edge.split_once('|').ok_or_else(bad)?;
    if !INTERIOR.contains(&w) {
        return Err(bad());
    }
    Ok((None, Some((s, t, w))))
}

/// Recover `Γ` from the tagging of `Γ⁺`.
pub fn source_graph(cg: &ColoredGraph) -> Result<Graph> {
    let mut verts = Vec::new();
    let mut edges = Vec::new();
    for l in cg.graph.labels() {
        match parse_plus_label(l)? {
            (Some(x), _) => verts.push(x.to_string()),
            (_, Some((s, t, "z"))) => edges.push((s.to_string(), t.to_string())),
            _ => {}
        }
    }
    let g = Graph::new(&verts, &edges).map_err(|e| Error::NotFromTransform(e.to_string()))?;
    if g.num_vertices() + 4 * g.num_edges() != cg.graph.num_vertices() {
        return Err(Error::NotFromTransform("vertex count mismatch".into()));
    }
    Ok(g)
}

/// `ψ_φ`: the permutation of `Γ` induced on the `(1,x)` vertices.
pub fn restrict_aut(cg: &ColoredGraph, phi: &Perm) -> Result<Perm> {
    let src = source_graph(cg)?;
    let n = src.num_vertices();
    if phi.degree() != cg.graph.num_vertices() {
        return Err(Error::NotFromTransform("permutation degree mismatch".into()));
    }
    let mut img = Vec::with_capacity(n);
    for x in 0..n {
        let v = cg.graph.vertex(&format!("1:{}", src.label(x))).unwrap();
        let label = cg.graph.label(phi.apply(v));
        let (Some(x2), _) = parse_plus_label(label)? else {
            return Err(Error::NotFromTransform(format!("(1,x) vertex sent to {label}")));
        };
        img.push(src.vertex(x2).unwrap() as u32);
    }
    Perm::from_images(img)
}

/// The unique `φ` with `ψ_φ = ψ`: `(1,x) ↦ (1,ψx)` and `(2,u,w) ↦ (2,ψu,w)`.
pub fn lift_aut(cg: &ColoredGraph, psi: &Perm) -> Result<Perm> {
    let src = source_graph(cg)?;
    if psi.degree() != src.num_vertices() {
        return Err(Error::NotFromTransform("permutation degree mismatch".into()));
    }
    let g = &cg.graph;
    let mut img = Vec::with_capacity(g.num_vertices());
    for l in g.labels() {
        let target = match parse_plus_label(l)? {
            (Some(x), _) => format!("1:{}", src.label(psi.apply(src.vertex(x).unwrap()))),
            (_, Some((s, t, w))) => {
                let s2 = psi.apply(src.vertex(s).unwrap());
                let t2 = psi.apply(src.vertex(t).unwrap());
                let (a, b) = (s2.min(t2), s2.max(t2));
                format!("2:{}|{}:{w}", src.label(a), src.label(b))
            }
            _ => unreachable!(),
        };
        let v = g
            .vertex(&target)
            .ok_or_else(|| Error::NotFromTransform(format!("{l} has no image under ψ")))?;
        img.push(v as u32);
    }
    Perm::from_images(img)
}

/// Result of the star test for one color class.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct StarReport {
    pub color: u32,
    pub pass: bool,
    pub components: usize,
    /// Vertex labels of the first component that is not a star.
    pub witness: Option<Vec<String>>,
}

/// For each color, check every connected component of the color class is a
/// star.
pub fn check_star_coloring(cg: &ColoredGraph) -> Vec<StarReport> {
    let g = &cg.graph;
    let n = g.num_vertices();
    (0..cg.color_count)
        .map(|color| {
            let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
            for (i, &(a, b)) in g.edges().iter().enumerate() {
                if cg.colors[i] == color {
                    adj[a as usize].push(b as usize);
                    adj[b as usize].push(a as usize);
                }
            }
            let mut seen = vec![false; n];
            let mut components = 0;
            let mut witness = None;
            for start in 0..n {
                if seen[start] || adj[start].is_empty() {
                    continue;
                }
                components += 1;
                let mut comp = vec![start];
                seen[start] = true;
                let mut i = 0;
                while i < comp.len() {
                    for &w in &adj[comp[i]] {
                        if !seen[w] {
                            seen[w] = true;
                            comp.push(w);
                        }
                    }
                    i += 1;
                }
                let edges: usize = comp.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
                let star = comp.iter().any(|&v| adj[v].len() == edges);
                if !star && witness.is_none() {
                    comp.sort_unstable();
                    witness = Some(comp.iter().map(|&v| g.label(v).to_string()).collect());
                }
            }
            StarReport { color, pass: witness.is_none(), components, witness }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::aut::{aut_colored, aut_graph};

    #[test]
    fn gadget_shape() {
        let g = gadget();
        assert_eq!((g.num_vertices(), g.num_edges()), (6, 9));
        let val = |s: &str| g.degree(g.vertex(s).unwrap());
        assert_eq!([val("z"), val("b"), val("c"), val("x"), val("y"), val("a")], [5, 3, 4, 2, 2, 2]);
        assert_eq!(gadget_prime().num_edges(), 7);
        let a = aut_graph(&g).unwrap();
        assert_eq!(a.order(), 2);
        let swap = a.elements().iter().find(|p| !p.is_identity()).unwrap();
        assert_eq!(swap.cycles(), vec![vec![0, 1]]);
    }

    #[test]
    fn transform_k2_is_the_gadget() {
        let k2 = Graph::complete(2);
        let t = transform(&k2).unwrap();
        assert_eq!((t.graph.num_vertices(), t.graph.num_edges()), (6, 9));
        assert_eq!(aut_colored(&t).unwrap().order(), 2);
        assert_eq!(aut_graph(&t.graph).unwrap().order(), 2);
        assert!(check_star_coloring(&t).iter().all(|r| r.pass));
        let src = source_graph(&t).unwrap();
        assert_eq!(src, k2);
    }

    #[test]
    fn transform_p3_size() {
        let t = transform(&Graph::path(3)).unwrap();
        assert_eq!(t.graph.num_vertices(), 11);
    }

    #[test]
    fn disconnected_rejected() {
        let g = Graph::from_indices(3, &[(0, 1)]).unwrap();
        assert!(matches!(transform(&g), Err(Error::Disconnected)));
    }

    #[test]
    fn star_checks() {
        let tri = ColoredGraph::monochromatic(Graph::complete(3));
        let r = check_star_coloring(&tri);
        assert!(!r[0].pass);
        assert_eq!(r[0].witness.as_ref().unwrap().len(), 3);
        let s = ColoredGraph::monochromatic(Graph::star(5));
        assert!(check_star_coloring(&s)[0].pass);
    }

    #[test]
    fn restrict_lift_k2() {
        let t = transform(&Graph::complete(2)).unwrap();
        let a = aut_graph(&t.graph).unwrap();
        for phi in a.elements() {
            let psi = restrict_aut(&t, phi).unwrap();
            assert_eq!(psi.is_identity(), phi.is_identity());
            assert_eq!(&lift_aut(&t, &psi).unwrap(), phi);
        }
        let plain = ColoredGraph::monochromatic(Graph::path(2));
        assert!(matches!(
            restrict_aut(&plain, &Perm::identity(2)),
            Err(Error::NotFromTransform(_))
        ));
    }
}
