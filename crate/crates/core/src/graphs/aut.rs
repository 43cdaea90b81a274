//! Graph automorphisms by backtracking over vertex images, pruned by an
//! iterated neighbourhood refinement of the vertex partition.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::groups::{Perm, PermGroup};

use super::graph::{ColoredGraph, Graph};

#[derive(Clone, Copy, Debug)]
pub struct AutOptions {
    pub max_vertices: usize,
    /// Search nodes visited before giving up.
    pub node_budget: u64,
    /// Stop with `BudgetExceeded` once this many automorphisms are found.
    pub max_order: usize,
}

impl Default for AutOptions {
    fn default() -> Self {
        AutOptions { max_vertices: 64, node_budget: 5_000_000, max_order: 20_000 }
    }
}

/// `Aut(g)` acting on vertex indices.
pub fn aut_graph(g: &Graph) -> Result<PermGroup> {
    aut_graph_with(g, None, AutOptions::default())
}

/// Color-preserving automorphisms.
pub fn aut_colored(cg: &ColoredGraph) -> Result<PermGroup> {
    aut_graph_with(&cg.graph, Some(&cg.colors), AutOptions::default())
}

/// Equitable-style refinement: start from vertex degree (and incident color
/// multiset) and split by neighbour classes until stable.
fn refine(g: &Graph, colors: Option<&[u32]>, seed: Vec<u64>) -> Vec<u64> {
    let n = g.num_vertices();
    let ecolor = |a: usize, b: usize| colors.map_or(0, |c| c[g.edge_index(a, b).unwrap()] as u64);
    let mut cell = seed;
    let mut classes = count_classes(&cell);
    loop {
        let sigs: Vec<(u64, Vec<(u64, u64)>)> = (0..n)
            .map(|v| {
                let mut s: Vec<(u64, u64)> =
                    g.neighbors(v).iter().map(|&w| (cell[w as usize], ecolor(v, w as usize))).collect();
                s.sort_unstable();
                (cell[v], s)
            })
            .collect();
        let mut ids: HashMap<&(u64, Vec<(u64, u64)>), u64> = HashMap::new();
        let mut sorted: Vec<&(u64, Vec<(u64, u64)>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        for (i, s) in sorted.into_iter().enumerate() {
            ids.insert(s, i as u64);
        }
        let next: Vec<u64> = sigs.iter().map(|s| ids[s]).collect();
        let c = count_classes(&next);
        cell = next;
        if c == classes {
            return cell;
        }
        classes = c;
    }
}

fn count_classes(c: &[u64]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

pub fn aut_graph_with(g: &Graph, colors: Option<&[u32]>, opts: AutOptions) -> Result<PermGroup> {
    let n = g.num_vertices();
    if n > opts.max_vertices {
        return Err(Error::BudgetExceeded(format!(
            "{n} vertices exceeds the bound {}",
            opts.max_vertices
        )));
    }
    if n == 0 {
        return Ok(PermGroup::trivial(0));
    }
    let cell = refine(g, colors, vec![0; n]);
    let order = search_order(g, &cell);
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // For each vertex in search order: an earlier neighbour to anchor the
    // candidate list, if any.
    let anchor: Vec<Option<usize>> = order
        .iter()
        .map(|&v| g.neighbors(v).iter().map(|&u| u as usize).filter(|&u| pos[u] < pos[v]).min_by_key(|&u| pos[u]))
        .collect();
    let ecolor = |a: usize, b: usize| colors.map(|c| c[g.edge_index(a, b).unwrap()]);

    let mut found: Vec<Perm> = Vec::new();
    let mut image = vec![u32::MAX; n];
    let mut used = vec![false; n];
    let mut nodes = 0u64;
    let candidates = |depth: usize, image: &[u32]| -> Vec<usize> {
        let v = order[depth];
        match anchor[depth] {
            Some(u) => g.neighbors(image[u] as usize).iter().map(|&w| w as usize).filter(|&w| cell[w] == cell[v]).collect(),
            None => (0..n).filter(|&w| cell[w] == cell[v]).collect(),
        }
    };
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(candidates(0, &image), 0)];
    while !stack.is_empty() {
        let depth = stack.len() - 1;
        let top = stack.last_mut().unwrap();
        let v = order[depth];
        let mut placed = false;
        while top.1 < top.0.len() {
            let w = top.0[top.1];
            top.1 += 1;
            if used[w] {
                continue;
            }
            nodes += 1;
            if nodes > opts.node_budget {
                return Err(Error::BudgetExceeded(format!("node budget {} exhausted", opts.node_budget)));
            }
            let mut ok = true;
            let mut assigned = 0;
            for &u in g.neighbors(v) {
                let u = u as usize;
                if pos[u] < depth {
                    assigned += 1;
                    let iu = image[u] as usize;
                    if !g.has_edge(iu, w) || ecolor(u, v) != ecolor(iu, w) {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let hit = g.neighbors(w).iter().filter(|&&x| used[x as usize]).count();
                ok = hit == assigned;
            }
            if ok {
                image[v] = w as u32;
                used[w] = true;
                placed = true;
                break;
            }
        }
        if placed {
            if depth + 1 == n {
                found.push(Perm::from_images(image.clone())?);
                if found.len() > opts.max_order {
                    return Err(Error::BudgetExceeded(format!("more than {} automorphisms", opts.max_order)));
                }
                used[image[v] as usize] = false;
                image[v] = u32::MAX;
            } else {
                let c = candidates(depth + 1, &image);
                stack.push((c, 0));
            }
        } else {
            stack.pop();
            if let Some(&prev) = depth.checked_sub(1).map(|d| &order[d]) {
                used[image[prev] as usize] = false;
                image[prev] = u32::MAX;
            }
        }
    }
    Ok(PermGroup::from_trusted(n, found))
}

/// BFS from the vertex in the smallest cell, so each new vertex is adjacent to
/// an earlier one whenever possible.
fn search_order(g: &Graph, cell: &[u64]) -> Vec<usize> {
    let n = g.num_vertices();
    let mut size: HashMap<u64, usize> = HashMap::new();
    for &c in cell {
        *size.entry(c).or_default() += 1;
    }
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let start = (0..n).filter(|&v| !seen[v]).min_by_key(|&v| (size[&cell[v]], v)).unwrap();
        seen[start] = true;
        let mut q = VecDeque::from([start]);
        while let Some(v) = q.pop_front() {
            out.push(v);
            let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| w as usize).filter(|&w| !seen[w]).collect();
            nb.sort_by_key(|&w| (size[&cell[w]], w));
            for w in nb {
                seen[w] = true;
                q.push_back(w);
            }
        }
    }
    out
}

/// Check that `p` maps edges to edges (both ways) and preserves colors.
pub fn is_automorphism(g: &Graph, colors: Option<&[u32]>, p: &Perm) -> bool {
    if p.degree() != g.num_vertices() {
        return false;
    }
    g.edges().iter().enumerate().all(|(i, &(a, b))| {
        let (x, y) = (p.apply(a as usize), p.apply(b as usize));
        match g.edge_index(x, y) {
            Some(j) => colors.map_or(true, |c| c[i] == c[j]),
            None => false,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(aut_graph(&Graph::complete(3)).unwrap().order(), 6);
        assert_eq!(aut_graph(&Graph::path(3)).unwrap().order(), 2);
        assert_eq!(aut_graph(&Graph::cycle(5)).unwrap().order(), 10);
        assert_eq!(aut_graph(&Graph::complete(5)).unwrap().order(), 120);
        assert_eq!(aut_graph(&Graph::star(4)).unwrap().order(), 24);
        // Disconnected: two edges.
        let g = Graph::from_indices(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(aut_graph(&g).unwrap().order(), 8);
    }

    #[test]
    fn colors_cut_symmetry() {
        let g = Graph::complete(3);
        let cg = ColoredGraph::new(g, vec![0, 0, 1], 2).unwrap();
        let a = aut_colored(&cg).unwrap();
        assert_eq!(a.order(), 2);
        assert!(a.elements().iter().all(|p| is_automorphism(&cg.graph, Some(&cg.colors), p)));
    }

    #[test]
    fn vertex_bound() {
        let opts = AutOptions { max_vertices: 4, ..Default::default() };
        assert!(matches!(
            aut_graph_with(&Graph::path(5), None, opts),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
