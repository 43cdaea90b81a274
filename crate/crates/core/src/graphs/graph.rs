//! Simple undirected graphs with opaque string labels, optionally with an
//! edge coloring.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite simple graph. Vertices are indexed `0..n` in declaration order;
/// edges are stored as sorted index pairs, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, u32>,
    edges: Vec<(u32, u32)>,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    pub fn new<S: AsRef<str>, T: AsRef<str>>(vertices: &[S], edges: &[(T, T)]) -> Result<Self> {
        let labels: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i as u32).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex {l}")));
            }
        }
        let mut idx = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let look = |s: &str| {
                index
                    .get(s)
                    .copied()
                    .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex {s}")))
            };
            idx.push((look(a.as_ref())?, look(b.as_ref())?));
        }
        Self::build(labels, index, &idx)
    }

    /// Graph on `0..n` labelled by decimal indices.
    pub fn from_indices(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i as u32)).collect();
        Self::build(labels, index, edges)
    }

    /// Graph from labels, their index map and index-pair edges.
    pub(crate) fn from_parts(
        labels: Vec<String>,
        index: HashMap<String, u32>,
        raw: &[(u32, u32)],
    ) -> Result<Self> {
        Self::build(labels, index, raw)
    }

    fn build(labels: Vec<String>, index: HashMap<String, u32>, raw: &[(u32, u32)]) -> Result<Self> {
        let n = labels.len() as u32;
        let mut edges = Vec::with_capacity(raw.len());
        for &(a, b) in raw {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at {}", labels[a as usize])));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            let (a, b) = w[0];
            return Err(Error::InvalidGraph(format!(
                "duplicate edge {},{}",
                labels[a as usize], labels[b as usize]
            )));
        }
        let mut adj = vec![Vec::new(); labels.len()];
        for &(a, b) in &edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        Ok(Graph { labels, index, edges, adj })
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }
    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.index.get(label).map(|&i| i as usize)
    }
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&(b as u32)).is_ok()
    }
    /// Position of edge `{a,b}` in `edges()`.
    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let e = (a.min(b) as u32, a.max(b) as u32);
        self.edges.binary_search(&e).ok()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    queue.push_back(w as usize);
                }
            }
        }
        count == n
    }

    /// Subgraph induced on all vertices except `v`.
    pub fn remove_vertex(&self, label: &str) -> Result<Graph> {
        let v = self
            .vertex(label)
            .ok_or_else(|| Error::InvalidGraph(format!("unknown vertex {label}")))?;
        let keep: Vec<&str> = self.labels.iter().filter(|l| *l != label).map(|s| s.as_str()).collect();
        let edges: Vec<(&str, &str)> = self
            .edges
            .iter()
            .filter(|&&(a, b)| a as usize != v && b as usize != v)
            .map(|&(a, b)| (self.label(a as usize), self.label(b as usize)))
            .collect();
        Graph::new(&keep, &edges)
    }

    pub fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                e.push((i, j));
            }
        }
        Graph::from_indices(n, &e).unwrap()
    }

    pub fn path(n: usize) -> Graph {
        let e: Vec<(u32, u32)> = (1..n as u32).map(|i| (i - 1, i)).collect();
        Graph::from_indices(n, &e).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut e: Vec<(u32, u32)> = (1..n as u32).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            e.push((0, n as u32 - 1));
        }
        Graph::from_indices(n, &e).unwrap()
    }

    /// `K_{1,k}` with center `0`.
    pub fn star(k: usize) -> Graph {
        let e: Vec<(u32, u32)> = (1..=k as u32).map(|i| (0, i)).collect();
        Graph::from_indices(k + 1, &e).unwrap()
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            vertices: self.labels.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| [self.labels[a as usize].clone(), self.labels[b as usize].clone()])
                .collect(),
            colors: None,
        }
    }
}

/// A graph with every edge colored by an integer below `color_count`.
/// `colors[i]` is the color of `graph.edges()[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    pub graph: Graph,
    pub colors: Vec<u32>,
    pub color_count: u32,
}

impl ColoredGraph {
    pub fn new(graph: Graph, colors: Vec<u32>, color_count: u32) -> Result<Self> {
        if colors.len() != graph.num_edges() {
            return Err(Error::InvalidGraph(format!(
                "{} colors for {} edges",
                colors.len(),
                graph.num_edges()
            )));
        }
        if let Some(c) = colors.iter().find(|&&c| c >= color_count) {
            return Err(Error::InvalidGraph(format!("color {c} >= {color_count}")));
        }
        Ok(ColoredGraph { graph, colors, color_count })
    }

    /// Every edge gets color 0.
    pub fn monochromatic(graph: Graph) -> Self {
        let colors = vec![0; graph.num_edges()];
        ColoredGraph { graph, colors, color_count: 1 }
    }

    pub fn edge_color(&self, a: usize, b: usize) -> Option<u32> {
        self.graph.edge_index(a, b).map(|i| self.colors[i])
    }

    pub fn to_json(&self) -> GraphJson {
        let mut j = self.graph.to_json();
        let mut m = BTreeMap::new();
        for (i, &(a, b)) in self.graph.edges().iter().enumerate() {
            m.insert(edge_key(self.graph.label(a as usize), self.graph.label(b as usize)), self.colors[i]);
        }
        j.colors = Some(m);
        j
    }
}

/// Sorted comma-joined labels, the key used for edge colors in JSON.
pub fn edge_key(a: &str, b: &str) -> String {
    if a <= b {
        format!("{a},{b}")
    } else {
        format!("{b},{a}")
    }
}

/// Wire format: `{"vertices":[..],"edges":[[a,b],..],"colors":{"a,b":0}}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub colors: Option<BTreeMap<String, u32>>,
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<Graph> {
        let e: Vec<(&str, &str)> = self.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
        Graph::new(&self.vertices, &e)
    }

    /// Colored graph; the color count is one more than the largest color.
    pub fn to_colored(&self) -> Result<ColoredGraph> {
        let g = self.to_graph()?;
        let Some(map) = &self.colors else {
            return Ok(ColoredGraph::monochromatic(g));
        };
        let mut colors = Vec::with_capacity(g.num_edges());
        for &(a, b) in g.edges() {
            let k = edge_key(g.label(a as usize), g.label(b as usize));
            let c = map
                .get(&k)
                .ok_or_else(|| Error::InvalidGraph(format!("edge {k} has no color")))?;
            colors.push(*c);
        }
        if map.len() != colors.len() {
            return Err(Error::InvalidGraph("color for a non-edge".into()));
        }
        let n = colors.iter().max().map_or(1, |m| m + 1);
        ColoredGraph::new(g, colors, n)
    }

    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Graph::new(&["a"], &[("a", "a")]).is_err());
        assert!(Graph::new(&["a", "b"], &[("a", "b"), ("b", "a")]).is_err());
        assert!(Graph::new::<&str, &str>(&["a", "a"], &[]).is_err());
        assert!(Graph::new(&["a"], &[("a", "q")]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::new(&["a", "b", "c"], &[("a", "b"), ("c", "b")]).unwrap();
        let cg = ColoredGraph::new(g, vec![0, 2], 3).unwrap();
        let s = serde_json::to_string(&cg.to_json()).unwrap();
        assert!(s.contains("\"b,c\":2"));
        let back = GraphJson::parse(&s).unwrap().to_colored().unwrap();
        assert_eq!(back, cg);
    }

    #[test]
    fn connectivity() {
        assert!(Graph::path(4).is_connected());
        assert!(!Graph::from_indices(3, &[(0, 1)]).unwrap().is_connected());
    }
}
