//! Finite simple graphs and the structural predicates the rule engine consumes.
//!
//! Vertices are dense indices `0..n`. Optional display labels are carried for
//! gallery graphs whose figures use names like `a`, `b` or `1'`; they never
//! affect equality or any structural computation.

mod tree;

pub use tree::{find_cherries, generations, tree_center, Cherry, GenerationPartition};

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Clone, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct Graph {
    n: usize,
    adj: Vec<FixedBitSet>,
    labels: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr {
            n: g.n,
            edges: g.edges(),
            labels: g.labels,
        }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        let g = Graph::new(r.n, r.edges)?;
        match r.labels {
            Some(labels) if labels.len() != r.n => Err(Error::BadParams {
                name: "labels".into(),
                reason: format!("{} labels for {} vertices", labels.len(), r.n),
            }),
            labels => Ok(Graph { labels, ..g }),
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Builds the graph on `n` vertices with the given edges; duplicates and
    /// both orientations of an edge collapse to one.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::edgeless(n);
        for (u, v) in edges {
            for index in [u, v] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        Ok(g)
    }

    /// The graph on `n` isolated vertices.
    pub fn edgeless(n: usize) -> Self {
        Graph {
            n,
            adj: vec![FixedBitSet::with_capacity(n); n],
            labels: None,
        }
    }

    /// Builds a graph from a predicate on ordered vertex pairs. The predicate
    /// is only consulted for `i < j`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Graph::edgeless(n);
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    g.adj[i].insert(j);
                    g.adj[j].insert(i);
                }
            }
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_fn(n, |_, _| true)
    }

    pub fn cycle(n: usize) -> Self {
        Graph::from_fn(n, |i, j| n >= 3 && (j == i + 1 || (i == 0 && j == n - 1)))
    }

    /// The path with `length` edges (and `length + 1` vertices).
    pub fn path(length: usize) -> Self {
        Graph::from_fn(length + 1, |i, j| j == i + 1)
    }

    /// `K_{m,n}` with the `m`-side on `0..m`.
    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        Graph::from_fn(m + n, |i, j| i < m && j >= m)
    }

    /// `K_{1,k}` with the hub at vertex 0.
    pub fn star(k: usize) -> Self {
        Graph::complete_bipartite(1, k)
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Self {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        assert_eq!(labels.len(), self.n, "one label per vertex");
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of `v`: its label if present, else the index.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(labels) => labels[v].clone(),
            None => v.to_string(),
        }
    }

    /// Index of the vertex carrying `label`.
    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones(..)).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.adj[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) == 0).collect()
    }

    pub fn complement(&self) -> Graph {
        let mut adj = Vec::with_capacity(self.n);
        for (i, row) in self.adj.iter().enumerate() {
            let mut c = row.clone();
            c.toggle_range(..);
            c.set(i, false);
            adj.push(c);
        }
        Graph {
            n: self.n,
            adj,
            labels: self.labels.clone(),
        }
    }

    /// Line graph; vertex `k` corresponds to the `k`-th edge of [`Graph::edges`].
    pub fn line_graph(&self) -> Graph {
        let edges = self.edges();
        let labels = edges
            .iter()
            .map(|&(u, v)| format!("{}-{}", self.label(u), self.label(v)));
        Graph::from_fn(edges.len(), |a, b| {
            let (e, f) = (edges[a], edges[b]);
            e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1
        })
        .with_labels(labels)
    }

    /// Induced subgraph on `keep` (in the given order); labels follow the
    /// kept vertices.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut g = Graph::from_fn(keep.len(), |a, b| self.has_edge(keep[a], keep[b]));
        g.labels = Some(keep.iter().map(|&v| self.label(v)).collect());
        g
    }

    /// Breadth-first distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or_default();
            for w in self.adj[u].ones() {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance_matrix(&self) -> DistanceMatrix {
        DistanceMatrix {
            rows: (0..self.n).map(|v| self.distances_from(v)).collect(),
        }
    }

    /// Whether some pair of distinct vertices has two common neighbours,
    /// i.e. whether the graph contains a (not necessarily induced) 4-cycle.
    pub fn contains_quadrangle(&self) -> bool {
        let mut common = FixedBitSet::with_capacity(self.n);
        for u in 0..self.n {
            for w in u + 1..self.n {
                common.clone_from(&self.adj[u]);
                common.intersect_with(&self.adj[w]);
                if common.count_ones(..) >= 2 {
                    return true;
                }
            }
        }
        false
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for w in self.adj[u].ones() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.edge_count() == self.n - 1
    }
}

/// All-pairs shortest path lengths; `None` for vertices in different components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    rows: Vec<Vec<Option<usize>>>,
}

impl DistanceMatrix {
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.rows[u][v]
    }

    pub fn row(&self, u: usize) -> &[Option<usize>] {
        &self.rows[u]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn build_dedups_and_validates() {
        let g = Graph::new(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(Graph::new(1, []).unwrap().n(), 1);
        assert_eq!(Graph::new(3, [(0, 0)]), Err(Error::LoopEdge(0)));
        assert_eq!(
            Graph::new(3, [(0, 3)]),
            Err(Error::IndexOutOfRange { index: 3, n: 3 })
        );
        assert_eq!(c4(), Graph::cycle(4));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(4).complement(), Graph::edgeless(4));
        let two_k2 = Graph::new(4, [(0, 2), (1, 3)]).unwrap();
        assert_eq!(c4().complement(), two_k2);
    }

    #[test]
    fn line_graph_of_star_and_triangle() {
        assert_eq!(Graph::star(4).line_graph(), Graph::complete(4));
        assert_eq!(Graph::complete(3).line_graph(), Graph::complete(3));
    }

    #[test]
    fn degrees_and_distances() {
        assert_eq!(c4().degrees(), vec![2, 2, 2, 2]);
        let p = Graph::path(2);
        assert_eq!(p.distance_matrix().get(0, 2), Some(2));
        let two_k2 = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let d = two_k2.distance_matrix();
        assert_eq!(d.get(0, 2), None);
        assert_eq!(d.get(3, 3), Some(0));
        assert_eq!(d.get(2, 3), Some(1));
    }

    #[test]
    fn quadrangles() {
        assert!(c4().contains_quadrangle());
        assert!(Graph::complete(4).contains_quadrangle());
        assert!(!Graph::complete(3).contains_quadrangle());
        assert!(!Graph::star(5).contains_quadrangle());
        assert!(!Graph::path(6).contains_quadrangle());
    }

    #[test]
    fn components_and_forests() {
        let g = Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5)]).unwrap();
        let sizes: Vec<usize> = g.components().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![4, 2]);
        assert!(!g.is_connected());
        assert!(Graph::complete(1).is_tree());
        assert!(!Graph::complete(3).is_forest());
        assert!(Graph::edgeless(3).is_forest());
        assert!(!Graph::edgeless(3).is_tree());
        assert!(Graph::path(4).is_tree());
    }

    #[test]
    fn serde_round_trip_keeps_labels() {
        let g = c4().with_labels(["a", "b", "c", "d"]);
        let json = serde_json::to_string(&g).unwrap();
        let back: Graph = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.vertex("c"), Some(2));
        assert!(serde_json::from_str::<Graph>(r#"{"n":2,"edges":[[0,0]]}"#).is_err());
    }
}
