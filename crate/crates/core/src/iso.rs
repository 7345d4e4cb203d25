//! Backtracking search for structure-preserving bijections between graphs.
//!
//! Both isomorphism testing and automorphism enumeration run on the same
//! matcher. Vertices are first coloured by joint colour refinement (starting
//! from degrees) over both graphs, so that colours are comparable; a
//! bijection may only map a vertex to one of the same colour.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::perm::Permutation;

/// Stable colour refinement computed jointly on a list of graphs.
pub fn refine_colors(graphs: &[&Graph]) -> Vec<Vec<u32>> {
    let mut colors: Vec<Vec<u32>> = graphs
        .iter()
        .map(|g| g.degrees().into_iter().map(|d| d as u32).collect())
        .collect();
    let mut classes = count_classes(&colors);
    loop {
        let mut palette: BTreeMap<(u32, Vec<u32>), u32> = BTreeMap::new();
        let signatures: Vec<Vec<(u32, Vec<u32>)>> = graphs
            .iter()
            .zip(&colors)
            .map(|(g, col)| {
                (0..g.n())
                    .map(|v| {
                        let mut nb: Vec<u32> = g.neighbors(v).ones().map(|w| col[w]).collect();
                        nb.sort_unstable();
                        (col[v], nb)
                    })
                    .collect()
            })
            .collect();
        for sig in signatures.iter().flatten() {
            palette.entry(sig.clone()).or_insert(0);
        }
        for (k, c) in palette.values_mut().enumerate() {
            *c = k as u32;
        }
        let next: Vec<Vec<u32>> = signatures
            .iter()
            .map(|sigs| sigs.iter().map(|s| palette[s]).collect())
            .collect();
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn count_classes(colors: &[Vec<u32>]) -> usize {
    let mut all: Vec<u32> = colors.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

fn color_histogram(colors: &[u32]) -> Vec<u32> {
    let mut h = colors.to_vec();
    h.sort_unstable();
    h
}

struct Matcher<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
    c1: Vec<u32>,
    c2: Vec<u32>,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl<'a> Matcher<'a> {
    fn new(g1: &'a Graph, g2: &'a Graph, colors: Vec<Vec<u32>>, budget: u64) -> Self {
        let mut colors = colors.into_iter();
        let c1 = colors.next().unwrap_or_default();
        let c2 = colors.next().unwrap_or_else(|| c1.clone());
        let order = search_order(g1, &c1);
        let n = g1.n();
        Matcher {
            g1,
            g2,
            c1,
            c2,
            order,
            map: vec![usize::MAX; n],
            used: vec![false; n],
            nodes: 0,
            budget,
        }
    }

    fn consistent(&self, depth: usize, v: usize, c: usize) -> bool {
        if self.used[c] || self.c1[v] != self.c2[c] {
            return false;
        }
        self.order[..depth]
            .iter()
            .all(|&u| self.g1.has_edge(u, v) == self.g2.has_edge(self.map[u], c))
    }

    fn search<F>(&mut self, depth: usize, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if depth == self.order.len() {
            return Ok(visit(&self.map));
        }
        let v = self.order[depth];
        // Trying `v` itself first puts the identity at the head of an
        // automorphism stream.
        let candidates = std::iter::once(v).chain((0..self.g2.n()).filter(|&c| c != v));
        for c in candidates {
            if !self.consistent(depth, v, c) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::SizeLimitExceeded {
                    budget: self.budget,
                });
            }
            self.map[v] = c;
            self.used[c] = true;
            let flow = self.search(depth + 1, visit)?;
            self.used[c] = false;
            self.map[v] = usize::MAX;
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Vertex order for backtracking: repeatedly take the vertex with the most
/// already-ordered neighbours, breaking ties by smaller colour class and
/// then by index. Keeps each new vertex as constrained as possible.
fn search_order(g: &Graph, colors: &[u32]) -> Vec<usize> {
    let n = g.n();
    let mut class_size: BTreeMap<u32, usize> = BTreeMap::new();
    for &c in colors {
        *class_size.entry(c).or_default() += 1;
    }
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| (std::cmp::Reverse(links[v]), class_size[&colors[v]], v))
            .expect("unplaced vertex");
        placed[v] = true;
        order.push(v);
        for w in g.neighbors(v).ones() {
            links[w] += 1;
        }
    }
    order
}

/// Streams every automorphism of `g` (as an image array) to `visit` in a
/// deterministic order, the identity first. Stops early on `Break`.
pub fn for_each_automorphism<F>(g: &Graph, budget: u64, mut visit: F) -> Result<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let colors = refine_colors(&[g]);
    let mut m = Matcher::new(g, g, colors, budget);
    let _ = m.search(0, &mut visit)?;
    Ok(())
}

/// An isomorphism `π` from `g1` to `g2` (`i ~ j` in `g1` iff `π(i) ~ π(j)` in
/// `g2`), or `None`. Errors only when the node budget is exhausted.
pub fn find_isomorphism(g1: &Graph, g2: &Graph, budget: u64) -> Result<Option<Permutation>> {
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let colors = refine_colors(&[g1, g2]);
    if color_histogram(&colors[0]) != color_histogram(&colors[1]) {
        return Ok(None);
    }
    let mut m = Matcher::new(g1, g2, colors, budget);
    let mut found = None;
    let _ = m.search(0, &mut |map: &[usize]| {
        found = Some(map.to_vec());
        ControlFlow::Break(())
    })?;
    Ok(found.map(|images| Permutation::new(images).expect("matcher yields bijections")))
}

/// Isomorphism witness with an unbounded search.
pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> Option<Permutation> {
    find_isomorphism(g1, g2, u64::MAX).expect("unbounded search cannot exceed its budget")
}

/// Whether `pi` maps `g1` isomorphically onto `g2`.
pub fn is_isomorphism(g1: &Graph, g2: &Graph, pi: &Permutation) -> bool {
    g1.n() == g2.n()
        && pi.len() == g1.n()
        && g1.edge_count() == g2.edge_count()
        && g1.edges().iter().all(|&(i, j)| g2.has_edge(pi.apply(i), pi.apply(j)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products;

    #[test]
    fn refinement_separates_path_ends() {
        let c = refine_colors(&[&Graph::path(4)]);
        assert_eq!(c[0][0], c[0][4]);
        assert_eq!(c[0][1], c[0][3]);
        assert_ne!(c[0][0], c[0][2]);
        assert_ne!(c[0][1], c[0][2]);
    }

    #[test]
    fn examples() {
        let corona = products::corona(&Graph::complete(2), &Graph::complete(1));
        let pi = are_isomorphic(&corona, &Graph::path(3)).unwrap();
        assert!(is_isomorphism(&corona, &Graph::path(3), &pi));
        assert!(are_isomorphic(&Graph::complete(3), &Graph::star(2)).is_none());
        assert!(are_isomorphic(&Graph::cycle(6), &products::copies(&Graph::cycle(3), 2).unwrap()).is_none());
    }

    #[test]
    fn automorphism_counts() {
        let mut count = 0;
        for_each_automorphism(&Graph::cycle(5), u64::MAX, |_| {
            count += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(count, 10);
    }

    #[test]
    fn identity_comes_first() {
        let mut first = None;
        for_each_automorphism(&Graph::complete(4), u64::MAX, |m| {
            first = Some(m.to_vec());
            ControlFlow::Break(())
        })
        .unwrap();
        assert_eq!(first, Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn budget_is_enforced() {
        let err = for_each_automorphism(&Graph::edgeless(8), 100, |_| ControlFlow::Continue(()));
        assert_eq!(err, Err(Error::SizeLimitExceeded { budget: 100 }));
    }
}
