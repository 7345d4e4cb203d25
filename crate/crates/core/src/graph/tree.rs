use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Distance layers of a tree measured from its center.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationPartition {
    /// One vertex, or two adjacent vertices.
    pub center: Vec<usize>,
    /// `layers[0]` is the center; `layers[i]` holds the vertices at distance
    /// `i` from the nearest center vertex.
    pub layers: Vec<Vec<usize>>,
}

impl GenerationPartition {
    /// Layer index of every vertex.
    pub fn layer_of(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for (i, layer) in self.layers.iter().enumerate() {
            for &v in layer {
                out[v] = i;
            }
        }
        out
    }
}

/// A degree-3 vertex `w` with two leaf neighbours `v1 < v2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cherry {
    pub v1: usize,
    pub v2: usize,
    pub w: usize,
}

/// Center of a tree by iterated leaf removal.
pub fn tree_center(t: &Graph) -> Result<Vec<usize>> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let n = t.n();
    let mut deg = t.degrees();
    let mut alive = n;
    let mut frontier: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    while alive > 2 {
        alive -= frontier.len();
        let mut next = Vec::new();
        for &leaf in &frontier {
            deg[leaf] = 0;
            for w in t.neighbors(leaf).ones() {
                if deg[w] > 0 {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        frontier = next;
    }
    frontier.sort_unstable();
    Ok(frontier)
}

pub fn generations(t: &Graph) -> Result<GenerationPartition> {
    let center = tree_center(t)?;
    let mut dist = vec![usize::MAX; t.n()];
    for &c in &center {
        for (v, d) in t.distances_from(c).into_iter().enumerate() {
            dist[v] = dist[v].min(d.unwrap_or(usize::MAX));
        }
    }
    let depth = dist.iter().copied().max().unwrap_or(0);
    let mut layers = vec![Vec::new(); depth + 1];
    for (v, &d) in dist.iter().enumerate() {
        layers[d].push(v);
    }
    Ok(GenerationPartition { center, layers })
}

/// Every cherry of `g`, ordered by `(w, v1, v2)`.
pub fn find_cherries(g: &Graph) -> Vec<Cherry> {
    let mut out = Vec::new();
    for w in 0..g.n() {
        if g.degree(w) != 3 {
            continue;
        }
        let leaves: Vec<usize> = g.neighbors(w).ones().filter(|&v| g.degree(v) == 1).collect();
        for (a, &v1) in leaves.iter().enumerate() {
            for &v2 in &leaves[a + 1..] {
                out.push(Cherry { v1, v2, w });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centers() {
        assert_eq!(tree_center(&Graph::path(4)).unwrap(), vec![2]);
        assert_eq!(tree_center(&Graph::path(1)).unwrap(), vec![0, 1]);
        assert_eq!(tree_center(&Graph::path(3)).unwrap(), vec![1, 2]);
        assert_eq!(tree_center(&Graph::star(4)).unwrap(), vec![0]);
        assert_eq!(tree_center(&Graph::complete(1)).unwrap(), vec![0]);
        assert_eq!(tree_center(&Graph::cycle(4)), Err(Error::NotATree));
        assert_eq!(tree_center(&Graph::edgeless(2)), Err(Error::NotATree));
    }

    #[test]
    fn generation_layers() {
        let star = generations(&Graph::star(4)).unwrap();
        assert_eq!(star.layers, vec![vec![0], vec![1, 2, 3, 4]]);
        let k2 = generations(&Graph::path(1)).unwrap();
        assert_eq!(k2.layers, vec![vec![0, 1]]);
    }

    #[test]
    fn cherries() {
        assert_eq!(find_cherries(&Graph::star(3)).len(), 3);
        assert!(find_cherries(&Graph::path(3)).is_empty());
        assert!(find_cherries(&Graph::star(4)).is_empty());
    }
}
