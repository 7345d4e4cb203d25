//! Graph products, corona product and disjoint unions.
//!
//! A product vertex `(i, α)` with `i ∈ V(g1)`, `α ∈ V(g2)` is stored at index
//! `i·m + α`, where `m = |V(g2)|`. With that layout the adjacency matrix of
//! each product is the standard Kronecker expression with `g1` as the outer
//! factor, e.g. `A1 ⊗ I_m + I_n ⊗ A2` for the Cartesian product.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProductKind {
    Cartesian,
    Direct,
    Strong,
    Lexicographic,
    Corona,
    Copies(usize),
}

impl ProductKind {
    /// The four products defined by a matrix formula on `(i, α)` pairs.
    pub const TENSOR_STYLE: [ProductKind; 4] = [
        ProductKind::Cartesian,
        ProductKind::Direct,
        ProductKind::Strong,
        ProductKind::Lexicographic,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ProductKind::Cartesian => "cartesian",
            ProductKind::Direct => "direct",
            ProductKind::Strong => "strong",
            ProductKind::Lexicographic => "lexicographic",
            ProductKind::Corona => "corona",
            ProductKind::Copies(_) => "copies",
        }
    }
}

fn pair_product(g1: &Graph, g2: &Graph, rule: impl Fn(bool, bool, bool, bool) -> bool) -> Graph {
    let m = g2.n();
    Graph::from_fn(g1.n() * m, |a, b| {
        let (i, alpha) = (a / m, a % m);
        let (j, beta) = (b / m, b % m);
        rule(i == j, g1.has_edge(i, j), alpha == beta, g2.has_edge(alpha, beta))
    })
}

pub fn cartesian(g1: &Graph, g2: &Graph) -> Graph {
    pair_product(g1, g2, |same_i, adj_i, same_a, adj_a| {
        (same_i && adj_a) || (adj_i && same_a)
    })
}

pub fn direct(g1: &Graph, g2: &Graph) -> Graph {
    pair_product(g1, g2, |_, adj_i, _, adj_a| adj_i && adj_a)
}

pub fn strong(g1: &Graph, g2: &Graph) -> Graph {
    pair_product(g1, g2, |same_i, adj_i, same_a, adj_a| {
        (same_i && adj_a) || (adj_i && same_a) || (adj_i && adj_a)
    })
}

/// `(i, α) ~ (j, β)` iff `α ~ β`, or `i ~ j` and `α = β`.
pub fn lexicographic(g1: &Graph, g2: &Graph) -> Graph {
    pair_product(g1, g2, |_, adj_i, same_a, adj_a| adj_a || (adj_i && same_a))
}

/// One of the four tensor-style products by its edge rule.
pub fn product(kind: ProductKind, g1: &Graph, g2: &Graph) -> Result<Graph> {
    match kind {
        ProductKind::Cartesian => Ok(cartesian(g1, g2)),
        ProductKind::Direct => Ok(direct(g1, g2)),
        ProductKind::Strong => Ok(strong(g1, g2)),
        ProductKind::Lexicographic => Ok(lexicographic(g1, g2)),
        ProductKind::Corona => Ok(corona(g1, g2)),
        ProductKind::Copies(_) => Err(Error::BadParams {
            name: "copies".into(),
            reason: "copies takes one graph and a count".into(),
        }),
    }
}

fn adjacency(g: &Graph) -> DMatrix<u32> {
    DMatrix::from_fn(g.n(), g.n(), |i, j| u32::from(g.has_edge(i, j)))
}

fn graph_of(m: &DMatrix<u32>) -> Graph {
    Graph::from_fn(m.nrows(), |i, j| m[(i, j)] > 0)
}

/// The tensor-style product evaluated from its adjacency-matrix formula over
/// the integers, entries clipped to `{0, 1}`. Independent of the edge rules.
pub fn product_by_formula(kind: ProductKind, g1: &Graph, g2: &Graph) -> Result<Graph> {
    let (n, m) = (g1.n(), g2.n());
    let (a1, a2) = (adjacency(g1), adjacency(g2));
    let (i_n, i_m) = (DMatrix::<u32>::identity(n, n), DMatrix::<u32>::identity(m, m));
    let matrix = match kind {
        ProductKind::Cartesian => a1.kronecker(&i_m) + i_n.kronecker(&a2),
        ProductKind::Direct => a1.kronecker(&a2),
        ProductKind::Strong => {
            (a1 + &i_n).kronecker(&(a2 + &i_m)) - DMatrix::<u32>::identity(n * m, n * m)
        }
        ProductKind::Lexicographic => {
            a1.kronecker(&i_m) + DMatrix::<u32>::from_element(n, n, 1).kronecker(&a2)
        }
        ProductKind::Corona | ProductKind::Copies(_) => {
            return Err(Error::BadParams {
                name: kind.name().into(),
                reason: "no Kronecker formula for this product".into(),
            })
        }
    };
    Ok(graph_of(&matrix))
}

/// Corona product: `g1` on `0..n`, then the copy of `g2` attached to base
/// vertex `v` on `n + v·m .. n + (v+1)·m`, each copy vertex joined to `v`.
pub fn corona(g1: &Graph, g2: &Graph) -> Graph {
    let (n, m) = (g1.n(), g2.n());
    let mut edges = g1.edges();
    for v in 0..n {
        let base = n + v * m;
        edges.extend(g2.edges().iter().map(|&(a, b)| (base + a, base + b)));
        edges.extend((0..m).map(|w| (v, base + w)));
    }
    Graph::new(n + n * m, edges).expect("corona edges are in range")
}

/// `k` disjoint copies of `g`; copy `α` occupies `α·n .. (α+1)·n`.
pub fn copies(g: &Graph, k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::NonPositiveCount);
    }
    Ok(disjoint_union(&vec![g.clone(); k]))
}

/// Disjoint union with index blocks in input order.
pub fn disjoint_union(gs: &[Graph]) -> Graph {
    let n = gs.iter().map(Graph::n).sum();
    let mut edges = Vec::new();
    let mut offset = 0;
    for g in gs {
        edges.extend(g.edges().iter().map(|&(a, b)| (offset + a, offset + b)));
        offset += g.n();
    }
    Graph::new(n, edges).expect("union edges are in range")
}
