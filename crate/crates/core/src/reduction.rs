//! Forced zeros of the fundamental magic unitary and the high-degree
//! stripping reduction.
//!
//! Cell `(i, j)` stands for the generator `u_ij`. A cell is forced to zero
//! when a degree or distance-degree obstruction rules out mapping `j` to `i`.
//! Because the antipode sends `u_ij` to `u_ji`, patterns are closed under
//! transposition before blocks are read off.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Why a cell was forced to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroRule {
    /// `deg(i) ≠ deg(j)`.
    Degree,
    /// Some vertex at distance `k` from `i` has a degree absent from the
    /// distance-`k` sphere around `j`.
    DistanceDegree,
    /// Transpose of a forced cell.
    Antipode,
}

impl ZeroRule {
    pub const ALL: [ZeroRule; 3] = [ZeroRule::Degree, ZeroRule::DistanceDegree, ZeroRule::Antipode];

    fn bit(self) -> u8 {
        match self {
            ZeroRule::Degree => 1,
            ZeroRule::DistanceDegree => 2,
            ZeroRule::Antipode => 4,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            ZeroRule::Degree => 'D',
            ZeroRule::DistanceDegree => 'R',
            ZeroRule::Antipode => 'A',
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ZeroRule::Degree => "degrees of i and j differ",
            ZeroRule::DistanceDegree => "a degree at distance k from i is missing at distance k from j",
            ZeroRule::Antipode => "transpose of a forced cell",
        }
    }
}

/// An `n × n` grid of cells, each `Possible` or forced to zero by a set of rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroPattern {
    n: usize,
    cells: Vec<u8>,
}

impl ZeroPattern {
    /// Every cell possible.
    pub fn possible(n: usize) -> Self {
        ZeroPattern {
            n,
            cells: vec![0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_forced(&self, i: usize, j: usize) -> bool {
        self.cells[i * self.n + j] != 0
    }

    /// Rules that forced cell `(i, j)`; empty when the cell is possible.
    pub fn rules(&self, i: usize, j: usize) -> Vec<ZeroRule> {
        let bits = self.cells[i * self.n + j];
        ZeroRule::ALL.into_iter().filter(|r| bits & r.bit() != 0).collect()
    }

    /// Marks `(i, j)` forced by `rule`.
    pub fn force(&mut self, i: usize, j: usize, rule: ZeroRule) {
        self.cells[i * self.n + j] |= rule.bit();
    }

    pub fn forced_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c != 0).count()
    }

    /// Cellwise union of forced zeros, keeping both provenances.
    pub fn union(&self, other: &ZeroPattern) -> ZeroPattern {
        assert_eq!(self.n, other.n, "patterns of different sizes");
        ZeroPattern {
            n: self.n,
            cells: self.cells.iter().zip(&other.cells).map(|(a, b)| a | b).collect(),
        }
    }

    /// Forces `(j, i)` with [`ZeroRule::Antipode`] wherever `(i, j)` is forced
    /// and `(j, i)` is not.
    pub fn symmetrized(&self) -> ZeroPattern {
        let mut out = self.clone();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.is_forced(i, j) && !self.is_forced(j, i) {
                    out.force(j, i, ZeroRule::Antipode);
                }
            }
        }
        out
    }

    /// First cell `(i, j)` with `(i, j)` forced but `(j, i)` possible.
    pub fn asymmetry(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (0..self.n).map(move |j| (i, j)))
            .find(|&(i, j)| self.is_forced(i, j) != self.is_forced(j, i))
            .map(|(i, j)| if self.is_forced(i, j) { (i, j) } else { (j, i) })
    }

    /// Grid of `0` (forced) and `·` (possible), one row per line.
    pub fn render(&self) -> String {
        self.render_with(|bits| if bits == 0 { '·' } else { '0' })
    }

    /// Grid of provenance symbols (`D`, `R`, `A`, first applicable rule) with a
    /// legend.
    pub fn render_provenance(&self) -> String {
        let mut out = self.render_with(|bits| {
            ZeroRule::ALL
                .into_iter()
                .find(|r| bits & r.bit() != 0)
                .map_or('·', ZeroRule::symbol)
        });
        for rule in ZeroRule::ALL {
            let _ = writeln!(out, "{}: {}", rule.symbol(), rule.description());
        }
        out.push_str("·: possible\n");
        out
    }

    fn render_with(&self, cell: impl Fn(u8) -> char) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| cell(self.cells[i * self.n + j]).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Partition of the vertices into the connected components of the
/// possible-cell relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockStructure {
    /// Each block sorted; blocks ordered by smallest element.
    pub blocks: Vec<Vec<usize>>,
}

impl BlockStructure {
    /// Block sizes in block order.
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Sizes sorted in decreasing order.
    pub fn shape(&self) -> Vec<usize> {
        let mut s = self.sizes();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }
}

pub fn degree_pattern(g: &Graph) -> ZeroPattern {
    let deg = g.degrees();
    let mut p = ZeroPattern::possible(g.n());
    for i in 0..g.n() {
        for j in 0..g.n() {
            if deg[i] != deg[j] {
                p.force(i, j, ZeroRule::Degree);
            }
        }
    }
    p
}

/// Forces `(w, v)` when some `p` at distance `k ≥ 1` from `w` has a degree
/// that no vertex at distance `k` from `v` has. Not symmetrized.
pub fn distance_degree_pattern(g: &Graph) -> ZeroPattern {
    let n = g.n();
    let deg = g.degrees();
    let dist = g.distance_matrix();
    // sphere_degrees[v][k] = bitmask over degrees of vertices at distance k from v.
    let sphere_degrees: Vec<Vec<Vec<bool>>> = (0..n)
        .map(|v| {
            let mut spheres = vec![vec![false; n]; n];
            for q in 0..n {
                if let Some(k) = dist.get(v, q) {
                    spheres[k][deg[q]] = true;
                }
            }
            spheres
        })
        .collect();
    let mut pattern = ZeroPattern::possible(n);
    for w in 0..n {
        for v in 0..n {
            let forced = (0..n).any(|p| match dist.get(w, p) {
                Some(k) if k >= 1 => !sphere_degrees[v][k][deg[p]],
                _ => false,
            });
            if forced {
                pattern.force(w, v, ZeroRule::DistanceDegree);
            }
        }
    }
    pattern
}

/// Union of the degree and distance-degree patterns, closed under transposition.
pub fn zero_pattern(g: &Graph) -> ZeroPattern {
    degree_pattern(g).union(&distance_degree_pattern(g)).symmetrized()
}

pub fn blocks(p: &ZeroPattern) -> Result<BlockStructure> {
    if let Some((i, j)) = p.asymmetry() {
        return Err(Error::AsymmetricPattern(i, j));
    }
    let n = p.n();
    let mut block_of = vec![usize::MAX; n];
    let mut blocks = Vec::new();
    for s in 0..n {
        if block_of[s] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        block_of[s] = id;
        let mut members = vec![s];
        let mut stack = vec![s];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if block_of[j] == usize::MAX && !p.is_forced(i, j) {
                    block_of[j] = id;
                    members.push(j);
                    stack.push(j);
                }
            }
        }
        members.sort_unstable();
        blocks.push(members);
    }
    Ok(BlockStructure { blocks })
}

/// Vertices of degree `n − 1` or `n − 2`, where `n` is the order of `g`.
pub fn high_degree_vertices(g: &Graph) -> Vec<usize> {
    let n = g.n();
    (0..n)
        .filter(|&v| g.degree(v) + 1 == n || g.degree(v) + 2 == n)
        .collect()
}

/// One stripping pass: removes every vertex of degree `n − 1` or `n − 2`
/// and returns the induced subgraph on the rest with the removed vertices.
pub fn strip_high_degree(g: &Graph) -> (Graph, Vec<usize>) {
    let removed = high_degree_vertices(g);
    let keep: Vec<usize> = (0..g.n()).filter(|v| !removed.contains(v)).collect();
    (g.induced_subgraph(&keep), removed)
}

/// Repeated stripping until no vertex qualifies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripChain {
    /// Removed vertices of each pass, as indices of the graph entering that pass.
    pub removed: Vec<Vec<usize>>,
    pub terminal: Graph,
}

pub fn strip_high_degree_fixpoint(g: &Graph) -> StripChain {
    let mut removed = Vec::new();
    let mut current = g.clone();
    loop {
        let (next, gone) = strip_high_degree(&current);
        if gone.is_empty() {
            return StripChain {
                removed,
                terminal: current,
            };
        }
        removed.push(gone);
        current = next;
    }
}

/// Replays a chain of removals on `g`; `None` if some pass removes a vertex
/// that does not have degree `n − 1` or `n − 2` or misses one that does.
pub fn replay_strip(g: &Graph, removed: &[Vec<usize>]) -> Option<Graph> {
    let mut current = g.clone();
    for pass in removed {
        let (next, gone) = strip_high_degree(&current);
        if &gone != pass || gone.is_empty() {
            return None;
        }
        current = next;
    }
    Some(current)
}
