//! Automorphism groups and the disjoint-pair witness searches.

use std::collections::HashMap;
use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::iso;
use crate::perm::Permutation;

/// Default cap on backtracking nodes for one automorphism enumeration.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// The full automorphism group, listed element by element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismSet {
    pub elements: Vec<Permutation>,
    pub order: u64,
}

pub fn is_automorphism(g: &Graph, p: &Permutation) -> Result<bool> {
    if p.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            found: p.len(),
        });
    }
    Ok(g.edges().iter().all(|&(i, j)| g.has_edge(p.apply(i), p.apply(j))))
}

pub fn automorphisms(g: &Graph) -> Result<AutomorphismSet> {
    automorphisms_with_budget(g, DEFAULT_BUDGET)
}

pub fn automorphisms_with_budget(g: &Graph, budget: u64) -> Result<AutomorphismSet> {
    let mut elements = Vec::new();
    iso::for_each_automorphism(g, budget, |m| {
        elements.push(Permutation::new(m.to_vec()).expect("automorphisms are bijections"));
        ControlFlow::Continue(())
    })?;
    let order = elements.len() as u64;
    Ok(AutomorphismSet { elements, order })
}

/// Moved points of `p`.
pub fn support(p: &Permutation) -> FixedBitSet {
    p.support()
}

/// No edge of `g` joins a vertex of `a` to a vertex of `b`.
pub fn no_crossing_edges(g: &Graph, a: &FixedBitSet, b: &FixedBitSet) -> bool {
    a.ones().all(|v| g.neighbors(v).is_disjoint(b))
}

/// Distinct supports of the automorphism group, each with the first element
/// (in enumeration order) realising it.
///
/// Built by streaming the group once; only one permutation per support is
/// kept, so groups far larger than their support lattice stay cheap.
#[derive(Debug, Clone)]
pub struct SupportCatalog {
    order: u64,
    supports: Vec<(FixedBitSet, Permutation)>,
    minimal: Vec<usize>,
}

impl SupportCatalog {
    pub fn build(g: &Graph, budget: u64) -> Result<Self> {
        let mut order = 0u64;
        let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
        let mut supports: Vec<(FixedBitSet, Permutation)> = Vec::new();
        iso::for_each_automorphism(g, budget, |m| {
            order += 1;
            let p = Permutation::new(m.to_vec()).expect("automorphisms are bijections");
            let s = p.support();
            if !s.is_clear() && !index.contains_key(&s) {
                index.insert(s.clone(), supports.len());
                supports.push((s, p));
            }
            ControlFlow::Continue(())
        })?;
        let mut by_size: Vec<usize> = (0..supports.len()).collect();
        by_size.sort_by_key(|&i| (supports[i].0.count_ones(..), i));
        let mut minimal: Vec<usize> = Vec::new();
        for i in by_size {
            let s = &supports[i].0;
            if !minimal.iter().any(|&j| supports[j].0.is_subset(s)) {
                minimal.push(i);
            }
        }
        Ok(SupportCatalog {
            order,
            supports,
            minimal,
        })
    }

    /// Order of the automorphism group.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Whether the group is trivial.
    pub fn is_trivial(&self) -> bool {
        self.supports.is_empty()
    }

    /// Every distinct non-empty support with its first witness.
    pub fn supports(&self) -> &[(FixedBitSet, Permutation)] {
        &self.supports
    }

    /// Inclusion-minimal supports, by size then discovery order.
    pub fn minimal_supports(&self) -> impl Iterator<Item = &(FixedBitSet, Permutation)> {
        self.minimal.iter().map(|&i| &self.supports[i])
    }

    /// Any two non-trivial automorphisms with disjoint supports. Restricting
    /// to minimal supports loses nothing: shrinking both supports keeps them
    /// disjoint.
    pub fn disjoint_pair(&self) -> Option<(Permutation, Permutation)> {
        self.pair_where(|_, _| true)
    }

    /// A disjoint pair with no edge of `g` between the two supports.
    pub fn edge_free_pair(&self, g: &Graph) -> Option<(Permutation, Permutation)> {
        self.pair_where(|a, b| no_crossing_edges(g, a, b))
    }

    fn pair_where(
        &self,
        accept: impl Fn(&FixedBitSet, &FixedBitSet) -> bool,
    ) -> Option<(Permutation, Permutation)> {
        for (k, &i) in self.minimal.iter().enumerate() {
            for &j in &self.minimal[k + 1..] {
                let (a, b) = (&self.supports[i].0, &self.supports[j].0);
                if a.is_disjoint(b) && accept(a, b) {
                    return Some((self.supports[i].1.clone(), self.supports[j].1.clone()));
                }
            }
        }
        None
    }
}

pub fn find_disjoint_pair(g: &Graph) -> Result<Option<(Permutation, Permutation)>> {
    Ok(SupportCatalog::build(g, DEFAULT_BUDGET)?.disjoint_pair())
}

pub fn find_edge_free_disjoint_pair(g: &Graph) -> Result<Option<(Permutation, Permutation)>> {
    Ok(SupportCatalog::build(g, DEFAULT_BUDGET)?.edge_free_pair(g))
}

/// Checks that `(sigma, tau)` is a pair of non-trivial automorphisms of `g`
/// with disjoint supports and, if `edge_free`, no edges between them.
pub fn verify_pair(g: &Graph, sigma: &Permutation, tau: &Permutation, edge_free: bool) -> bool {
    let auts = is_automorphism(g, sigma).unwrap_or(false) && is_automorphism(g, tau).unwrap_or(false);
    let (a, b) = (sigma.support(), tau.support());
    auts && !a.is_clear()
        && !b.is_clear()
        && a.is_disjoint(&b)
        && (!edge_free || no_crossing_edges(g, &a, &b))
}
