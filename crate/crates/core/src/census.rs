//! Exhaustive small-instance checks: tree and forest enumeration, the
//! forest pair dichotomy, cherry statistics and randomized cross-checks.

use std::collections::BTreeSet;
use std::io;

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automorphism::{self, no_crossing_edges, verify_pair, SupportCatalog, DEFAULT_BUDGET};
use crate::classifier::{self, Status};
use crate::error::{Error, Result};
use crate::graph::{find_cherries, tree_center, Graph};
use crate::perm::Permutation;
use crate::products::{self, ProductKind};
use crate::reduction;

pub const MAX_TREE_ORDER: usize = 11;
pub const MAX_FOREST_ORDER: usize = 9;
/// Seed of the default random corpus.
pub const DEFAULT_SEED: u64 = 0x5157_4d59;
/// Largest order of a graph drawn by [`random_graph`].
pub const RANDOM_MAX_ORDER: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusKind {
    Forests,
    Cherries,
    Oracle,
}

/// Counts for one order. Columns that a census does not compute are empty.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: usize,
    pub trees: Option<usize>,
    pub forests: Option<usize>,
    pub disjoint_pair: Option<usize>,
    pub edge_free_pair: Option<usize>,
    pub two_cherries: Option<usize>,
    pub graphs: usize,
    pub violations: usize,
}

impl CensusRow {
    /// Fraction of trees with at least two cherries.
    pub fn cherry_fraction(&self) -> Option<f64> {
        match (self.trees, self.two_cherries) {
            (Some(t), Some(c)) if t > 0 => Some(c as f64 / t as f64),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub detail: String,
    pub graph: Graph,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    pub kind: CensusKind,
    pub n_min: usize,
    pub n_max: usize,
    pub rows: Vec<CensusRow>,
    pub violations: Vec<Violation>,
}

impl CensusResult {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn row(&self, n: usize) -> Option<&CensusRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// One CSV record per order, with a header.
    pub fn write_csv<W: io::Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn check_order(n: usize, max: usize) -> Result<()> {
    if (1..=max).contains(&n) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            what: "order",
            value: n,
            min: 1,
            max,
        })
    }
}

/// AHU code of the tree component containing `root`.
fn rooted_code(t: &Graph, root: usize, parent: Option<usize>) -> String {
    let mut children: Vec<String> = t
        .neighbors(root)
        .ones()
        .filter(|&c| Some(c) != parent)
        .map(|c| rooted_code(t, c, Some(root)))
        .collect();
    children.sort_unstable();
    format!("({})", children.concat())
}

/// Canonical string of a tree: equal iff the trees are isomorphic.
pub fn tree_code(t: &Graph) -> Result<String> {
    Ok(tree_center(t)?
        .into_iter()
        .map(|c| rooted_code(t, c, None))
        .min()
        .unwrap_or_default())
}

/// One tree per isomorphism class on `n` vertices, grown leaf by leaf from
/// the classes on `n − 1` vertices.
pub fn enumerate_trees(n: usize) -> Result<Vec<Graph>> {
    check_order(n, MAX_TREE_ORDER)?;
    let mut level = vec![Graph::complete(1)];
    for k in 2..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.n() {
                let mut edges = t.edges();
                edges.push((v, k - 1));
                let grown = Graph::new(k, edges)?;
                if seen.insert(tree_code(&grown)?) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    Ok(level)
}

/// One forest per isomorphism class on `n` vertices.
pub fn enumerate_forests(n: usize) -> Result<Vec<Graph>> {
    check_order(n, MAX_FOREST_ORDER)?;
    let mut pieces: Vec<Graph> = Vec::new();
    for k in 1..=n {
        pieces.extend(enumerate_trees(k)?);
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    multisets(&pieces, 0, n, &mut chosen, &mut out);
    Ok(out)
}

/// Non-decreasing index sequences into `pieces` with orders summing to `left`.
fn multisets(pieces: &[Graph], from: usize, left: usize, chosen: &mut Vec<usize>, out: &mut Vec<Graph>) {
    if left == 0 {
        let parts: Vec<Graph> = chosen.iter().map(|&i| pieces[i].clone()).collect();
        out.push(products::disjoint_union(&parts));
        return;
    }
    for i in from..pieces.len() {
        if pieces[i].n() <= left {
            chosen.push(i);
            multisets(pieces, i, left - pieces[i].n(), chosen, out);
            chosen.pop();
        }
    }
}

struct Outcome {
    disjoint: bool,
    edge_free: bool,
    two_cherries: bool,
    violations: Vec<Violation>,
}

fn violation(check: &str, detail: impl Into<String>, g: &Graph) -> Violation {
    Violation {
        check: check.into(),
        detail: detail.into(),
        graph: g.clone(),
    }
}

/// Checks on one forest: a disjoint pair exists iff an edge-free one does,
/// and no two disjoint supports are joined by an edge.
fn dichotomy(g: &Graph) -> Outcome {
    let mut out = Outcome {
        disjoint: false,
        edge_free: false,
        two_cherries: false,
        violations: Vec::new(),
    };
    let catalog = match SupportCatalog::build(g, DEFAULT_BUDGET) {
        Ok(c) => c,
        Err(e) => {
            out.violations.push(violation("enumeration", e.to_string(), g));
            return out;
        }
    };
    out.disjoint = catalog.disjoint_pair().is_some();
    out.edge_free = catalog.edge_free_pair(g).is_some();
    if out.disjoint != out.edge_free {
        out.violations.push(violation(
            "dichotomy",
            format!("disjoint pair {} but edge-free pair {}", out.disjoint, out.edge_free),
            g,
        ));
    }
    let supports = catalog.supports();
    for (i, (a, sa)) in supports.iter().enumerate() {
        for (b, sb) in &supports[i + 1..] {
            if a.is_disjoint(b) && !no_crossing_edges(g, a, b) {
                out.violations.push(violation(
                    "disjoint pair not edge-free",
                    format!("{sa} and {sb}"),
                    g,
                ));
            }
        }
    }
    out
}

/// Runs the forest pair dichotomy over every forest on at most `n_max` vertices.
pub fn check_forest_dichotomy(n_max: usize) -> Result<CensusResult> {
    check_order(n_max, MAX_FOREST_ORDER)?;
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for n in 1..=n_max {
        let forests = enumerate_forests(n)?;
        let outcomes: Vec<Outcome> = forests.par_iter().map(dichotomy).collect();
        let mut row = CensusRow {
            n,
            trees: Some(forests.iter().filter(|g| g.is_tree()).count()),
            forests: Some(forests.len()),
            disjoint_pair: Some(outcomes.iter().filter(|o| o.disjoint).count()),
            edge_free_pair: Some(outcomes.iter().filter(|o| o.edge_free).count()),
            graphs: forests.len(),
            ..Default::default()
        };
        for o in outcomes {
            row.violations += o.violations.len();
            violations.extend(o.violations);
        }
        rows.push(row);
    }
    Ok(CensusResult {
        kind: CensusKind::Forests,
        n_min: 1,
        n_max,
        rows,
        violations,
    })
}

/// Transpositions swapping the two leaf edges of each cherry, as
/// automorphisms of the line graph.
fn cherry_swaps(t: &Graph, line: &Graph) -> Option<(Permutation, Permutation)> {
    let [c1, c2] = classifier::two_cherries(t)?;
    let edge_vertex = |a: usize, b: usize| line.vertex(&format!("{}-{}", a.min(b), a.max(b)));
    let swap = |u: usize, v: usize| Permutation::from_cycles(line.n(), &[&[u, v]]).ok();
    let s = swap(edge_vertex(c1.w, c1.v1)?, edge_vertex(c1.w, c1.v2)?)?;
    let r = swap(edge_vertex(c2.w, c2.v1)?, edge_vertex(c2.w, c2.v2)?)?;
    Some((s, r))
}

fn cherry_outcome(t: &Graph) -> Outcome {
    let mut out = Outcome {
        disjoint: false,
        edge_free: false,
        two_cherries: find_cherries(t).len() >= 2,
        violations: Vec::new(),
    };
    if classifier::two_cherries(t).is_some() {
        let line = t.line_graph();
        match cherry_swaps(t, &line) {
            Some((s, r)) if verify_pair(&line, &s, &r, true) => out.edge_free = true,
            _ => out.violations.push(violation(
                "cherry swaps",
                "leaf swaps of two cherries are not an edge-free pair of the line graph",
                t,
            )),
        }
    }
    out
}

/// Per order, the share of trees with at least two cherries; checks that
/// cherries with different centres give edge-free pairs of the line graph.
pub fn cherry_census(n_max: usize) -> Result<CensusResult> {
    check_order(n_max, MAX_TREE_ORDER)?;
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    for n in 1..=n_max {
        let trees = enumerate_trees(n)?;
        let outcomes: Vec<Outcome> = trees.par_iter().map(cherry_outcome).collect();
        let mut row = CensusRow {
            n,
            trees: Some(trees.len()),
            edge_free_pair: Some(outcomes.iter().filter(|o| o.edge_free).count()),
            two_cherries: Some(outcomes.iter().filter(|o| o.two_cherries).count()),
            graphs: trees.len(),
            ..Default::default()
        };
        for o in outcomes {
            row.violations += o.violations.len();
            violations.extend(o.violations);
        }
        rows.push(row);
    }
    Ok(CensusResult {
        kind: CensusKind::Cherries,
        n_min: 1,
        n_max,
        rows,
        violations,
    })
}

/// A graph on `1..=max_order` vertices with a random edge density.
pub fn random_graph<R: Rng>(rng: &mut R, max_order: usize) -> Graph {
    let n = rng.random_range(1..=max_order.max(1));
    let p: f64 = rng.random();
    Graph::from_fn(n, |_, _| rng.random_bool(p))
}

/// `count` graphs drawn from a ChaCha8 stream seeded with `seed`.
pub fn random_corpus(seed: u64, count: usize) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_graph(&mut rng, RANDOM_MAX_ORDER)).collect()
}

/// Fixed test corpus: the named gallery graphs, small members of each
/// gallery family, every forest on at most eight vertices and the default
/// random corpus.
pub fn standard_corpus() -> Vec<Graph> {
    let mut names: Vec<String> = ["sc", "fig7", "t0", "cherry", "tree-center1", "tree-center2", "c4k2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    names.extend((0..=7).map(|n| format!("k{n}")));
    names.extend((3..=8).map(|n| format!("c{n}")));
    names.extend((0..=7).map(|n| format!("p{n}")));
    names.extend((0..=6).map(|n| format!("e{n}")));
    names.extend((1..=6).map(|n| format!("star{n}")));
    names.extend((1..=4).map(|n| format!("prism{n}")));
    names.extend((2..=4).map(|n| format!("c4path{n}")));
    for m in 1..=4 {
        names.extend((m..=4).map(|n| format!("k{m}_{n}")));
    }
    let mut corpus: Vec<Graph> = names
        .iter()
        .map(|n| crate::constructors::gallery(n).expect("corpus names are valid"))
        .collect();
    for n in 1..=8 {
        corpus.extend(enumerate_forests(n).expect("order in range"));
    }
    corpus.extend(random_corpus(DEFAULT_SEED, 200));
    corpus
}

/// Cells forced to zero although some automorphism maps column to row.
pub fn pattern_violations(g: &Graph, pattern: &reduction::ZeroPattern) -> Result<Vec<(usize, usize)>> {
    let mut bad = BTreeSet::new();
    for p in automorphism::automorphisms(g)?.elements {
        for j in 0..g.n() {
            let i = p.apply(j);
            if pattern.is_forced(i, j) {
                bad.insert((i, j));
            }
        }
    }
    Ok(bad.into_iter().collect())
}

fn oracle_checks(g: &Graph, partner: &Graph, inject_fault: bool) -> Vec<Violation> {
    let mut out = Vec::new();
    for kind in ProductKind::TENSOR_STYLE {
        let by_rule = products::product(kind, g, partner);
        let by_formula = products::product_by_formula(kind, g, partner);
        if by_rule.is_err() || by_rule != by_formula {
            out.push(violation("product formula", format!("{} with {:?}", kind.name(), partner.edges()), g));
        }
    }
    let mut pattern = reduction::zero_pattern(g);
    if inject_fault {
        pattern.force(0, 0, reduction::ZeroRule::Degree);
    }
    match pattern_violations(g, &pattern) {
        Ok(cells) if cells.is_empty() => {}
        Ok(cells) => out.push(violation("zero pattern", format!("cells {cells:?} forced"), g)),
        Err(e) => out.push(violation("zero pattern", e.to_string(), g)),
    }
    if &g.complement().complement() != g {
        out.push(violation("complement involution", "", g));
    }
    let report = classifier::classify_with_complement(g);
    if report.bic.status == Status::NonCommutative && report.ban.status == Status::Commutative {
        out.push(violation("consistency", "bic non-commutative but ban commutative", g));
    }
    if !g.contains_quadrangle()
        && report.bic.status.is_determined()
        && report.ban.status.is_determined()
        && report.bic.status != report.ban.status
    {
        out.push(violation("quadrangle-free consistency", "bic and ban differ", g));
    }
    if !report.verify(g) {
        out.push(violation("certificate", "a determined verdict failed re-verification", g));
    }
    out
}

/// Cross-checks product formulas, zero-pattern soundness, complement
/// involution and classifier consistency on a seeded random corpus.
pub fn oracle_crosschecks(seed: u64, count: usize) -> CensusResult {
    oracle_crosschecks_with_fault(seed, count, false)
}

/// [`oracle_crosschecks`] with one pattern cell forced wrongly in every
/// graph, to confirm the harness notices.
#[doc(hidden)]
pub fn oracle_crosschecks_with_fault(seed: u64, count: usize, inject_fault: bool) -> CensusResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(Graph, Graph)> = (0..count)
        .map(|_| {
            let g = random_graph(&mut rng, RANDOM_MAX_ORDER);
            let h = random_graph(&mut rng, 5);
            (g, h)
        })
        .collect();
    let results: Vec<Vec<Violation>> = pairs
        .par_iter()
        .map(|(g, h)| oracle_checks(g, h, inject_fault))
        .collect();
    let mut rows: Vec<CensusRow> = (1..=RANDOM_MAX_ORDER)
        .map(|n| CensusRow {
            n,
            ..Default::default()
        })
        .collect();
    let mut violations = Vec::new();
    for ((g, _), v) in pairs.iter().zip(results) {
        let row = &mut rows[g.n() - 1];
        row.graphs += 1;
        row.violations += v.len();
        violations.extend(v);
    }
    CensusResult {
        kind: CensusKind::Oracle,
        n_min: 1,
        n_max: RANDOM_MAX_ORDER,
        rows,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_tree_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| enumerate_trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11]);
        assert!(enumerate_trees(0).is_err());
        assert!(enumerate_trees(12).is_err());
    }

    #[test]
    fn small_forest_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| enumerate_forests(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 6, 10]);
        assert!(enumerate_forests(10).is_err());
    }

    #[test]
    fn tree_code_distinguishes_centres() {
        let a = tree_code(&Graph::path(3)).unwrap();
        let b = tree_code(&Graph::star(3)).unwrap();
        assert_ne!(a, b);
        let relabeled = Graph::new(4, [(3, 1), (1, 0), (0, 2)]).unwrap();
        assert_eq!(tree_code(&relabeled).unwrap(), a);
    }

    #[test]
    fn two_k2_pair_is_edge_free() {
        let g = products::copies(&Graph::complete(2), 2).unwrap();
        let o = dichotomy(&g);
        assert!(o.disjoint && o.edge_free && o.violations.is_empty());
        let o = dichotomy(&Graph::path(4));
        assert!(!o.disjoint && o.violations.is_empty());
    }

    #[test]
    fn cherry_rows() {
        let r = cherry_census(6).unwrap();
        assert!(r.is_clean());
        assert_eq!(r.row(3).unwrap().two_cherries, Some(0));
        assert_eq!(r.row(4).unwrap().cherry_fraction(), Some(0.5));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let r = check_forest_dichotomy(3).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,trees,forests,disjoint_pair,edge_free_pair,two_cherries,graphs,violations");
        assert_eq!(lines.len(), 4);
    }

    #[test]
    fn fault_is_detected() {
        assert!(!oracle_crosschecks_with_fault(1, 3, true).is_clean());
    }

    #[test]
    fn corpus_is_reproducible() {
        assert_eq!(random_corpus(9, 20), random_corpus(9, 20));
        assert_ne!(random_corpus(9, 20), random_corpus(10, 20));
    }
}
