use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::products;

const MAX_ORDER: usize = 4096;

/// A documented gallery identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub description: &'static str,
}

/// Every accepted gallery name; `<N>` and `<M>` stand for integers.
pub fn gallery_entries() -> &'static [GalleryEntry] {
    const ENTRIES: &[GalleryEntry] = &[
        GalleryEntry { name: "sc", description: "self-complementary graph on 1..8: K4 on 1..4 plus a perfect matching pattern" },
        GalleryEntry { name: "fig7", description: "six-vertex graph on 1..6 with degrees 3,3,3,2,4,5" },
        GalleryEntry { name: "t0", description: "18-vertex tree without cherries" },
        GalleryEntry { name: "cherry", description: "tree on v, w, u1..u4 with two cherries" },
        GalleryEntry { name: "tree-center1", description: "12-vertex tree with a one-vertex center" },
        GalleryEntry { name: "tree-center2", description: "12-vertex tree with a two-vertex center" },
        GalleryEntry { name: "c4k2", description: "C4 plus a disjoint K2" },
        GalleryEntry { name: "k<N>", description: "complete graph" },
        GalleryEntry { name: "k<M>_<N>", description: "complete bipartite graph" },
        GalleryEntry { name: "c<N>", description: "cycle, N >= 3" },
        GalleryEntry { name: "p<N>", description: "path with N edges" },
        GalleryEntry { name: "e<N>", description: "N isolated vertices" },
        GalleryEntry { name: "star<N>", description: "K_{1,N} with hub 0" },
        GalleryEntry { name: "prism<N>", description: "cartesian product of K2 and K_N" },
        GalleryEntry { name: "c4path<N>", description: "two paths on N vertices hanging off a C4 through a, b; N >= 2" },
    ];
    ENTRIES
}

/// Looks up a named graph.
pub fn gallery(name: &str) -> Result<Graph> {
    let name = name.trim().to_ascii_lowercase();
    match name.as_str() {
        "sc" => return Ok(self_complementary()),
        "fig7" => return Ok(fig7()),
        "t0" => return Ok(t0()),
        "cherry" => return Ok(two_cherry_tree()),
        "tree-center1" => return Ok(tree_center1()),
        "tree-center2" => return Ok(tree_center2()),
        "c4k2" => return Ok(labeled(6, "1 2 3 4 5 6", "1-2 2-3 3-4 4-1 5-6")),
        _ => {}
    }
    let unknown = || Error::UnknownName(name.clone());
    let param = |s: &str, min: usize| -> Result<usize> {
        let v: usize = s.parse().map_err(|_| unknown())?;
        if v < min || v > MAX_ORDER {
            return Err(Error::BadParams {
                name: name.clone(),
                reason: format!("parameter {v} outside {min}..={MAX_ORDER}"),
            });
        }
        Ok(v)
    };
    if let Some(rest) = name.strip_prefix("c4path") {
        return Ok(c4_path(param(rest, 2)?));
    }
    if let Some(rest) = name.strip_prefix("star") {
        return Ok(Graph::star(param(rest, 0)?));
    }
    if let Some(rest) = name.strip_prefix("prism") {
        let k = param(rest, 1)?;
        return Ok(products::cartesian(&Graph::complete(2), &Graph::complete(k)));
    }
    if let Some(rest) = name.strip_prefix('k') {
        if let Some((m, n)) = rest.split_once('_') {
            return Ok(Graph::complete_bipartite(param(m, 0)?, param(n, 0)?));
        }
        return Ok(Graph::complete(param(rest, 0)?));
    }
    if let Some(rest) = name.strip_prefix('c') {
        return Ok(Graph::cycle(param(rest, 3)?));
    }
    if let Some(rest) = name.strip_prefix('p') {
        return Ok(Graph::path(param(rest, 0)?));
    }
    if let Some(rest) = name.strip_prefix('e') {
        return Ok(Graph::edgeless(param(rest, 0)?));
    }
    Err(unknown())
}

/// Builds a labeled graph from whitespace-separated labels and `a-b` edges.
fn labeled(n: usize, labels: &str, edges: &str) -> Graph {
    let labels: Vec<&str> = labels.split_whitespace().collect();
    assert_eq!(labels.len(), n);
    let index = |l: &str| labels.iter().position(|&x| x == l).expect("known label");
    let edges = edges.split_whitespace().map(|e| {
        let (a, b) = e.split_once('-').expect("edge as a-b");
        (index(a), index(b))
    });
    Graph::new(n, edges)
        .expect("gallery data is valid")
        .with_labels(labels)
}

fn self_complementary() -> Graph {
    labeled(
        8,
        "1 2 3 4 5 6 7 8",
        "1-2 1-3 1-4 2-3 2-4 3-4 1-8 4-7 2-5 3-6 8-4 1-7 3-5 2-6",
    )
}

fn fig7() -> Graph {
    labeled(
        6,
        "1 2 3 4 5 6",
        "1-2 3-4 5-1 5-2 5-3 6-1 6-2 6-3 6-4 6-5",
    )
}

fn two_cherry_tree() -> Graph {
    labeled(6, "v w u1 u2 u3 u4", "v-w v-u1 v-u2 w-u3 w-u4")
}

fn t0() -> Graph {
    labeled(
        18,
        "A A' B B' C C' D D' E E' F F' G G' I J K L",
        "A'-A A-B A-B' A'-C A'-C' B-D B-D' B'-E B'-E' C-F C-F' C'-G C'-G' D'-I E'-J F'-K G'-L",
    )
}

fn tree_center1() -> Graph {
    labeled(
        12,
        "A B C D E F G H I J K L",
        "A-B B-D D-H B-E A-C C-G G-L C-F F-K F-J D-I",
    )
}

fn tree_center2() -> Graph {
    labeled(
        12,
        "A' A B C D E F G H J K L",
        "A'-A A'-B B-D D-H B-E A-C C-G G-L C-F F-K F-J",
    )
}

fn c4_path(n: usize) -> Graph {
    let mut labels = vec!["a".to_string(), "b".to_string()];
    labels.extend((1..=n).map(|i| i.to_string()));
    labels.extend((1..=n).map(|i| format!("{i}'")));
    let first = |i: usize| 1 + i;
    let second = |i: usize| 1 + n + i;
    let mut edges = vec![(0, first(1)), (1, first(1)), (0, second(1)), (1, second(1))];
    for i in 1..n {
        edges.push((first(i), first(i + 1)));
        edges.push((second(i), second(i + 1)));
    }
    Graph::new(2 + 2 * n, edges)
        .expect("c4path edges are in range")
        .with_labels(labels)
}
