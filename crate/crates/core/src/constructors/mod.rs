//! Graphs whose Bichon quantum automorphism groups realise free products,
//! tensor products and free wreath products of given ones.
//!
//! Every builder returns a [`ConstructionTrace`]: a small register program
//! over the input graphs which [`ConstructionTrace::replay`] re-executes.

mod gallery;

pub use gallery::{gallery, gallery_entries, GalleryEntry};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::products;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Operation {
    /// New apex joined to every vertex.
    Cone,
    /// One private pendant vertex per vertex (`G ⊙ K1`).
    CoronaK1,
    DisjointUnion,
    /// Disjoint union plus every edge between different operands.
    Join,
    /// Corona product of the two operands.
    Corona,
}

impl Operation {
    pub fn name(self) -> &'static str {
        match self {
            Operation::Cone => "cone",
            Operation::CoronaK1 => "corona_k1",
            Operation::DisjointUnion => "disjoint_union",
            Operation::Join => "join",
            Operation::Corona => "corona",
        }
    }

    /// The fact the step relies on when its guarantee holds.
    pub fn anchor(self) -> &'static str {
        match self {
            Operation::Cone => {
                "a cone over a disconnected graph is connected and keeps both quantum automorphism groups"
            }
            Operation::CoronaK1 => {
                "G ⊙ K1 doubles the order, has connected complement and keeps both quantum automorphism groups when G has no isolated vertex"
            }
            Operation::DisjointUnion => {
                "the disjoint union of connected graphs of pairwise distinct orders has the free product of their quantum automorphism groups"
            }
            Operation::Join => {
                "the join of graphs with connected complements and pairwise distinct orders has the tensor product of their Bichon groups"
            }
            Operation::Corona => {
                "G1 ⊙ G2 has the free wreath product of the groups of G2 by G1 when G1 or the complement of G2 has no isolated vertex"
            }
        }
    }

    /// Result of a one-operand step; `None` for the others.
    pub fn apply_unary(self, g: &Graph) -> Option<Graph> {
        match self {
            Operation::Cone => Some(cone(g)),
            Operation::CoronaK1 => Some(corona_k1(g)),
            _ => None,
        }
    }

    /// Whether a one-operand step keeps both quantum automorphism groups of `g`.
    pub fn preserves_quantum_group(self, g: &Graph) -> bool {
        match self {
            Operation::Cone => !g.is_connected(),
            Operation::CoronaK1 => g.n() >= 2 && g.isolated_vertices().is_empty(),
            _ => false,
        }
    }

    fn apply(self, operands: &[&Graph]) -> Result<Graph> {
        let owned = || operands.iter().map(|g| (*g).clone()).collect::<Vec<_>>();
        match (self, operands) {
            (Operation::Cone, [g]) => Ok(cone(g)),
            (Operation::CoronaK1, [g]) => Ok(corona_k1(g)),
            (Operation::DisjointUnion, _) => Ok(products::disjoint_union(&owned())),
            (Operation::Join, _) => Ok(join(&owned())),
            (Operation::Corona, [g1, g2]) => Ok(products::corona(g1, g2)),
            _ => Err(Error::BadParams {
                name: self.name().into(),
                reason: format!("{} operands", operands.len()),
            }),
        }
    }

    fn guarantee(self, operands: &[&Graph]) -> bool {
        let distinct = || {
            let mut orders: Vec<usize> = operands.iter().map(|g| g.n()).collect();
            orders.sort_unstable();
            orders.windows(2).all(|w| w[0] != w[1])
        };
        match (self, operands) {
            (Operation::Cone | Operation::CoronaK1, [g]) => self.preserves_quantum_group(g),
            (Operation::DisjointUnion, gs) => gs.iter().all(|g| g.is_connected()) && distinct(),
            (Operation::Join, gs) => gs.iter().all(|g| g.complement().is_connected()) && distinct(),
            (Operation::Corona, [g1, g2]) => {
                g1.isolated_vertices().is_empty() || g2.complement().isolated_vertices().is_empty()
            }
            _ => false,
        }
    }
}

/// One step of a construction, reading and writing numbered registers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub operation: Operation,
    pub operands: Vec<usize>,
    pub operand_orders: Vec<usize>,
    /// Register receiving the result: always the next free one.
    pub result: usize,
    pub result_order: usize,
    pub anchor: String,
    /// Whether the hypotheses of `anchor` hold for these operands.
    pub guarantee: bool,
}

/// Register program: registers `0..inputs` hold the inputs, each step
/// appends one register, and `outputs` name the result registers.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub input_orders: Vec<usize>,
    pub steps: Vec<TraceStep>,
    pub outputs: Vec<usize>,
    pub output_orders: Vec<usize>,
    pub notes: Vec<String>,
}

impl ConstructionTrace {
    /// Re-executes the program on `inputs`, returning every register.
    pub fn replay_registers(&self, inputs: &[Graph]) -> Result<Vec<Graph>> {
        if inputs.len() != self.input_orders.len() {
            return Err(Error::LengthMismatch {
                expected: self.input_orders.len(),
                found: inputs.len(),
            });
        }
        let mut regs: Vec<Graph> = inputs.to_vec();
        for step in &self.steps {
            let operands: Vec<&Graph> = step
                .operands
                .iter()
                .map(|&r| {
                    regs.get(r).ok_or(Error::IndexOutOfRange {
                        index: r,
                        n: regs.len(),
                    })
                })
                .collect::<Result<_>>()?;
            let g = step.operation.apply(&operands)?;
            if step.result != regs.len() || g.n() != step.result_order {
                return Err(Error::BadParams {
                    name: step.operation.name().into(),
                    reason: "replayed step disagrees with the trace".into(),
                });
            }
            regs.push(g);
        }
        Ok(regs)
    }

    /// Re-executes the program on `inputs`, returning the output registers.
    pub fn replay(&self, inputs: &[Graph]) -> Result<Vec<Graph>> {
        let regs = self.replay_registers(inputs)?;
        self.outputs
            .iter()
            .map(|&r| {
                regs.get(r).cloned().ok_or(Error::IndexOutOfRange {
                    index: r,
                    n: regs.len(),
                })
            })
            .collect()
    }

    /// [`Self::replay`] for single-output traces.
    pub fn replay_single(&self, inputs: &[Graph]) -> Result<Graph> {
        let mut out = self.replay(inputs)?;
        match out.len() {
            1 => Ok(out.remove(0)),
            found => Err(Error::LengthMismatch { expected: 1, found }),
        }
    }
}

struct Recorder {
    regs: Vec<Graph>,
    trace: ConstructionTrace,
}

impl Recorder {
    fn new(inputs: &[Graph]) -> Self {
        Recorder {
            regs: inputs.to_vec(),
            trace: ConstructionTrace {
                input_orders: inputs.iter().map(Graph::n).collect(),
                ..Default::default()
            },
        }
    }

    fn step(&mut self, operation: Operation, operands: &[usize]) -> usize {
        let refs: Vec<&Graph> = operands.iter().map(|&r| &self.regs[r]).collect();
        let g = operation.apply(&refs).expect("recorder passes valid arity");
        let result = self.regs.len();
        self.trace.steps.push(TraceStep {
            operation,
            operands: operands.to_vec(),
            operand_orders: refs.iter().map(|g| g.n()).collect(),
            result,
            result_order: g.n(),
            anchor: operation.anchor().into(),
            guarantee: operation.guarantee(&refs),
        });
        self.regs.push(g);
        result
    }

    fn note(&mut self, s: impl Into<String>) {
        self.trace.notes.push(s.into());
    }

    fn order(&self, r: usize) -> usize {
        self.regs[r].n()
    }

    /// Cones `r` if it is disconnected.
    fn connect(&mut self, r: usize) -> usize {
        if self.regs[r].is_connected() {
            r
        } else {
            self.step(Operation::Cone, &[r])
        }
    }

    /// Grows later registers with `G ⊙ K1` until all orders are distinct.
    fn separate_orders(&mut self, regs: &mut [usize]) {
        for i in 0..regs.len() {
            while regs[..i].iter().any(|&j| self.order(j) == self.order(regs[i])) {
                regs[i] = self.step(Operation::CoronaK1, &[regs[i]]);
            }
        }
    }

    fn finish(mut self, outputs: Vec<usize>) -> (Vec<Graph>, ConstructionTrace) {
        self.trace.output_orders = outputs.iter().map(|&r| self.order(r)).collect();
        let graphs = outputs.iter().map(|&r| self.regs[r].clone()).collect();
        self.trace.outputs = outputs;
        (graphs, self.trace)
    }

    fn finish_single(self, output: usize) -> (Graph, ConstructionTrace) {
        let (mut gs, trace) = self.finish(vec![output]);
        (gs.remove(0), trace)
    }
}

/// Adds an apex vertex (index `n`) adjacent to every vertex.
pub fn cone(g: &Graph) -> Graph {
    let n = g.n();
    let mut edges = g.edges();
    edges.extend((0..n).map(|v| (v, n)));
    Graph::new(n + 1, edges).expect("cone edges are in range")
}

/// `g ⊙ K1`: vertex `v` gains the pendant `n + v`.
pub fn corona_k1(g: &Graph) -> Graph {
    products::corona(g, &Graph::complete(1))
}

/// Disjoint union plus all edges between different members.
pub fn join(gs: &[Graph]) -> Graph {
    let union = products::disjoint_union(gs);
    let mut owner = Vec::with_capacity(union.n());
    for (k, g) in gs.iter().enumerate() {
        owner.extend(std::iter::repeat_n(k, g.n()));
    }
    Graph::from_fn(union.n(), |i, j| owner[i] != owner[j] || union.has_edge(i, j))
}

/// `g` itself if connected, otherwise its cone.
pub fn make_connected_preserving(g: &Graph) -> (Graph, ConstructionTrace) {
    let mut rec = Recorder::new(std::slice::from_ref(g));
    let r = rec.connect(0);
    rec.finish_single(r)
}

/// Applies `G ⊙ K1` to later members of order collisions until all orders
/// are pairwise distinct. Inputs must be connected with at least two vertices.
pub fn distinct_orders(gs: &[Graph]) -> Result<(Vec<Graph>, ConstructionTrace)> {
    for (i, g) in gs.iter().enumerate() {
        if g.n() <= 1 {
            return Err(Error::K1Input);
        }
        if !g.is_connected() {
            return Err(Error::Disconnected(i));
        }
    }
    let mut rec = Recorder::new(gs);
    let mut regs: Vec<usize> = (0..gs.len()).collect();
    rec.separate_orders(&mut regs);
    Ok(rec.finish(regs))
}

/// Splits off factors on at most one vertex, which have trivial quantum
/// automorphism group. Returns the kept input registers.
fn nontrivial_factors(rec: &mut Recorder, gs: &[Graph]) -> Vec<usize> {
    let kept: Vec<usize> = (0..gs.len()).filter(|&i| gs[i].n() >= 2).collect();
    for i in (0..gs.len()).filter(|&i| gs[i].n() < 2) {
        rec.note(format!(
            "input {i} has {} vertices and trivial quantum automorphism group; dropped as a unit factor",
            gs[i].n()
        ));
    }
    kept
}

/// A connected graph whose Bichon group is the free product of those of `gs`.
pub fn build_free(gs: &[Graph]) -> Result<(Graph, ConstructionTrace)> {
    if gs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut rec = Recorder::new(gs);
    let kept = nontrivial_factors(&mut rec, gs);
    if kept.is_empty() {
        rec.note("all factors are trivial; the result is K1");
        return Ok(rec.finish_single(trivial_output(gs)));
    }
    let mut regs: Vec<usize> = kept.into_iter().map(|r| rec.connect(r)).collect();
    rec.separate_orders(&mut regs);
    if regs.len() == 1 {
        return Ok(rec.finish_single(regs[0]));
    }
    let union = rec.step(Operation::DisjointUnion, &regs);
    let out = rec.step(Operation::Cone, &[union]);
    Ok(rec.finish_single(out))
}

/// A connected graph whose Bichon group is the tensor product of those of `gs`.
pub fn build_tensor(gs: &[Graph]) -> Result<(Graph, ConstructionTrace)> {
    if gs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut rec = Recorder::new(gs);
    let kept = nontrivial_factors(&mut rec, gs);
    if kept.is_empty() {
        rec.note("all factors are trivial; the result is K1");
        return Ok(rec.finish_single(trivial_output(gs)));
    }
    let mut regs: Vec<usize> = kept
        .into_iter()
        .map(|r| {
            let c = rec.connect(r);
            rec.step(Operation::CoronaK1, &[c])
        })
        .collect();
    rec.separate_orders(&mut regs);
    if regs.len() == 1 {
        return Ok(rec.finish_single(regs[0]));
    }
    let out = rec.step(Operation::Join, &regs);
    Ok(rec.finish_single(out))
}

/// A connected graph whose Bichon group is the free wreath product of the
/// group of `g2` by that of `g1`.
pub fn build_wreath(g1: &Graph, g2: &Graph) -> Result<(Graph, ConstructionTrace)> {
    if g1.n() == 0 {
        return Err(Error::EmptyInput);
    }
    let mut rec = Recorder::new(&[g1.clone(), g2.clone()]);
    let base = rec.connect(0);
    let base_ok = rec.regs[base].isolated_vertices().is_empty();
    let fiber_ok = g2.complement().isolated_vertices().is_empty();
    if !base_ok && !fiber_ok {
        return Err(Error::HypothesisFailed(
            "the connected base is K1 and the complement of the second graph has an isolated vertex".into(),
        ));
    }
    let out = rec.step(Operation::Corona, &[base, 1]);
    Ok(rec.finish_single(out))
}

fn trivial_output(gs: &[Graph]) -> usize {
    gs.iter().position(|g| g.n() == 1).unwrap_or(0)
}
