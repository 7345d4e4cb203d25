//! Three-valued verdicts on the commutativity of the Bichon and Banica
//! quantum automorphism groups of a graph.
//!
//! Every rule is a sufficient condition. The engine applies them in a fixed
//! order per target, keeps the first that fires, and otherwise answers
//! [`Status::Unknown`]. Each determined verdict carries a [`Certificate`]
//! that [`verify_certificate`] re-checks from the graph alone.

mod certificate;

pub use certificate::{
    is_complete_bipartite_split, verify_certificate, verify_in, Certificate, Framework,
};

use std::fmt;
use std::ops::ControlFlow;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::automorphism::{SupportCatalog, DEFAULT_BUDGET};
use crate::constructors::Operation;
use crate::graph::{find_cherries, Cherry, Graph};
use crate::iso;
use crate::perm::Permutation;
use crate::products::{self, ProductKind};
use crate::reduction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Commutative,
    NonCommutative,
    Unknown,
}

impl Status {
    pub fn is_determined(self) -> bool {
        self != Status::Unknown
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Commutative => "commutative",
            Status::NonCommutative => "non-commutative",
            Status::Unknown => "unknown",
        })
    }
}

/// The three groups a report speaks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// Bichon's quantum automorphism group of the graph.
    Bic,
    /// Bichon's quantum automorphism group of the complement.
    BicComplement,
    /// Banica's quantum automorphism group of the graph.
    Ban,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RuleId {
    #[serde(rename = "R-BAN-1")]
    DisjointPair,
    #[serde(rename = "R-BIC-1")]
    EdgeFreePair,
    #[serde(rename = "R-SMALL")]
    SmallOrder,
    #[serde(rename = "R-QF")]
    QuadrangleFree,
    #[serde(rename = "R-QFC")]
    QuadrangleFreeComplement,
    #[serde(rename = "R-FOREST")]
    Forest,
    #[serde(rename = "R-KMN")]
    CompleteBipartite,
    #[serde(rename = "R-STRIP")]
    Strip,
    #[serde(rename = "R-BLOCKS")]
    Blocks,
    #[serde(rename = "R-CHERRY")]
    Cherry,
    #[serde(rename = "R-PROD")]
    Product,
    #[serde(rename = "R-CORONA")]
    Corona,
    #[serde(rename = "R-CONSTRUCT")]
    Construction,
    #[serde(rename = "R-SUBGROUP")]
    QuantumSubgroup,
    #[serde(rename = "R-COMPLEMENT")]
    ComplementBanica,
}

impl RuleId {
    pub fn code(self) -> &'static str {
        match self {
            RuleId::DisjointPair => "R-BAN-1",
            RuleId::EdgeFreePair => "R-BIC-1",
            RuleId::SmallOrder => "R-SMALL",
            RuleId::QuadrangleFree => "R-QF",
            RuleId::QuadrangleFreeComplement => "R-QFC",
            RuleId::Forest => "R-FOREST",
            RuleId::CompleteBipartite => "R-KMN",
            RuleId::Strip => "R-STRIP",
            RuleId::Blocks => "R-BLOCKS",
            RuleId::Cherry => "R-CHERRY",
            RuleId::Product => "R-PROD",
            RuleId::Corona => "R-CORONA",
            RuleId::Construction => "R-CONSTRUCT",
            RuleId::QuantumSubgroup => "R-SUBGROUP",
            RuleId::ComplementBanica => "R-COMPLEMENT",
        }
    }

    /// The mathematical fact the rule rests on.
    pub fn citation(self) -> &'static str {
        match self {
            RuleId::DisjointPair => {
                "Schmidt's criterion: two non-trivial automorphisms with disjoint supports make the Banica group non-commutative"
            }
            RuleId::EdgeFreePair => {
                "two non-trivial automorphisms with disjoint supports and no edge between the supports make the Bichon group non-commutative"
            }
            RuleId::SmallOrder => {
                "S_n^+ is commutative for n <= 3, hence so is every quantum automorphism group of a graph on at most three vertices"
            }
            RuleId::QuadrangleFree => {
                "for a graph without a 4-cycle the Banica and Bichon quantum automorphism groups coincide"
            }
            RuleId::QuadrangleFreeComplement => {
                "the Bichon group of the complement of a graph without a 4-cycle is commutative"
            }
            RuleId::Forest => {
                "a forest has non-commutative Bichon group exactly when it has two edge-free disjoint automorphisms; forests have no 4-cycle"
            }
            RuleId::CompleteBipartite => {
                "the Bichon group of K_{m,n} is non-commutative if and only if m >= 4 or n >= 4"
            }
            RuleId::Strip => {
                "deleting the vertices of degree n-1 or n-2 gives an induced subgraph whose commutative Bichon group forces that of the graph"
            }
            RuleId::Blocks => {
                "forced zeros split the magic unitary into blocks; 1x1 blocks are trivial and a single block of size <= 3 has commuting entries"
            }
            RuleId::Cherry => {
                "the line graph of a graph with two cherries has non-commutative Bichon group"
            }
            RuleId::Product => {
                "the Bichon group of a Cartesian, direct, strong or lexicographic product surjects onto the Bichon groups of its factors"
            }
            RuleId::Corona => {
                "the corona product of a graph on at least two vertices with a graph with non-trivial automorphisms has non-commutative Bichon group"
            }
            RuleId::Construction => {
                "coning a disconnected graph, or attaching a pendant vertex to every vertex of a graph without isolated vertices, preserves both quantum automorphism groups"
            }
            RuleId::QuantumSubgroup => {
                "the Bichon group is a quantum subgroup of the Banica group"
            }
            RuleId::ComplementBanica => {
                "a graph and its complement have the same Banica quantum automorphism group"
            }
        }
    }
}

/// A status with the rule and certificate that determined it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub rule: Option<RuleId>,
    pub certificate: Option<Certificate>,
    pub citation: Option<String>,
}

impl Verdict {
    pub fn unknown() -> Self {
        Verdict {
            status: Status::Unknown,
            rule: None,
            certificate: None,
            citation: None,
        }
    }

    pub fn determined(status: Status, rule: RuleId, certificate: Certificate) -> Self {
        Verdict {
            status,
            rule: Some(rule),
            certificate: Some(certificate),
            citation: Some(rule.citation().to_string()),
        }
    }

    /// Re-checks the certificate against `g` for `target`. Unknown verdicts
    /// have nothing to check and pass.
    pub fn verify(&self, g: &Graph, target: Target) -> bool {
        match (&self.status, &self.certificate) {
            (Status::Unknown, _) => true,
            (status, Some(cert)) => verify_certificate(g, target, *status, cert),
            (_, None) => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Fired,
    NotApplicable,
    Skipped,
}

/// One rule attempt.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub target: Target,
    pub rule: RuleId,
    pub outcome: Outcome,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub edges: usize,
    pub degrees: Vec<usize>,
    pub connected: bool,
    pub components: usize,
    pub contains_quadrangle: bool,
    pub complement_contains_quadrangle: bool,
    pub forest: bool,
    pub tree: bool,
}

impl GraphSummary {
    pub fn of(g: &Graph) -> Self {
        GraphSummary {
            n: g.n(),
            edges: g.edge_count(),
            degrees: g.degrees(),
            connected: g.is_connected(),
            components: g.components().len(),
            contains_quadrangle: g.contains_quadrangle(),
            complement_contains_quadrangle: g.complement().contains_quadrangle(),
            forest: g.is_forest(),
            tree: g.is_tree(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Timings {
    pub total_ms: f64,
    pub automorphisms_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub summary: GraphSummary,
    pub bic: Verdict,
    pub bic_complement: Option<Verdict>,
    pub ban: Verdict,
    pub trace: Vec<TraceEntry>,
    pub notes: Vec<String>,
    pub automorphism_group_order: Option<u64>,
    /// Isomorphism from the graph onto its complement, when one exists.
    pub self_complementary_witness: Option<Permutation>,
    pub timings: Timings,
}

impl Report {
    pub fn verdict(&self, target: Target) -> Option<&Verdict> {
        match target {
            Target::Bic => Some(&self.bic),
            Target::BicComplement => self.bic_complement.as_ref(),
            Target::Ban => Some(&self.ban),
        }
    }

    /// Re-checks every determined verdict of the report against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        [Target::Bic, Target::BicComplement, Target::Ban]
            .into_iter()
            .all(|t| self.verdict(t).is_none_or(|v| v.verify(g, t)))
    }
}

/// How the graph was built by this toolkit. Only used after checking that
/// replaying it reproduces the graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Product { product: ProductKind, factors: [Graph; 2] },
    Corona { base: Graph, fiber: Graph },
    Construction { step: Operation, input: Graph },
}

impl Provenance {
    fn replay(&self) -> Option<Graph> {
        match self {
            Provenance::Product { product, factors } => {
                products::product(*product, &factors[0], &factors[1]).ok()
            }
            Provenance::Corona { base, fiber } => Some(products::corona(base, fiber)),
            Provenance::Construction { step, input } => step.apply_unary(input),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    /// Node budget for every automorphism or isomorphism search.
    pub budget: u64,
    pub provenance: Option<Provenance>,
    /// When set, the graph is the line graph of this graph.
    pub line_graph_of: Option<Graph>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            budget: DEFAULT_BUDGET,
            provenance: None,
            line_graph_of: None,
        }
    }
}

impl ClassifyOptions {
    pub fn with_budget(budget: u64) -> Self {
        ClassifyOptions {
            budget,
            ..Default::default()
        }
    }

    fn plain(&self) -> ClassifyOptions {
        ClassifyOptions::with_budget(self.budget)
    }
}

pub fn classify(g: &Graph) -> Report {
    classify_with(g, &ClassifyOptions::default())
}

/// Bichon verdict for the line graph of `base`, including the two-cherry rule.
pub fn classify_line_graph(base: &Graph) -> Report {
    classify_with(
        &base.line_graph(),
        &ClassifyOptions {
            line_graph_of: Some(base.clone()),
            ..Default::default()
        },
    )
}

pub fn classify_with_provenance(g: &Graph, provenance: Provenance) -> Report {
    classify_with(
        g,
        &ClassifyOptions {
            provenance: Some(provenance),
            ..Default::default()
        },
    )
}

pub fn classify_with(g: &Graph, opts: &ClassifyOptions) -> Report {
    let start = Instant::now();
    let mut engine = Engine::new(g, opts);
    let mut bic = engine.run(Target::Bic, &BIC_RULES);
    let mut ban = engine.run(Target::Ban, &BAN_RULES);
    propagate(&mut bic, &mut ban, !g.contains_quadrangle(), &mut engine.trace);
    if let Some(cat) = &engine.catalog {
        if let Err(e) = cat {
            engine.notes.push(format!(
                "{e}; rules that need the automorphism group were skipped"
            ));
        }
    }
    if ban.status == Status::Commutative {
        engine.notes.push("the graph has no quantum symmetry".into());
    }
    Report {
        summary: GraphSummary::of(g),
        bic,
        bic_complement: None,
        ban,
        automorphism_group_order: engine.catalog.as_ref().and_then(|c| c.as_ref().ok()).map(SupportCatalog::order),
        trace: engine.trace,
        notes: engine.notes,
        self_complementary_witness: None,
        timings: Timings {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
            automorphisms_ms: engine.aut_ms,
        },
    }
}

pub fn classify_with_complement(g: &Graph) -> Report {
    classify_with_complement_opts(g, &ClassifyOptions::default())
}

/// Classifies `g` and its complement and combines what the two runs imply.
pub fn classify_with_complement_opts(g: &Graph, opts: &ClassifyOptions) -> Report {
    let start = Instant::now();
    let gc = g.complement();
    let mut report = classify_with(g, opts);
    let comp = classify_with(&gc, &opts.plain());
    if report.ban.status == Status::Unknown && comp.ban.status.is_determined() {
        if let Some(source) = comp.ban.certificate.clone() {
            report.ban = Verdict::determined(
                comp.ban.status,
                RuleId::ComplementBanica,
                Certificate::ComplementBanica {
                    source: Box::new(source),
                },
            );
            report.trace.push(TraceEntry {
                target: Target::Ban,
                rule: RuleId::ComplementBanica,
                outcome: Outcome::Fired,
                detail: format!("Banica group of the complement is {}", comp.ban.status),
            });
            let qf = !report.summary.contains_quadrangle;
            propagate(&mut report.bic, &mut report.ban, qf, &mut report.trace);
            if report.ban.status == Status::Commutative {
                report.notes.push("the graph has no quantum symmetry".into());
            }
        }
    }
    let both_commutative =
        report.bic.status == Status::Commutative && comp.bic.status == Status::Commutative;
    let hypothesis =
        !report.summary.contains_quadrangle || !report.summary.complement_contains_quadrangle;
    if both_commutative && hypothesis {
        report.notes.push(
            "Bichon groups of the graph and its complement are both commutative and one of them has no 4-cycle, so the graph has no quantum symmetry".into(),
        );
    }
    report.self_complementary_witness = iso::find_isomorphism(g, &gc, opts.budget).ok().flatten();
    report.bic_complement = Some(comp.bic);
    report.notes.dedup();
    report.timings.automorphisms_ms += comp.timings.automorphisms_ms;
    report.timings.total_ms = start.elapsed().as_secs_f64() * 1e3;
    report
}

const BIC_RULES: [RuleId; 11] = [
    RuleId::SmallOrder,
    RuleId::QuadrangleFreeComplement,
    RuleId::EdgeFreePair,
    RuleId::Cherry,
    RuleId::CompleteBipartite,
    RuleId::Product,
    RuleId::Corona,
    RuleId::Construction,
    RuleId::Forest,
    RuleId::Strip,
    RuleId::Blocks,
];

const BAN_RULES: [RuleId; 5] = [
    RuleId::SmallOrder,
    RuleId::DisjointPair,
    RuleId::Construction,
    RuleId::Forest,
    RuleId::Blocks,
];

enum Attempt {
    Fired(Status, Certificate),
    NotApplicable(String),
    Skipped(String),
}

struct Engine<'a> {
    g: &'a Graph,
    opts: &'a ClassifyOptions,
    catalog: Option<crate::Result<SupportCatalog>>,
    aut_ms: f64,
    trace: Vec<TraceEntry>,
    notes: Vec<String>,
}

impl<'a> Engine<'a> {
    fn new(g: &'a Graph, opts: &'a ClassifyOptions) -> Self {
        Engine {
            g,
            opts,
            catalog: None,
            aut_ms: 0.0,
            trace: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn catalog(&mut self) -> Result<&SupportCatalog, String> {
        if self.catalog.is_none() {
            let start = Instant::now();
            self.catalog = Some(SupportCatalog::build(self.g, self.opts.budget));
            self.aut_ms += start.elapsed().as_secs_f64() * 1e3;
        }
        match self.catalog.as_ref().expect("just computed") {
            Ok(c) => Ok(c),
            Err(e) => Err(e.to_string()),
        }
    }

    fn run(&mut self, target: Target, rules: &[RuleId]) -> Verdict {
        let fw = match target {
            Target::Ban => Framework::Banica,
            _ => Framework::Bichon,
        };
        for &rule in rules {
            let (outcome, detail, verdict) = match self.attempt(fw, rule) {
                Attempt::Fired(status, cert) => (
                    Outcome::Fired,
                    status.to_string(),
                    Some(Verdict::determined(status, rule, cert)),
                ),
                Attempt::NotApplicable(why) => (Outcome::NotApplicable, why, None),
                Attempt::Skipped(why) => (Outcome::Skipped, why, None),
            };
            self.trace.push(TraceEntry {
                target,
                rule,
                outcome,
                detail,
            });
            if let Some(v) = verdict {
                return v;
            }
        }
        Verdict::unknown()
    }

    fn attempt(&mut self, fw: Framework, rule: RuleId) -> Attempt {
        let g = self.g;
        match rule {
            RuleId::SmallOrder => {
                if g.n() <= 3 {
                    Attempt::Fired(Status::Commutative, Certificate::SmallOrder { n: g.n() })
                } else {
                    Attempt::NotApplicable(format!("{} vertices", g.n()))
                }
            }
            RuleId::QuadrangleFreeComplement => {
                if g.complement().contains_quadrangle() {
                    Attempt::NotApplicable("complement contains a 4-cycle".into())
                } else {
                    Attempt::Fired(Status::Commutative, Certificate::QuadrangleFreeComplement)
                }
            }
            RuleId::EdgeFreePair => match self.catalog() {
                Err(e) => Attempt::Skipped(e),
                Ok(cat) => match cat.edge_free_pair(g) {
                    Some((sigma, tau)) => Attempt::Fired(
                        Status::NonCommutative,
                        Certificate::EdgeFreePair { sigma, tau },
                    ),
                    None => Attempt::NotApplicable("no edge-free disjoint pair".into()),
                },
            },
            RuleId::DisjointPair => match self.catalog() {
                Err(e) => Attempt::Skipped(e),
                Ok(cat) => match cat.disjoint_pair() {
                    Some((sigma, tau)) => Attempt::Fired(
                        Status::NonCommutative,
                        Certificate::DisjointPair { sigma, tau },
                    ),
                    None => Attempt::NotApplicable("no disjoint pair".into()),
                },
            },
            RuleId::Cherry => match &self.opts.line_graph_of {
                None => Attempt::NotApplicable("not presented as a line graph".into()),
                Some(base) if &base.line_graph() != g => {
                    Attempt::NotApplicable("line graph of the given base differs".into())
                }
                Some(base) => match two_cherries(base) {
                    Some(cherries) => Attempt::Fired(
                        Status::NonCommutative,
                        Certificate::TwoCherries {
                            base: base.clone(),
                            cherries,
                        },
                    ),
                    None => Attempt::NotApplicable("base has fewer than two cherry centres".into()),
                },
            },
            RuleId::CompleteBipartite => match complete_bipartite_parts(g) {
                Some(part) => {
                    let (m, n) = (part.len(), g.n() - part.len());
                    let status = if m.max(n) >= 4 {
                        Status::NonCommutative
                    } else {
                        Status::Commutative
                    };
                    Attempt::Fired(status, Certificate::CompleteBipartite { m, n, part })
                }
                None => Attempt::NotApplicable("not a complete bipartite graph".into()),
            },
            RuleId::Product => self.product_rule(),
            RuleId::Corona => self.corona_rule(),
            RuleId::Construction => self.construction_rule(fw),
            RuleId::Forest => {
                if !g.is_forest() {
                    return Attempt::NotApplicable("not a forest".into());
                }
                match self.catalog() {
                    Err(e) => Attempt::Skipped(e),
                    Ok(cat) if cat.disjoint_pair().is_some() => {
                        Attempt::NotApplicable("forest has a disjoint pair".into())
                    }
                    Ok(_) => Attempt::Fired(Status::Commutative, Certificate::ForestNoDisjointPair),
                }
            }
            RuleId::Strip => {
                let chain = reduction::strip_high_degree_fixpoint(g);
                if chain.removed.is_empty() {
                    return Attempt::NotApplicable("no vertex of degree n-1 or n-2".into());
                }
                let t = &chain.terminal;
                let terminal = if t.n() == 0 {
                    Certificate::EmptyGraph
                } else if t.n() <= 3 {
                    Certificate::SmallOrder { n: t.n() }
                } else if !t.complement().contains_quadrangle() {
                    Certificate::QuadrangleFreeComplement
                } else {
                    return Attempt::NotApplicable(format!(
                        "stripping ends in an uncertified graph on {} vertices",
                        t.n()
                    ));
                };
                Attempt::Fired(
                    Status::Commutative,
                    Certificate::StripToCommutative {
                        removed: chain.removed,
                        terminal: Box::new(terminal),
                    },
                )
            }
            RuleId::Blocks => {
                let blocks = reduction::blocks(&reduction::zero_pattern(g))
                    .expect("zero patterns are symmetric");
                let shape = blocks.shape();
                if shape.get(1).is_none_or(|&s| s <= 1) && shape.first().is_none_or(|&s| s <= 3) {
                    Attempt::Fired(
                        Status::Commutative,
                        Certificate::SmallBlocks {
                            blocks: blocks.blocks,
                        },
                    )
                } else {
                    Attempt::NotApplicable(format!("block sizes {shape:?}"))
                }
            }
            RuleId::QuadrangleFree | RuleId::QuantumSubgroup | RuleId::ComplementBanica => {
                Attempt::NotApplicable("derived rule".into())
            }
        }
    }

    fn checked_provenance(&self) -> Result<&'a Provenance, String> {
        match &self.opts.provenance {
            None => Err("no construction provenance".into()),
            Some(p) if p.replay().as_ref() != Some(self.g) => {
                Err("provenance does not reproduce the graph".into())
            }
            Some(p) => Ok(p),
        }
    }

    fn product_rule(&mut self) -> Attempt {
        let (product, factors) = match self.checked_provenance() {
            Ok(Provenance::Product { product, factors }) => (*product, factors),
            Ok(_) => return Attempt::NotApplicable("not a product".into()),
            Err(e) => return Attempt::NotApplicable(e),
        };
        if !ProductKind::TENSOR_STYLE.contains(&product) {
            return Attempt::NotApplicable(format!("no lifting rule for {}", product.name()));
        }
        for (factor_index, factor) in factors.iter().enumerate() {
            let r = classify_with(factor, &self.opts.plain());
            if let (Status::NonCommutative, Some(cert)) = (r.bic.status, r.bic.certificate) {
                return Attempt::Fired(
                    Status::NonCommutative,
                    Certificate::ProductLift {
                        product,
                        factors: factors.clone(),
                        factor_index,
                        factor_certificate: Box::new(cert),
                    },
                );
            }
        }
        Attempt::NotApplicable("no factor certified non-commutative".into())
    }

    fn corona_rule(&mut self) -> Attempt {
        let (base, fiber) = match self.checked_provenance() {
            Ok(Provenance::Corona { base, fiber }) => (base, fiber),
            Ok(_) => return Attempt::NotApplicable("not a corona product".into()),
            Err(e) => return Attempt::NotApplicable(e),
        };
        if base.n() < 2 {
            return Attempt::NotApplicable("base has fewer than two vertices".into());
        }
        let mut witness = None;
        let search = iso::for_each_automorphism(fiber, self.opts.budget, |m| {
            if m.iter().enumerate().any(|(i, &p)| i != p) {
                witness = Some(m.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        match (search, witness) {
            (Err(e), _) => Attempt::Skipped(e.to_string()),
            (Ok(()), None) => Attempt::NotApplicable("fiber has no non-trivial automorphism".into()),
            (Ok(()), Some(images)) => Attempt::Fired(
                Status::NonCommutative,
                Certificate::CoronaRule {
                    base: base.clone(),
                    fiber: fiber.clone(),
                    witness: Permutation::new(images).expect("automorphisms are bijections"),
                },
            ),
        }
    }

    fn construction_rule(&mut self, fw: Framework) -> Attempt {
        let (step, input) = match self.checked_provenance() {
            Ok(Provenance::Construction { step, input }) => (*step, input),
            Ok(_) => return Attempt::NotApplicable("not a cone or pendant construction".into()),
            Err(e) => return Attempt::NotApplicable(e),
        };
        if !step.preserves_quantum_group(input) {
            return Attempt::NotApplicable(format!("{} does not preserve the group here", step.name()));
        }
        let r = classify_with(input, &self.opts.plain());
        let v = match fw {
            Framework::Bichon => r.bic,
            Framework::Banica => r.ban,
        };
        match (v.status, v.certificate) {
            (status, Some(cert)) if status.is_determined() => Attempt::Fired(
                status,
                Certificate::ConstructionFact {
                    step,
                    input: input.clone(),
                    source: Box::new(cert),
                },
            ),
            _ => Attempt::NotApplicable("input undetermined".into()),
        }
    }
}

fn propagate(bic: &mut Verdict, ban: &mut Verdict, quadrangle_free: bool, trace: &mut Vec<TraceEntry>) {
    loop {
        let mut changed = false;
        if bic.status == Status::NonCommutative && ban.status == Status::Unknown {
            *ban = derived(bic, RuleId::QuantumSubgroup, Framework::Bichon);
            trace.push(fired(Target::Ban, RuleId::QuantumSubgroup, ban.status));
            changed = true;
        }
        if ban.status == Status::Commutative && bic.status == Status::Unknown {
            *bic = derived(ban, RuleId::QuantumSubgroup, Framework::Banica);
            trace.push(fired(Target::Bic, RuleId::QuantumSubgroup, bic.status));
            changed = true;
        }
        if quadrangle_free {
            if bic.status.is_determined() && ban.status == Status::Unknown {
                *ban = derived(bic, RuleId::QuadrangleFree, Framework::Bichon);
                trace.push(fired(Target::Ban, RuleId::QuadrangleFree, ban.status));
                changed = true;
            } else if ban.status.is_determined() && bic.status == Status::Unknown {
                *bic = derived(ban, RuleId::QuadrangleFree, Framework::Banica);
                trace.push(fired(Target::Bic, RuleId::QuadrangleFree, bic.status));
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

fn derived(from: &Verdict, rule: RuleId, fw: Framework) -> Verdict {
    let source = Box::new(from.certificate.clone().expect("determined verdicts carry certificates"));
    let cert = match rule {
        RuleId::QuadrangleFree => Certificate::QuadrangleFreeSelf { from: fw, source },
        _ => Certificate::QuantumSubgroup { from: fw, source },
    };
    Verdict::determined(from.status, rule, cert)
}

fn fired(target: Target, rule: RuleId, status: Status) -> TraceEntry {
    TraceEntry {
        target,
        rule,
        outcome: Outcome::Fired,
        detail: status.to_string(),
    }
}

/// Two cherries with different centres, the first such pair in
/// [`find_cherries`] order.
pub fn two_cherries(g: &Graph) -> Option<[Cherry; 2]> {
    let cherries = find_cherries(g);
    let first = *cherries.first()?;
    let second = *cherries.iter().find(|c| c.w != first.w)?;
    Some([first, second])
}

/// If `g` is `K_{m,n}` with `m, n ≥ 1`, the side containing vertex 0.
pub fn complete_bipartite_parts(g: &Graph) -> Option<Vec<usize>> {
    if g.n() < 2 || !g.is_connected() {
        return None;
    }
    let part: Vec<usize> = (0..g.n()).filter(|&v| v == 0 || !g.has_edge(0, v)).collect();
    is_complete_bipartite_split(g, &part).then_some(part)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs_are_commutative() {
        for g in [Graph::edgeless(0), Graph::complete(1), Graph::complete(3), Graph::path(2)] {
            let r = classify(&g);
            assert_eq!(r.bic.status, Status::Commutative);
            assert_eq!(r.ban.status, Status::Commutative);
            assert!(r.verify(&g));
        }
    }

    #[test]
    fn cycle_four() {
        let g = Graph::cycle(4);
        let r = classify(&g);
        assert_eq!(r.bic.status, Status::Commutative);
        assert_eq!(r.ban.status, Status::NonCommutative);
        assert!(r.verify(&g));
    }

    #[test]
    fn complete_bipartite_recognition() {
        assert_eq!(complete_bipartite_parts(&Graph::complete_bipartite(2, 3)), Some(vec![0, 1]));
        assert_eq!(complete_bipartite_parts(&Graph::complete(2)), Some(vec![0]));
        assert_eq!(complete_bipartite_parts(&Graph::path(3)), None);
        assert_eq!(complete_bipartite_parts(&Graph::edgeless(3)), None);
        let r = classify(&Graph::complete_bipartite(4, 2));
        assert_eq!(r.bic.status, Status::NonCommutative);
        assert_eq!(r.bic.rule, Some(RuleId::EdgeFreePair));
    }

    #[test]
    fn tampered_certificates_fail() {
        let g = Graph::complete(4).complement();
        let r = classify(&g);
        let Some(Certificate::EdgeFreePair { sigma, .. }) = r.bic.certificate.clone() else {
            panic!("expected an edge-free pair");
        };
        let bad = Certificate::EdgeFreePair {
            sigma: sigma.clone(),
            tau: sigma,
        };
        assert!(!verify_certificate(&g, Target::Bic, Status::NonCommutative, &bad));
        assert!(!verify_certificate(&g, Target::Bic, Status::Commutative, r.bic.certificate.as_ref().unwrap()));
        let disjoint = classify(&Graph::complete(4)).ban.certificate.unwrap();
        assert!(!verify_certificate(&Graph::complete(4), Target::Bic, Status::NonCommutative, &disjoint));
    }

    #[test]
    fn budget_exhaustion_degrades_to_unknown() {
        let g = Graph::edgeless(7).complement().complement();
        let g = crate::products::disjoint_union(&[g, Graph::cycle(5)]);
        let r = classify_with(&g, &ClassifyOptions::with_budget(50));
        assert!(r.trace.iter().any(|t| t.outcome == Outcome::Skipped));
        assert!(r.notes.iter().any(|n| n.contains("budget")));
        assert!(r.verify(&g));
    }

    #[test]
    fn trees_have_commutative_complement() {
        let g = Graph::path(5);
        let r = classify_with_complement(&g);
        assert_eq!(r.bic_complement.as_ref().unwrap().status, Status::Commutative);
        assert!(r.verify(&g));
    }
}
