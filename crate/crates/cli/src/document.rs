//! JSON documents written by the command-line tool.

use qsym_core::classifier::{
    verify_certificate, Certificate, GraphSummary, Report, RuleId, Status, Target, Timings, TraceEntry,
};
use qsym_core::constructors::ConstructionTrace;
use qsym_core::reduction::{self, ZeroPattern};
use qsym_core::{Graph, Permutation};
use serde::{Deserialize, Serialize};

/// JSON Schema for [`ReportDocument`].
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl Default for ToolInfo {
    fn default() -> Self {
        ToolInfo {
            name: "qsym".into(),
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

/// Where a graph came from: a file path, `gallery:NAME`, `inline` or `stdin`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDescriptor {
    pub source: String,
    pub format: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictObject {
    pub target: Target,
    pub status: Status,
    pub rule: Option<RuleId>,
    pub certificate: Option<Certificate>,
    pub citation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternDump {
    pub grid: String,
    pub provenance: String,
    pub block_shape: Vec<usize>,
}

impl PatternDump {
    pub fn of(g: &Graph) -> Self {
        let pattern: ZeroPattern = reduction::zero_pattern(g);
        PatternDump {
            grid: pattern.render(),
            provenance: pattern.render_provenance(),
            block_shape: reduction::blocks(&pattern).map(|b| b.shape()).unwrap_or_default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: ToolInfo,
    pub input: InputDescriptor,
    pub graph: Graph,
    pub summary: GraphSummary,
    pub verdicts: Vec<VerdictObject>,
    pub notes: Vec<String>,
    pub rule_trace: Vec<TraceEntry>,
    pub automorphism_group_order: Option<u64>,
    pub self_complementary_witness: Option<Permutation>,
    pub construction: Option<ConstructionTrace>,
    pub pattern: Option<PatternDump>,
    pub timing_ms: Timings,
}

impl ReportDocument {
    pub fn new(report: Report, graph: Graph, input: InputDescriptor) -> Self {
        let mut verdicts = vec![verdict_object(Target::Bic, report.bic)];
        if let Some(v) = report.bic_complement {
            verdicts.push(verdict_object(Target::BicComplement, v));
        }
        verdicts.push(verdict_object(Target::Ban, report.ban));
        ReportDocument {
            tool: ToolInfo::default(),
            input,
            graph,
            summary: report.summary,
            verdicts,
            notes: report.notes,
            rule_trace: report.trace,
            automorphism_group_order: report.automorphism_group_order,
            self_complementary_witness: report.self_complementary_witness,
            construction: None,
            pattern: None,
            timing_ms: report.timings,
        }
    }

    pub fn verdict(&self, target: Target) -> Option<&VerdictObject> {
        self.verdicts.iter().find(|v| v.target == target)
    }

    /// Re-checks every determined verdict and the complement witness against
    /// the embedded graph.
    pub fn verify(&self) -> bool {
        let verdicts_ok = self.verdicts.iter().all(|v| match (&v.status, &v.certificate) {
            (Status::Unknown, _) => true,
            (status, Some(cert)) => verify_certificate(&self.graph, v.target, *status, cert),
            (_, None) => false,
        });
        let witness_ok = self
            .self_complementary_witness
            .as_ref()
            .is_none_or(|w| qsym_core::iso::is_isomorphism(&self.graph, &self.graph.complement(), w));
        verdicts_ok && witness_ok
    }
}

fn verdict_object(target: Target, v: qsym_core::classifier::Verdict) -> VerdictObject {
    VerdictObject {
        target,
        status: v.status,
        rule: v.rule,
        certificate: v.certificate,
        citation: v.citation,
    }
}

/// Output of `construct --json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionDocument {
    pub tool: ToolInfo,
    pub operation: String,
    pub inputs: Vec<InputDescriptor>,
    pub graph: Graph,
    pub trace: ConstructionTrace,
}
