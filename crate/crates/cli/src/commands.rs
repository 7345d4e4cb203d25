//! Command-line definitions and their implementations.

use std::fs;
use std::io::{self, Read as _, Write as _};
use std::path::PathBuf;

use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use qsym_core::automorphism::DEFAULT_BUDGET;
use qsym_core::census::{self, CensusResult, DEFAULT_SEED};
use qsym_core::classifier::{self, ClassifyOptions, Provenance};
use qsym_core::constructors::{self, ConstructionTrace, Operation};
use qsym_core::products::{self, ProductKind};
use qsym_core::reduction;
use qsym_core::Graph;
use thiserror::Error;

use crate::document::{ConstructionDocument, InputDescriptor, PatternDump, ReportDocument, ToolInfo};
use crate::format::{self, Format, ParseError};

#[derive(Debug, Parser)]
#[command(name = "qsym", version, about = "Quantum symmetry analysis of finite graphs")]
pub struct Cli {
    /// Node budget for automorphism and isomorphism searches.
    #[arg(long, global = true, env = "QSYM_BUDGET")]
    pub budget: Option<u64>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

/// Graph inputs: files (`-` for stdin), gallery names and inline edge lists,
/// taken in command-line order.
#[derive(Debug, Args)]
pub struct Inputs {
    /// Graph files; `.g6` is graph6, anything else an edge list.
    #[arg(id = "files")]
    pub files: Vec<PathBuf>,
    /// Named gallery graph, e.g. `sc`, `c5`, `k3_4`.
    #[arg(long, id = "gallery")]
    pub gallery: Vec<String>,
    /// Inline edge list such as `4;0 1;1 2;2 3;3 0`.
    #[arg(long, id = "edges", allow_hyphen_values = true)]
    pub edges: Vec<String>,
    /// Read files in this format regardless of extension.
    #[arg(long)]
    pub input_format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a graph and its complement and print a JSON report.
    Analyze {
        #[command(flatten)]
        inputs: Inputs,
        /// Include the zero pattern in the report.
        #[arg(long)]
        pattern: bool,
        /// Analyze the line graph of the input.
        #[arg(long)]
        line_graph: bool,
    },
    /// Build a graph product of two inputs.
    Product {
        kind: ProductArg,
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
        /// Print a JSON report of the product instead of the graph.
        #[arg(long)]
        analyze: bool,
    },
    /// Build a graph realising a free, tensor or free wreath product.
    Construct {
        kind: ConstructArg,
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
        /// Print the graph and its construction trace as JSON.
        #[arg(long)]
        json: bool,
        /// Also write the construction trace as JSON to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Print a JSON report of the result instead of the graph.
        #[arg(long)]
        analyze: bool,
    },
    /// Print a named graph.
    Gallery {
        name: Option<String>,
        /// List the available names.
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value_t = Format::Edges)]
        format: Format,
    },
    /// Exhaustive checks over small trees and forests, or random cross-checks.
    Census {
        kind: CensusArg,
        /// Largest order to enumerate.
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of random graphs for `oracle`.
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Print the full result as JSON instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// Print the zero pattern of the magic unitary of a graph.
    Pattern {
        #[command(flatten)]
        inputs: Inputs,
        /// Show which rule forced each zero and the block shape.
        #[arg(long)]
        provenance: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProductArg {
    Cartesian,
    Direct,
    Strong,
    Lex,
    Corona,
}

impl ProductArg {
    fn kind(self) -> ProductKind {
        match self {
            ProductArg::Cartesian => ProductKind::Cartesian,
            ProductArg::Direct => ProductKind::Direct,
            ProductArg::Strong => ProductKind::Strong,
            ProductArg::Lex => ProductKind::Lexicographic,
            ProductArg::Corona => ProductKind::Corona,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructArg {
    Free,
    Tensor,
    Wreath,
    Cone,
    CoronaK1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CensusArg {
    Forests,
    Cherries,
    Oracle,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qsym_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("census found {0} violations")]
    Violations(usize),
    #[error("{0}")]
    Output(String),
}

impl CliError {
    /// 2 for unreadable input, 3 for failed preconditions, 4 for an
    /// exhausted search budget, 1 for census violations and I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Core(qsym_core::Error::SizeLimitExceeded { .. }) => 4,
            CliError::Core(_) => 3,
            CliError::Io { .. } | CliError::Violations(_) | CliError::Output(_) => 1,
        }
    }
}

/// A graph with a description of where it came from.
pub struct Loaded {
    pub graph: Graph,
    pub input: InputDescriptor,
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let matches = match Cli::command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let result = Cli::from_arg_matches(&matches)
        .map_err(|e| CliError::Usage(e.to_string()))
        .and_then(|cli| run(&cli, &matches));
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("qsym: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli, matches: &ArgMatches) -> Result<(), CliError> {
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    let sub = matches.subcommand().map(|(_, m)| m).expect("a subcommand is required");
    match &cli.command {
        Command::Analyze {
            inputs,
            pattern,
            line_graph,
        } => {
            let loaded = single(load_inputs(inputs, sub)?)?;
            let (graph, opts) = if *line_graph {
                let base = loaded.graph;
                let opts = ClassifyOptions {
                    budget,
                    line_graph_of: Some(base.clone()),
                    ..Default::default()
                };
                (base.line_graph(), opts)
            } else {
                (loaded.graph, ClassifyOptions::with_budget(budget))
            };
            let mut doc = analyze(&graph, &opts, loaded.input);
            if *pattern {
                doc.pattern = Some(PatternDump::of(&graph));
            }
            emit(cli, &json(&doc)?)
        }
        Command::Product {
            kind,
            inputs,
            format,
            analyze: report,
        } => {
            let [g1, g2] = pair(load_inputs(inputs, sub)?)?;
            let kind = kind.kind();
            let g = products::product(kind, &g1.graph, &g2.graph)?;
            if *report {
                let provenance = match kind {
                    ProductKind::Corona => Provenance::Corona {
                        base: g1.graph,
                        fiber: g2.graph,
                    },
                    _ => Provenance::Product {
                        product: kind,
                        factors: [g1.graph, g2.graph],
                    },
                };
                let opts = ClassifyOptions {
                    budget,
                    provenance: Some(provenance),
                    ..Default::default()
                };
                let input = InputDescriptor {
                    source: format!("{}({}, {})", kind.name(), g1.input.source, g2.input.source),
                    format: None,
                };
                return emit(cli, &json(&analyze(&g, &opts, input))?);
            }
            emit(cli, &format::write_graph(*format, &g))
        }
        Command::Construct {
            kind,
            inputs,
            format,
            json: as_json,
            trace,
            analyze: report,
        } => {
            let loaded = load_inputs(inputs, sub)?;
            let graphs: Vec<Graph> = loaded.iter().map(|l| l.graph.clone()).collect();
            let (g, steps, provenance) = construct(*kind, &graphs)?;
            let descriptors: Vec<InputDescriptor> = loaded.into_iter().map(|l| l.input).collect();
            if let Some(path) = trace {
                write_file(path, &json(&steps)?)?;
            }
            if *report {
                let opts = ClassifyOptions {
                    budget,
                    provenance,
                    ..Default::default()
                };
                let input = InputDescriptor {
                    source: format!("construct {}", kind_name(*kind)),
                    format: None,
                };
                let mut doc = analyze(&g, &opts, input);
                doc.construction = Some(steps);
                return emit(cli, &json(&doc)?);
            }
            if *as_json {
                let doc = ConstructionDocument {
                    tool: ToolInfo::default(),
                    operation: kind_name(*kind).into(),
                    inputs: descriptors,
                    graph: g,
                    trace: steps,
                };
                return emit(cli, &json(&doc)?);
            }
            emit(cli, &format::write_graph(*format, &g))
        }
        Command::Gallery { name, list, format } => {
            if *list {
                let mut s = String::new();
                for e in constructors::gallery_entries() {
                    s.push_str(&format!("{:<14} {}\n", e.name, e.description));
                }
                return emit(cli, &s);
            }
            let name = name
                .as_deref()
                .ok_or_else(|| CliError::Usage("a gallery name or --list is required".into()))?;
            emit(cli, &format::write_graph(*format, &constructors::gallery(name)?))
        }
        Command::Census {
            kind,
            n_max,
            seed,
            count,
            json: as_json,
        } => {
            let result = match kind {
                CensusArg::Forests => census::check_forest_dichotomy(n_max.unwrap_or(census::MAX_FOREST_ORDER))?,
                CensusArg::Cherries => census::cherry_census(n_max.unwrap_or(census::MAX_TREE_ORDER))?,
                CensusArg::Oracle => census::oracle_crosschecks(*seed, *count),
            };
            let text = if *as_json { json(&result)? } else { csv(&result)? };
            emit(cli, &text)?;
            for v in &result.violations {
                eprintln!("violation: {} ({}) on {:?}", v.check, v.detail, v.graph.edges());
            }
            match result.violations.len() {
                0 => Ok(()),
                k => Err(CliError::Violations(k)),
            }
        }
        Command::Pattern { inputs, provenance } => {
            let loaded = single(load_inputs(inputs, sub)?)?;
            let pattern = reduction::zero_pattern(&loaded.graph);
            if *provenance {
                let shape = reduction::blocks(&pattern)?.shape();
                let mut s = pattern.render_provenance();
                s.push_str(&format!("blocks: {shape:?}\n"));
                emit(cli, &s)
            } else {
                emit(cli, &pattern.render())
            }
        }
    }
}

fn kind_name(kind: ConstructArg) -> &'static str {
    match kind {
        ConstructArg::Free => "free",
        ConstructArg::Tensor => "tensor",
        ConstructArg::Wreath => "wreath",
        ConstructArg::Cone => "cone",
        ConstructArg::CoronaK1 => "corona-k1",
    }
}

fn construct(
    kind: ConstructArg,
    graphs: &[Graph],
) -> Result<(Graph, ConstructionTrace, Option<Provenance>), CliError> {
    let unary = |op: Operation| -> Result<_, CliError> {
        let [g] = graphs else {
            return Err(CliError::Usage(format!("`{}` takes exactly one graph", op.name())));
        };
        let h = op.apply_unary(g).expect("cone and corona_k1 are unary");
        let trace = ConstructionTrace {
            input_orders: vec![g.n()],
            steps: vec![constructors::TraceStep {
                operation: op,
                operands: vec![0],
                operand_orders: vec![g.n()],
                result: 1,
                result_order: h.n(),
                anchor: op.anchor().into(),
                guarantee: op.preserves_quantum_group(g),
            }],
            outputs: vec![1],
            output_orders: vec![h.n()],
            notes: Vec::new(),
        };
        let provenance = Provenance::Construction {
            step: op,
            input: g.clone(),
        };
        Ok((h, trace, Some(provenance)))
    };
    match kind {
        ConstructArg::Free => {
            let (g, t) = constructors::build_free(graphs)?;
            Ok((g, t, None))
        }
        ConstructArg::Tensor => {
            let (g, t) = constructors::build_tensor(graphs)?;
            Ok((g, t, None))
        }
        ConstructArg::Wreath => {
            let [g1, g2] = graphs else {
                return Err(CliError::Usage("`wreath` takes exactly two graphs".into()));
            };
            let (g, t) = constructors::build_wreath(g1, g2)?;
            let regs = t.replay_registers(&[g1.clone(), g2.clone()])?;
            let provenance = t.steps.last().map(|step| Provenance::Corona {
                base: regs[step.operands[0]].clone(),
                fiber: regs[step.operands[1]].clone(),
            });
            Ok((g, t, provenance))
        }
        ConstructArg::Cone => unary(Operation::Cone),
        ConstructArg::CoronaK1 => unary(Operation::CoronaK1),
    }
}

fn analyze(g: &Graph, opts: &ClassifyOptions, input: InputDescriptor) -> ReportDocument {
    let report = classifier::classify_with_complement_opts(g, opts);
    ReportDocument::new(report, g.clone(), input)
}

fn load_inputs(inputs: &Inputs, m: &ArgMatches) -> Result<Vec<Loaded>, CliError> {
    let mut ordered: Vec<(usize, Loaded)> = Vec::new();
    let positions = |id: &str| -> Vec<usize> { m.indices_of(id).map(|i| i.collect()).unwrap_or_default() };
    for (path, idx) in inputs.files.iter().zip(positions("files")) {
        ordered.push((idx, load_file(path, inputs.input_format)?));
    }
    for (name, idx) in inputs.gallery.iter().zip(positions("gallery")) {
        let graph = constructors::gallery(name)?;
        let input = InputDescriptor {
            source: format!("gallery:{name}"),
            format: None,
        };
        ordered.push((idx, Loaded { graph, input }));
    }
    for (text, idx) in inputs.edges.iter().zip(positions("edges")) {
        let graph = format::parse_inline_edges(text)?;
        let input = InputDescriptor {
            source: "inline".into(),
            format: Some(Format::Edges.name().into()),
        };
        ordered.push((idx, Loaded { graph, input }));
    }
    ordered.sort_by_key(|(i, _)| *i);
    Ok(ordered.into_iter().map(|(_, l)| l).collect())
}

fn load_file(path: &PathBuf, forced: Option<Format>) -> Result<Loaded, CliError> {
    let (text, source) = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| CliError::Io {
                path: "stdin".into(),
                source,
            })?;
        (s, "stdin".to_string())
    } else {
        let s = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        (s, path.display().to_string())
    };
    let fmt = forced.unwrap_or_else(|| Format::detect(path));
    let graph = format::parse_graph(fmt, &text)?;
    Ok(Loaded {
        graph,
        input: InputDescriptor {
            source,
            format: Some(fmt.name().into()),
        },
    })
}

fn single(mut loaded: Vec<Loaded>) -> Result<Loaded, CliError> {
    match loaded.len() {
        1 => Ok(loaded.remove(0)),
        k => Err(CliError::Usage(format!("expected one input graph, got {k}"))),
    }
}

fn pair(loaded: Vec<Loaded>) -> Result<[Loaded; 2], CliError> {
    let k = loaded.len();
    loaded
        .try_into()
        .map_err(|_| CliError::Usage(format!("expected two input graphs, got {k}")))
}

fn json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv(result: &CensusResult) -> Result<String, CliError> {
    let mut buf = Vec::new();
    result.write_csv(&mut buf).map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(buf).map_err(|e| CliError::Output(e.to_string()))
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => write_file(path, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "stdout".into(),
                    source,
                })
        }
    }
}
