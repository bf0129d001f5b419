//! `kft`: verify, build, recognise, audit and search k-FT(pK_c) graphs.
//!
//! Graphs come from `--input` or stdin as an edge list or graph6; reports
//! go to stdout as JSON. Exit codes: 0 holds / completed, 1 fails /
//! counterexample found, 2 usage, budget or input error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use kft_core::audit::{audit_separator, full_audit, recognize_min_1ft};
use kft_core::blocks::blocks;
use kft_core::chordal::chordality;
use kft_core::connectivity::{components, edge_connectivity, vertex_connectivity};
use kft_core::construct::{
    c2_even_k_construction, contract_neighborhood, harary, odd_cycle, star_construction, tree_of_cliques, TreeTemplate,
};
use kft_core::format::{emit_graph, parse_graph, GraphDocument, GraphFormat};
use kft_core::search::{probe_conjecture, search_minimum, Budget, ProbeOutcome, SearchOptions};
use kft_core::verify::{is_minimum_candidate, verify_ft_with, VerifyOptions};
use kft_core::{find_disjoint_cliques, Exec, FTParams, Graph, VertexSet};

#[derive(Parser)]
#[command(name = "kft", version, about = "Fault-tolerant clique-packing graphs")]
struct Cli {
    /// Read the graph from this file instead of stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Input graph format.
    #[arg(long, global = true, value_enum, default_value_t = InFormat::Auto)]
    format: InFormat,
    /// Format for emitted graphs.
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Graph6)]
    emit: OutFormat,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum InFormat {
    Auto,
    EdgeList,
    Graph6,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    EdgeList,
    Graph6,
}

impl From<OutFormat> for GraphFormat {
    fn from(f: OutFormat) -> Self {
        match f {
            OutFormat::EdgeList => GraphFormat::EdgeList,
            OutFormat::Graph6 => GraphFormat::Graph6,
        }
    }
}

#[derive(Args, Clone, Copy)]
struct Kpc {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    p: usize,
    #[arg(long)]
    c: usize,
}

impl Kpc {
    fn params(self) -> kft_core::Result<FTParams> {
        FTParams::new(self.k, self.p, self.c)
    }
}

#[derive(Args, Clone)]
struct BudgetArgs {
    #[arg(long)]
    budget_seconds: Option<f64>,
    #[arg(long)]
    budget_graphs: Option<u64>,
    /// Save completed edge counts here and resume from it.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Allow orders 11 and 12, which may not finish within the budget.
    #[arg(long)]
    allow_large: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide k-FT(pK_c) exactly.
    Verify {
        #[command(flatten)]
        kpc: Kpc,
        /// Report packings for the first N removal sets.
        #[arg(long, default_value_t = 0)]
        witnesses: usize,
    },
    /// Find p disjoint K_c.
    Pack {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        c: usize,
    },
    /// Emit a constructed graph.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Replace N[x] of a degree-(c + k - 1) vertex by a fresh K_k.
    Contract {
        #[command(flatten)]
        kpc: Kpc,
        #[arg(long)]
        vertex: usize,
    },
    /// Recognise minimum 1-FT(pK_c) graphs.
    Recognize {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        c: usize,
    },
    /// Check structural consequences of k-FT(pK_c).
    Audit {
        #[command(flatten)]
        kpc: Kpc,
        /// Audit only this size-k separator.
        #[arg(long, value_delimiter = ',')]
        separator: Option<Vec<usize>>,
    },
    /// Compare against the best known minimum edge count.
    Candidate {
        #[command(flatten)]
        kpc: Kpc,
    },
    /// Fewest edges of a k-FT(pK_c) graph on pc + k vertices.
    SearchMin {
        #[command(flatten)]
        kpc: Kpc,
        /// Highest edge count to try (default: the hub construction's count).
        #[arg(long)]
        max_edges: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Search every edge count up to the hub construction's, for k >= 2.
    Probe {
        #[command(flatten)]
        kpc: Kpc,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Degrees, connectivity, blocks and chordality.
    Props,
}

#[derive(Subcommand)]
enum Family {
    /// p disjoint K_c joined to a K_k.
    Star {
        #[command(flatten)]
        kpc: Kpc,
    },
    /// Tree of (k + c)-cliques from a template file.
    Tree {
        #[arg(long)]
        template: PathBuf,
    },
    /// The odd cycle C_{2p+1}.
    Cycle {
        #[arg(long)]
        p: usize,
    },
    /// Harary graph H_{m,n}.
    Harary {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// c = 2, even k: H_{k+1, 2p+k}.
    C2 {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
    },
}

enum Failure {
    /// The property does not hold; the report was still written.
    No,
    Usage(String),
}

impl From<kft_core::Error> for Failure {
    fn from(e: kft_core::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Run = Result<(), Failure>;

fn json<T: Serialize>(value: &T) -> Run {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(io::stdout(), "{text}").map_err(|e| Failure::Usage(e.to_string()))
}

fn verdict(holds: bool) -> Run {
    if holds {
        Ok(())
    } else {
        Err(Failure::No)
    }
}

fn read_graph(cli: &Cli) -> Result<Graph, Failure> {
    let text = match &cli.input {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
            s
        }
    };
    Ok(match cli.format {
        InFormat::Auto => GraphDocument::parse_auto(&text)?.graph,
        InFormat::EdgeList => parse_graph(&text, GraphFormat::EdgeList)?,
        InFormat::Graph6 => parse_graph(&text, GraphFormat::Graph6)?,
    })
}

fn exec(cli: &Cli) -> Exec {
    if cli.jobs == Some(1) || !cfg!(feature = "parallel") {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn search_options(cli: &Cli, b: &BudgetArgs) -> SearchOptions {
    SearchOptions {
        budget: Budget { seconds: b.budget_seconds, graphs: b.budget_graphs },
        exec: exec(cli),
        allow_large: b.allow_large,
        checkpoint: b.checkpoint.clone(),
    }
}

#[derive(Serialize)]
struct PackReport {
    found: bool,
    p: usize,
    c: usize,
    cliques: Option<Vec<VertexSet>>,
}

#[derive(Serialize)]
struct ContractReport {
    graph: String,
    format: GraphFormat,
    fresh: VertexSet,
    original: Vec<usize>,
    /// Whether fault tolerance of the result is guaranteed (k = 1).
    proven: bool,
}

#[derive(Serialize)]
struct Props {
    n: usize,
    m: usize,
    degrees: Vec<usize>,
    min_degree: Option<usize>,
    max_degree: Option<usize>,
    components: usize,
    vertex_connectivity: usize,
    edge_connectivity: usize,
    block_count: usize,
    blocks: Vec<VertexSet>,
    cutvertices: VertexSet,
    chordal: bool,
    chordality: kft_core::chordal::Chordality,
}

fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::Verify { kpc, witnesses } => {
            let g = read_graph(cli)?;
            let opts = VerifyOptions { exec: exec(cli), retain_witnesses: *witnesses };
            let v = verify_ft_with(&g, kpc.params()?, &opts)?;
            json(&v)?;
            verdict(v.holds)
        }
        Command::Pack { p, c } => {
            let g = read_graph(cli)?;
            let found = find_disjoint_cliques(&g, *p, *c)?;
            json(&PackReport { found: found.is_some(), p: *p, c: *c, cliques: found.as_ref().map(|q| q.cliques.clone()) })?;
            verdict(found.is_some())
        }
        Command::Construct { family } => {
            let g = match family {
                Family::Star { kpc } => star_construction(kpc.k, kpc.p, kpc.c)?,
                Family::Tree { template } => {
                    let text = fs::read_to_string(template)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", template.display())))?;
                    let t: TreeTemplate = text.parse()?;
                    tree_of_cliques(t.k, t.c, &t)?
                }
                Family::Cycle { p } => odd_cycle(*p)?,
                Family::Harary { m, n } => harary(*m, *n)?,
                Family::C2 { k, p } => c2_even_k_construction(*k, *p)?,
            };
            write!(io::stdout(), "{}", emit_graph(&g, cli.emit.into())).map_err(|e| Failure::Usage(e.to_string()))
        }
        Command::Contract { kpc, vertex } => {
            let g = read_graph(cli)?;
            let r = contract_neighborhood(&g, kpc.params()?, *vertex)?;
            json(&ContractReport {
                graph: emit_graph(&r.graph, cli.emit.into()),
                format: cli.emit.into(),
                fresh: r.fresh,
                original: r.original,
                proven: r.proven,
            })
        }
        Command::Recognize { p, c } => {
            let g = read_graph(cli)?;
            let r = recognize_min_1ft(&g, *p, *c);
            json(&r)?;
            verdict(r.recognized)
        }
        Command::Audit { kpc, separator } => {
            let g = read_graph(cli)?;
            let params = kpc.params()?;
            let r = match separator {
                Some(w) => audit_separator(&g, params, &w.iter().copied().collect())?,
                None => full_audit(&g, params)?,
            };
            json(&r)?;
            verdict(r.passed)
        }
        Command::Candidate { kpc } => {
            let g = read_graph(cli)?;
            let r = is_minimum_candidate(&g, kpc.params()?)?;
            json(&r)?;
            verdict(r.candidate)
        }
        Command::SearchMin { kpc, max_edges, budget } => {
            let params = kpc.params()?;
            let max = max_edges.unwrap_or(params.star_edge_count() as usize);
            let r = search_minimum(params, max, &search_options(cli, budget))?;
            json(&r)?;
            if r.exhaustive {
                Ok(())
            } else {
                Err(Failure::Usage(format!("budget exhausted ({:?}); coverage is partial", r.wall_budget_state)))
            }
        }
        Command::Probe { kpc, budget } => {
            let r = probe_conjecture(kpc.k, kpc.p, kpc.c, &search_options(cli, budget))?;
            json(&r)?;
            match &r.outcome {
                ProbeOutcome::Supported => Ok(()),
                ProbeOutcome::Refuted { .. } => Err(Failure::No),
                ProbeOutcome::Inconclusive { reason } => Err(Failure::Usage(reason.clone())),
            }
        }
        Command::Props => {
            let g = read_graph(cli)?;
            let b = blocks(&g);
            let ch = chordality(&g);
            json(&Props {
                n: g.n(),
                m: g.m(),
                degrees: g.degrees(),
                min_degree: g.min_degree(),
                max_degree: g.degrees().into_iter().max(),
                components: components(&g).len(),
                vertex_connectivity: vertex_connectivity(&g),
                edge_connectivity: edge_connectivity(&g),
                block_count: b.blocks.len(),
                blocks: b.blocks,
                cutvertices: b.cutvertices,
                chordal: ch.is_chordal(),
                chordality: ch,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.jobs {
        #[cfg(feature = "parallel")]
        Some(n) if n > 1 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(Failure::Usage(format!("thread pool: {e}"))),
        },
        Some(0) => Err(Failure::Usage("--jobs must be at least 1".into())),
        _ => run(&cli),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::No) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(io::stderr(), "kft: {msg}");
            ExitCode::from(2)
        }
    }
}
