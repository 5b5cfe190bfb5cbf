//! Command-line front end: every computation the library offers, driven by
//! graph files in the JSON format of [`prymograph::io`], with deterministic
//! JSON or DOT output.
//!
//! Exit codes: 0 on success, 1 for domain errors (invalid or unstable
//! graphs, violated preconditions, refused enumerations), 2 for bad input
//! files or I/O failures.

use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use prymograph::cover;
use prymograph::cycles::DEFAULT_ENUM_CAP;
use prymograph::degrees;
use prymograph::error::Error;
use prymograph::fiber;
use prymograph::graph::QuasistableModel;
use prymograph::io;
use prymograph::search::{self, SearchSpace, SpaceFilter};
use prymograph::{DualGraph, EdgeSubset, Result};

#[derive(Parser)]
#[command(
    name = "prymograph",
    version,
    about = "Multiplicity, degree, and double-cover combinatorics over stable dual graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchMode {
    /// List every graph in the space.
    Graphs,
    /// Hunt for two graphs with equal multiplicity sets but different
    /// parity-refined sets.
    Collision,
    /// Verify the two-gap classification over the space.
    Gaps,
}

#[derive(Subcommand)]
enum Command {
    /// Component structure of the square-root locus over a graph.
    Fiber {
        graph: PathBuf,
        /// Cycle-space rank limit for exhaustive enumeration.
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The parity-refined multiplicity set of a graph.
    Spin {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multidegrees on a blown-up model, with inequality certificates for
    /// every proper subcurve.
    Degrees {
        graph: PathBuf,
        /// Comma-separated edge ids to blow up (must meet every vertex an
        /// even number of times).
        #[arg(long, value_delimiter = ',')]
        sigma: Vec<String>,
        /// Twisting parameter; must be at least 10.
        #[arg(long, default_value_t = 10)]
        t: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build or enumerate admissible double covers over a blown set.
    Cover {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        sigma: Vec<String>,
        /// Monodromy file ({"split": {vertex: "split"|"connected"},
        /// "twists": {edge: bool}}). Without it, the unique valid choice is
        /// used if there is exactly one.
        #[arg(long)]
        monodromy: Option<PathBuf>,
        /// Enumerate every valid monodromy instead of building one cover.
        #[arg(long)]
        enumerate: bool,
        /// Truncate the enumerated list (0 = everything).
        #[arg(long, default_value_t = 0)]
        limit: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate a bounded space of stable graphs, or sweep it.
    Search {
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        max_edges: usize,
        #[arg(long, default_value_t = 2)]
        max_genus: u32,
        #[arg(long, default_value_t = 2)]
        min_total: u64,
        #[arg(long, default_value_t = 10)]
        max_total: u64,
        /// Keep only graphs with every valency even.
        #[arg(long)]
        even: bool,
        /// Keep only graphs with every valency at least this.
        #[arg(long)]
        min_valency: Option<u32>,
        #[arg(long, value_enum, default_value_t = SearchMode::Graphs)]
        mode: SearchMode,
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the structural facts about the multiplicity set on one graph.
    Check {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a graph in DOT, with an optional edge set dashed.
    ExportDot {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        sigma: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct SpaceJson {
    total: usize,
    graphs: Vec<io::GraphJson>,
}

#[derive(Serialize)]
struct CollisionJson {
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    first: Option<io::GraphJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    second: Option<io::GraphJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    multiplicity_exponents: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_parity_exponents: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    second_parity_exponents: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct SweepJson {
    total: usize,
    hypothesis_met: usize,
    violations: Vec<String>,
}

#[derive(Serialize)]
struct CoverListEntry {
    monodromy: io::MonodromyJson,
    cover: io::CoverJson,
}

#[derive(Serialize)]
struct CoverListJson {
    count: usize,
    covers: Vec<CoverListEntry>,
}

#[derive(Serialize)]
struct TwoGapJson {
    premise_two_gap: bool,
    conclusion_two_smooth: bool,
    implication_two_gap: bool,
    premise_three_gap: bool,
    conclusion_two_nodes_or_triangle: bool,
    implication_three_gap: bool,
}

#[derive(Serialize)]
struct CheckJson {
    first_betti: usize,
    genus: u64,
    multiplicity_exponents: Vec<usize>,
    contains_one: bool,
    max_is_two_pow_b1: bool,
    two_pow_g_iff_all_rational: bool,
    reduced_iff_compact_type: bool,
    parity_match_when_eulerian: bool,
    all_hold: bool,
    /// Per-stratum check that multiplicity exceeds 1 exactly off the empty
    /// blown set, folded to a single flag.
    reduced_flags_consistent: bool,
    /// Present only when every valency is even and at least 4.
    #[serde(skip_serializing_if = "Option::is_none")]
    two_gap: Option<TwoGapJson>,
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<()> {
    let mut owned = text.to_string();
    if !owned.ends_with('\n') {
        owned.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, owned)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{owned}");
            Ok(())
        }
    }
}

fn load(graph: &PathBuf) -> Result<DualGraph> {
    io::read_graph(graph)
}

fn subset(g: &DualGraph, names: &[String]) -> Result<EdgeSubset> {
    EdgeSubset::from_names(g, names)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Fiber { graph, cap, out } => {
            let g = load(&graph)?;
            let report = fiber::prym_fiber(&g, cap)?;
            write_out(&out, &io::to_pretty_json(&io::fiber_report_json(&g, &report))?)
        }
        Command::Spin { graph, cap, out } => {
            let g = load(&graph)?;
            let exps = fiber::spin_multiplicity_set(&g, cap)?;
            let payload = io::SpinReportJson {
                first_betti: g.betti1(),
                multiplicity_exponents: exps.iter().copied().collect(),
                multiplicity_set: fiber::l_values(&exps),
            };
            write_out(&out, &io::to_pretty_json(&payload)?)
        }
        Command::Degrees { graph, sigma, t, out } => {
            let g = load(&graph)?;
            let blown = subset(&g, &sigma)?;
            let model = QuasistableModel::new(g, blown)?;
            let md = degrees::prym_multidegree(&model, t)?;
            let certs = degrees::basic_inequality_check(&md)?;
            write_out(&out, &io::to_pretty_json(&io::degrees_json(&md, &certs))?)
        }
        Command::Cover { graph, sigma, monodromy, enumerate, limit, format, out } => {
            let g = load(&graph)?;
            let blown = subset(&g, &sigma)?;
            if enumerate {
                if format == Format::Dot {
                    return Err(Error::Parse(
                        "--format dot renders a single cover; drop --enumerate".into(),
                    ));
                }
                let mut covers = Vec::new();
                let mut count = 0usize;
                for data in
                    cover::enumerate_monodromies(&g, &blown, cover::DEFAULT_MONODROMY_BITS)?
                {
                    count += 1;
                    if limit == 0 || covers.len() < limit {
                        let cg = cover::build_cover(&g, &blown, &data)?;
                        covers.push(CoverListEntry {
                            monodromy: io::monodromy_to_json(&g, &data),
                            cover: io::cover_json(&cg),
                        });
                    }
                }
                write_out(&out, &io::to_pretty_json(&CoverListJson { count, covers })?)
            } else {
                let data = match monodromy {
                    Some(path) => {
                        let text = fs::read_to_string(&path)
                            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                        let mj: io::MonodromyJson = serde_json::from_str(&text)
                            .map_err(|e| Error::Parse(format!("monodromy JSON: {e}")))?;
                        io::monodromy_from_json(&g, &mj)?
                    }
                    None => {
                        let mut it = cover::enumerate_monodromies(
                            &g,
                            &blown,
                            cover::DEFAULT_MONODROMY_BITS,
                        )?;
                        let first = it.next().ok_or(Error::Disconnected)?;
                        if it.next().is_some() {
                            return Err(Error::SplitInvalid(
                                "several monodromy choices are valid here; pass --monodromy FILE or --enumerate"
                                    .into(),
                            ));
                        }
                        first
                    }
                };
                let cg = cover::build_cover(&g, &blown, &data)?;
                match format {
                    Format::Json => write_out(&out, &io::to_pretty_json(&io::cover_json(&cg))?),
                    Format::Dot => write_out(&out, &io::cover_dot(&cg)),
                }
            }
        }
        Command::Search {
            max_vertices,
            max_edges,
            max_genus,
            min_total,
            max_total,
            even,
            min_valency,
            mode,
            cap,
            out,
        } => {
            let mut filters = Vec::new();
            if even {
                filters.push(SpaceFilter::EvenValencies);
            }
            if let Some(k) = min_valency {
                filters.push(SpaceFilter::MinValency(k));
            }
            let space = SearchSpace {
                max_vertices,
                max_edges,
                max_genus_per_vertex: max_genus,
                min_total_genus: min_total,
                max_total_genus: max_total,
                filters,
            };
            match mode {
                SearchMode::Graphs => {
                    let graphs = search::enumerate_graphs(&space)?;
                    let payload = SpaceJson {
                        total: graphs.len(),
                        graphs: graphs.iter().map(io::GraphJson::from_graph).collect(),
                    };
                    write_out(&out, &io::to_pretty_json(&payload)?)
                }
                SearchMode::Collision => {
                    let payload = match search::find_l_collision(&space, cap)? {
                        Some(c) => CollisionJson {
                            found: true,
                            first: Some(io::GraphJson::from_graph(&c.first)),
                            second: Some(io::GraphJson::from_graph(&c.second)),
                            multiplicity_exponents: Some(
                                c.prym_exponents.iter().copied().collect(),
                            ),
                            first_parity_exponents: Some(c.first_spin.iter().copied().collect()),
                            second_parity_exponents: Some(
                                c.second_spin.iter().copied().collect(),
                            ),
                        },
                        None => CollisionJson {
                            found: false,
                            first: None,
                            second: None,
                            multiplicity_exponents: None,
                            first_parity_exponents: None,
                            second_parity_exponents: None,
                        },
                    };
                    write_out(&out, &io::to_pretty_json(&payload)?)
                }
                SearchMode::Gaps => {
                    let sweep = search::verify_gap_classification_over_space(&space, cap)?;
                    let payload = SweepJson {
                        total: sweep.total,
                        hypothesis_met: sweep.hypothesis_met,
                        violations: sweep.violations,
                    };
                    write_out(&out, &io::to_pretty_json(&payload)?)
                }
            }
        }
        Command::Check { graph, cap, out } => {
            let g = load(&graph)?;
            let laws = fiber::check_multiplicity_laws(&g, cap)?;
            let flags = fiber::check_reducedness_flags(&g, cap)?;
            let two_gap = match fiber::check_gap_classification(&g, cap) {
                Ok(r) => Some(TwoGapJson {
                    premise_two_gap: r.premise_two_gap,
                    conclusion_two_smooth: r.conclusion_two_smooth,
                    implication_two_gap: r.implication_two_gap,
                    premise_three_gap: r.premise_three_gap,
                    conclusion_two_nodes_or_triangle: r.conclusion_two_nodes_or_triangle,
                    implication_three_gap: r.implication_three_gap,
                }),
                Err(Error::HypothesisNotMet(_)) => None,
                Err(e) => return Err(e),
            };
            let payload = CheckJson {
                first_betti: laws.betti1,
                genus: laws.genus,
                multiplicity_exponents: laws.prym_exponents.iter().copied().collect(),
                contains_one: laws.contains_one,
                max_is_two_pow_b1: laws.max_is_two_pow_b1,
                two_pow_g_iff_all_rational: laws.two_pow_g_iff_all_rational,
                reduced_iff_compact_type: laws.reduced_iff_compact_type,
                parity_match_when_eulerian: laws.spin_match_when_eulerian,
                all_hold: laws.all_hold,
                reduced_flags_consistent: flags.iter().all(|&b| b),
                two_gap,
            };
            write_out(&out, &io::to_pretty_json(&payload)?)
        }
        Command::ExportDot { graph, sigma, out } => {
            let g = load(&graph)?;
            let highlight = subset(&g, &sigma)?;
            write_out(&out, &io::graph_dot(&g, &highlight))
        }
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        let code = match e {
            Error::Parse(_) | Error::Io(_) => 2,
            _ => 1,
        };
        std::process::exit(code);
    }
}
