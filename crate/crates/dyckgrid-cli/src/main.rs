//! `dyckgrid`: generators, surface calculus, checkers, transforms and
//! parameter evaluators on the command line.
//!
//! Exit codes: 0 success, 1 rejected input (error JSON on stderr), 2 search
//! budget exhausted, 64 usage error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dyckgrid::connectivity::{
    free_set, is_strongly_linked, is_well_linked, s_free_violation, strong_link_violation,
    tangle_validate, Alpha, Tangle,
};
use dyckgrid::generators::{
    crossed_grid, cylindrical_grid, dhat, dtilde, dyck_grid, dyck_wall, elementary_wall,
    hairy_wall, mixed_surface_grid, Kind, LabeledGrid, Subdivisions,
};
use dyckgrid::io::{read_dimacs, read_td, write_dimacs, write_dot, write_td, EdgeList};
use dyckgrid::minor::{bg_annotated, hadwiger, MinorModel, SearchBudget};
use dyckgrid::surfaces::{genus_class, hasse_dot, prevalent, sobs, Surface, SurfaceSet};
use dyckgrid::transforms::{
    annulus_embed, crosscaps_to_handle, half_integral_packing, handle_to_crosscaps, plan_to_dyck,
    swap_adjacent,
};
use dyckgrid::width::{
    hw_annotated, param_eval, treewidth_exact, tw_annotated, tw_prime, validate_td, ParamSpec,
    Witness,
};
use dyckgrid::{Error, Graph, VertexSet};

#[derive(Parser)]
#[command(
    name = "dyckgrid",
    version,
    about = "Surface grids, minor models and connectivity oracles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Node limit for exhaustive searches.
    #[arg(long, global = true, default_value_t = 100_000_000)]
    budget_nodes: u64,
    /// Wall-clock limit for exhaustive searches.
    #[arg(long, global = true)]
    budget_seconds: Option<f64>,
    /// Worker threads for parallel oracles.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph family.
    Generate {
        family: Family,
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        handles: usize,
        #[arg(long, default_value_t = 0)]
        crosscaps: usize,
        /// Transaction kinds in block order, e.g. `hxx`.
        #[arg(long)]
        kinds: Option<String>,
        /// Cycle length of a cylindrical grid.
        #[arg(long)]
        length: Option<usize>,
        /// Subdivisions per transaction edge.
        #[arg(long, default_value_t = 0)]
        subdivisions: usize,
        /// Hair length of a hairy wall.
        #[arg(long, default_value_t = 1)]
        hair: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Surface containment, obstructions and prevalent surfaces.
    Surfaces {
        #[command(subcommand)]
        op: SurfaceOp,
    },
    /// Validate certificates and connectivity properties.
    Check {
        #[command(subcommand)]
        op: CheckOp,
    },
    /// Build explicit minor models between surface grids.
    Transform {
        #[command(subcommand)]
        op: TransformOp,
    },
    /// Evaluate width and grid parameters.
    Params {
        #[command(subcommand)]
        op: ParamOp,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Cylindrical,
    Mixed,
    Dyck,
    Wall,
    DyckWall,
    Dtilde,
    Dhat,
    Crossed,
    HairyWall,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dimacs,
    Dot,
    Json,
    Td,
}

#[derive(Subcommand)]
enum SurfaceOp {
    /// Minimal surfaces outside a closed set.
    Sobs {
        #[arg(long)]
        set: String,
    },
    /// The surface contained in every obstruction of a closed set.
    Prevalent {
        #[arg(long)]
        set: String,
    },
    /// Whether surface `a` is contained in surface `b`.
    Contains { a: String, b: String },
    /// Hasse diagram (DOT) of all surfaces up to a genus.
    Lattice {
        #[arg(long)]
        genus: i64,
    },
    /// Canonical form of a surface.
    Normalize { surface: String },
}

#[derive(Subcommand)]
enum CheckOp {
    /// Validate a minor model stored as JSON.
    Model {
        #[arg(long)]
        file: PathBuf,
    },
    /// Validate a PACE tree decomposition against a graph.
    Td {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        td: PathBuf,
    },
    /// Exhaustive well-linkedness test.
    WellLinked {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 1)]
        q: usize,
        #[arg(long, default_value = "2/3")]
        alpha: String,
        #[arg(long, default_value_t = 50_000_000)]
        limit: usize,
    },
    /// Whether every bipartition of a set is linked.
    StronglyLinked {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Validate a tangle stored as JSON.
    Tangle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        limit: usize,
    },
    /// Compute a free set and verify it.
    FreeSet {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "2/3")]
        alpha: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1_000_000)]
        limit: usize,
    },
}

#[derive(Subcommand)]
enum TransformOp {
    /// Swap a neighbouring crosscap and handle (host order 9k).
    Swap {
        #[arg(long)]
        kinds: String,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        position: usize,
    },
    /// Trade three crosscaps for a handle and a crosscap (host order 18k).
    ToHandle {
        #[arg(long)]
        kinds: String,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        position: usize,
    },
    /// Trade a handle and a crosscap for three crosscaps (host order 18k).
    ToCrosscaps {
        #[arg(long)]
        kinds: String,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        position: usize,
    },
    /// Both annulus containments.
    Annulus {
        #[arg(long)]
        handles: usize,
        #[arg(long)]
        crosscaps: usize,
        #[arg(long)]
        order: usize,
    },
    /// Half-integral packing of x copies of order y.
    Packing {
        #[arg(long)]
        handles: usize,
        #[arg(long)]
        crosscaps: usize,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
    },
    /// Symbolic order budget for reaching a Dyck-grid.
    Plan {
        #[arg(long)]
        handles: usize,
        #[arg(long)]
        crosscaps: usize,
        #[arg(long)]
        order: usize,
    },
}

#[derive(Subcommand)]
enum ParamOp {
    /// Exact treewidth with an optimal decomposition.
    Tw {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 24)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Annotated treewidth tw(G, X).
    TwAnnotated {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Treewidth of the annotated torso.
    TwPrime {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 24)]
        cap: usize,
    },
    /// Annotated biggest grid bg(G, X).
    Bg {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Annotated Hadwiger number hw(G, X).
    Hw {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Hadwiger number.
    Hadwiger {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Largest Dyck-grid of a surface, of a genus, or of the obstructions of a set.
    Grid {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, conflicts_with_all = ["genus", "sobs"])]
        surface: Option<String>,
        #[arg(long, conflicts_with = "sobs")]
        genus: Option<i64>,
        #[arg(long)]
        sobs: Option<String>,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
    /// A check that ran to completion and failed.
    Rejected(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Out = Result<String, Failure>;

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::SelfLoop(_) => "self_loop",
        Error::DuplicateEdge(..) => "duplicate_edge",
        Error::EndpointOutOfRange { .. } => "endpoint_out_of_range",
        Error::DisconnectedPart(_) => "disconnected_part",
        Error::OverlappingParts(_) => "overlapping_parts",
        Error::InvalidParameter(_) => "invalid_parameter",
        Error::Parse { .. } => "parse",
        Error::TooLarge(_) => "too_large",
        Error::BudgetExceeded => "budget_exceeded",
        Error::Precondition(_) => "precondition",
        Error::Invalid(_) => "invalid",
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| {
        Failure::Lib(Error::Parse {
            line: e.line(),
            msg: format!("{what}: {e}"),
        })
    })
}

/// DIMACS, or JSON holding either an edge list or a generated grid.
fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = read_text(path)?;
    if !text.trim_start().starts_with('{') {
        return Ok(read_dimacs(&text)?);
    }
    let v: Value = parse_json(&text, "graph")?;
    let edges = if v.get("graph").is_some() {
        v["graph"].clone()
    } else {
        v
    };
    let list: EdgeList = serde_json::from_value(edges).map_err(|e| {
        Failure::Lib(Error::Parse {
            line: 0,
            msg: format!("graph: {e}"),
        })
    })?;
    Ok(Graph::try_from(list)?)
}

/// Comma-separated vertices; `a-b` is an inclusive range.
fn parse_set(s: &str) -> Result<VertexSet, Failure> {
    let bad = || Failure::Lib(Error::InvalidParameter(format!("bad vertex set `{s}`")));
    let mut out = VertexSet::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (
                    a.trim().parse().map_err(|_| bad())?,
                    b.trim().parse().map_err(|_| bad())?,
                );
                out.extend(a..=b);
            }
            None => {
                out.insert(part.parse().map_err(|_| bad())?);
            }
        }
    }
    Ok(out)
}

fn parse_alpha(s: &str) -> Result<Alpha, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure::Lib(Error::InvalidParameter(format!("bad ratio `{s}`"))))
}

fn parse_kinds(s: &str) -> Result<Vec<Kind>, Failure> {
    s.chars()
        .filter(|c| !c.is_whitespace() && *c != ',')
        .map(|c| match c.to_ascii_lowercase() {
            'h' => Ok(Kind::Handle),
            'x' | 'c' => Ok(Kind::Crosscap),
            _ => Err(Failure::Lib(Error::InvalidParameter(format!(
                "unknown transaction kind `{c}`"
            )))),
        })
        .collect()
}

fn parse_surfaces(s: &str) -> Result<SurfaceSet, Failure> {
    split_surfaces(s)
        .iter()
        .map(|p| p.parse::<Surface>().map_err(Failure::Lib))
        .collect()
}

/// Splits on commas outside parentheses, so `(1,0),sphere` has two items.
fn split_surfaces(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur);
    out.into_iter()
        .map(|p| p.trim().to_string())
        .filter(|p| !p.is_empty())
        .collect()
}

fn join(set: &SurfaceSet) -> String {
    set.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn emit_graph(g: &Graph, format: Format) -> Out {
    match format {
        Format::Dimacs => Ok(write_dimacs(g)),
        Format::Dot => Ok(write_dot(g)),
        Format::Json => Ok(pretty(&EdgeList::from(g))),
        Format::Td => Err(Failure::Lib(Error::InvalidParameter(
            "td output needs a tree decomposition".into(),
        ))),
    }
}

fn emit_grid(g: &LabeledGrid, format: Format) -> Out {
    match format {
        Format::Json => Ok(pretty(g)),
        f => emit_graph(&g.graph, f),
    }
}

#[allow(clippy::too_many_arguments)]
fn generate(
    family: Family,
    order: usize,
    h: usize,
    c: usize,
    kinds: Option<&str>,
    length: Option<usize>,
    subdivisions: usize,
    hair: usize,
    format: Format,
) -> Out {
    match family {
        Family::Cylindrical => emit_grid(
            &cylindrical_grid(order, length.unwrap_or(4 * order))?,
            format,
        ),
        Family::Mixed => {
            let kinds = parse_kinds(kinds.unwrap_or(""))?;
            let sub = if subdivisions == 0 {
                Subdivisions::None
            } else {
                Subdivisions::Uniform(subdivisions)
            };
            emit_grid(&mixed_surface_grid(order, &kinds, &sub)?, format)
        }
        Family::Dyck => emit_grid(&dyck_grid(h as isize, c, order)?, format),
        Family::Dtilde => emit_grid(&dtilde(h, c, order)?, format),
        Family::Dhat => emit_grid(&dhat(h, c, order)?, format),
        Family::Wall => emit_graph(&elementary_wall(order)?.graph, format),
        Family::DyckWall => emit_graph(&dyck_wall(h, c, order)?, format),
        Family::Crossed => emit_graph(&crossed_grid(order)?, format),
        Family::HairyWall => {
            let w = hairy_wall(order, hair)?;
            match format {
                Format::Json => Ok(pretty(
                    &json!({ "graph": EdgeList::from(&w.graph), "s": w.s, "x": w.x }),
                )),
                f => emit_graph(&w.graph, f),
            }
        }
    }
}

fn surfaces(op: SurfaceOp) -> Out {
    match op {
        SurfaceOp::Sobs { set } => Ok(join(&sobs(&parse_surfaces(&set)?)?)),
        SurfaceOp::Prevalent { set } => Ok(prevalent(&parse_surfaces(&set)?)?.to_string()),
        SurfaceOp::Contains { a, b } => {
            Ok(a.parse::<Surface>()?.contained_in(b.parse()?).to_string())
        }
        SurfaceOp::Lattice { genus } => {
            genus_class(genus)?;
            Ok(hasse_dot(genus))
        }
        SurfaceOp::Normalize { surface } => Ok(surface.parse::<Surface>()?.to_string()),
    }
}

fn check(op: CheckOp, budget_limit: u64) -> Out {
    match op {
        CheckOp::Model { file } => {
            let model: MinorModel = parse_json(&read_text(&file)?, "model")?;
            let v = model.violations();
            if v.is_empty() {
                Ok(pretty(&json!({ "valid": true })))
            } else {
                Err(Failure::Rejected(
                    json!({ "error": "invalid_model", "violations": v }),
                ))
            }
        }
        CheckOp::Td { graph, td } => {
            let g = read_graph(&graph)?;
            let (td, _) = read_td(&read_text(&td)?)?;
            let v = validate_td(&g, &td);
            if v.is_empty() {
                Ok(pretty(&json!({ "valid": true, "width": td.width() })))
            } else {
                Err(Failure::Rejected(
                    json!({ "error": "invalid_decomposition", "violations": v }),
                ))
            }
        }
        CheckOp::WellLinked {
            graph,
            set,
            q,
            alpha,
            limit,
        } => {
            let g = read_graph(&graph)?;
            let cert = is_well_linked(
                &g,
                &parse_set(&set)?,
                q,
                parse_alpha(&alpha)?,
                limit.min(usize::try_from(budget_limit).unwrap_or(usize::MAX)),
            )?;
            if cert.well_linked() {
                Ok(pretty(&cert))
            } else {
                Err(Failure::Rejected(
                    json!({ "error": "not_well_linked", "certificate": cert }),
                ))
            }
        }
        CheckOp::StronglyLinked { graph, set } => {
            let g = read_graph(&graph)?;
            let s = parse_set(&set)?;
            if is_strongly_linked(&g, &s)? {
                Ok(pretty(&json!({ "strongly_linked": true })))
            } else {
                let v = strong_link_violation(&g, &s, None)?;
                Err(Failure::Rejected(
                    json!({ "error": "not_strongly_linked", "violation": v }),
                ))
            }
        }
        CheckOp::Tangle { graph, file, limit } => {
            let g = read_graph(&graph)?;
            let t: Tangle = parse_json(&read_text(&file)?, "tangle")?;
            let v = tangle_validate(&g, &t, limit)?;
            if v.is_empty() {
                Ok(pretty(
                    &json!({ "valid": true, "order": t.order, "separations": t.oriented.len() }),
                ))
            } else {
                Err(Failure::Rejected(
                    json!({ "error": "invalid_tangle", "violations": v }),
                ))
            }
        }
        CheckOp::FreeSet {
            graph,
            set,
            alpha,
            k,
            limit,
        } => {
            let g = read_graph(&graph)?;
            let s = parse_set(&set)?;
            let alpha = parse_alpha(&alpha)?;
            let f = free_set(&g, &s, alpha, k)?;
            let violation = s_free_violation(&g, &f, &s, alpha, limit)?;
            let strongly = is_strongly_linked(&g, &f)?;
            let report = json!({ "free_set": f, "s_free": violation.is_none(), "strongly_linked": strongly, "violation": violation });
            if violation.is_none() && strongly {
                Ok(pretty(&report))
            } else {
                Err(Failure::Rejected(report))
            }
        }
    }
}

fn transform(op: TransformOp) -> Out {
    Ok(match op {
        TransformOp::Swap {
            kinds,
            order,
            position,
        } => pretty(&swap_adjacent(&parse_kinds(&kinds)?, order, position)?),
        TransformOp::ToHandle {
            kinds,
            order,
            position,
        } => pretty(&crosscaps_to_handle(
            &parse_kinds(&kinds)?,
            order,
            position,
        )?),
        TransformOp::ToCrosscaps {
            kinds,
            order,
            position,
        } => pretty(&handle_to_crosscaps(
            &parse_kinds(&kinds)?,
            order,
            position,
        )?),
        TransformOp::Annulus {
            handles,
            crosscaps,
            order,
        } => {
            let (contract, regrow) = annulus_embed(handles, crosscaps, order)?;
            pretty(&json!({ "contract": contract, "regrow": regrow }))
        }
        TransformOp::Packing {
            handles,
            crosscaps,
            x,
            y,
        } => pretty(&half_integral_packing(handles, crosscaps, x, y)?),
        TransformOp::Plan {
            handles,
            crosscaps,
            order,
        } => pretty(&plan_to_dyck(handles, crosscaps, order)?),
    })
}

fn params(op: ParamOp, budget: SearchBudget) -> Out {
    match op {
        ParamOp::Tw { graph, cap, format } => {
            let g = read_graph(&graph)?;
            let v = treewidth_exact(&g, cap)?;
            match (format, &v.witness) {
                (Format::Td, Witness::Decomposition(td)) => Ok(write_td(td, g.n())),
                (Format::Json, _) => Ok(pretty(&v)),
                _ => Err(Failure::Lib(Error::InvalidParameter(
                    "treewidth prints json or td".into(),
                ))),
            }
        }
        ParamOp::TwAnnotated { graph, set } => Ok(pretty(&tw_annotated(
            &read_graph(&graph)?,
            &parse_set(&set)?,
            budget,
        )?)),
        ParamOp::TwPrime { graph, set, cap } => Ok(pretty(&tw_prime(
            &read_graph(&graph)?,
            &parse_set(&set)?,
            cap,
        )?)),
        ParamOp::Hw { graph, set } => Ok(pretty(&hw_annotated(
            &read_graph(&graph)?,
            &parse_set(&set)?,
            budget,
        )?)),
        ParamOp::Bg { graph, set } => {
            let value = bg_annotated(&read_graph(&graph)?, &parse_set(&set)?, budget)?;
            Ok(pretty(&json!({ "param": "bg", "value": value })))
        }
        ParamOp::Hadwiger { graph } => {
            let value = hadwiger(&read_graph(&graph)?, budget)?;
            Ok(pretty(&json!({ "param": "hadwiger", "value": value })))
        }
        ParamOp::Grid {
            graph,
            surface,
            genus,
            sobs,
        } => {
            let param = match (surface, genus, sobs) {
                (Some(s), None, None) => ParamSpec::BgSurface(s.parse()?),
                (None, Some(g), None) => ParamSpec::GBg(g),
                (None, None, Some(set)) => ParamSpec::SobsBg(parse_surfaces(&set)?),
                _ => {
                    return Err(Failure::Lib(Error::InvalidParameter(
                        "give one of --surface, --genus, --sobs".into(),
                    )))
                }
            };
            let value = param_eval(&read_graph(&graph)?, &param, budget)?;
            Ok(pretty(&json!({ "param": "grid", "value": value })))
        }
    }
}

fn run(cli: Cli) -> Out {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Io(format!("thread pool: {e}")))?;
    }
    let budget = SearchBudget {
        node_limit: cli.budget_nodes,
        time_limit: cli.budget_seconds.map(Duration::from_secs_f64),
        ..SearchBudget::unlimited()
    };
    match cli.command {
        Command::Generate {
            family,
            order,
            handles,
            crosscaps,
            kinds,
            length,
            subdivisions,
            hair,
            format,
        } => generate(
            family,
            order,
            handles,
            crosscaps,
            kinds.as_deref(),
            length,
            subdivisions,
            hair,
            format,
        ),
        Command::Surfaces { op } => surfaces(op),
        Command::Check { op } => check(op, cli.budget_nodes),
        Command::Transform { op } => transform(op),
        Command::Params { op } => params(op, budget),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let output = cli.output.clone();
    match run(cli) {
        Ok(mut text) => {
            if !text.ends_with('\n') {
                text.push('\n');
            }
            match output {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        eprintln!(
                            "{}",
                            json!({ "error": "io", "message": format!("{}: {e}", path.display()) })
                        );
                        return ExitCode::from(1);
                    }
                }
                None => {
                    // a closed pipe downstream is not our failure
                    let _ = io::stdout().lock().write_all(text.as_bytes());
                }
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Lib(Error::BudgetExceeded)) => {
            eprintln!(
                "{}",
                json!({ "error": "budget_exceeded", "message": Error::BudgetExceeded.to_string() })
            );
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!(
                "{}",
                json!({ "error": error_kind(&e), "message": e.to_string() })
            );
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("{}", json!({ "error": "io", "message": msg }));
            ExitCode::from(1)
        }
        Err(Failure::Rejected(v)) => {
            eprintln!("{v}");
            ExitCode::from(1)
        }
    }
}
