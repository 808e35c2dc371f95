use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use meg_core::gen;
use meg_core::reduction::default_copies;
use meg_core::*;

#[derive(Parser)]
#[command(name = "meg", version, about = "Monitoring edge-geodetic sets and the Set Cover reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Operations on a graph in edge-list format.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Operations on a Set Cover instance.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Build the gadget graph or extract covers from one of its MEG-sets.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Run the cover -> graph -> MEG-set -> cover pipeline.
    #[command(subcommand)]
    Pipeline(PipelineCmd),
    /// Seeded random instance generators.
    #[command(subcommand)]
    Gen(GenCmd),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Method {
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    greedy: bool,
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Compute a MEG-set.
    Solve {
        graph: PathBuf,
        #[command(flatten)]
        method: Method,
        /// Give up when no MEG-set of at most this size exists (exact only).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a MEG-set file; exit code 1 when invalid.
    Verify {
        graph: PathBuf,
        #[arg(long)]
        meg: PathBuf,
        /// Print a monitoring pair for every monitored edge.
        #[arg(long)]
        witnesses: bool,
    },
    /// List the edges monitored by one pair.
    Monitor {
        graph: PathBuf,
        #[arg(long, value_parser = parse_pair)]
        pair: (Vertex, Vertex),
        /// Re-evaluate every edge with the edge-deletion test and compare.
        #[arg(long)]
        cross_check: bool,
    },
    /// Shrink a MEG-set to a minimal one.
    Minimalize {
        graph: PathBuf,
        #[arg(long)]
        meg: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the graph in DOT format.
    Dot { graph: PathBuf },
}

#[derive(Subcommand)]
enum CoverCmd {
    /// Print the chosen set indices (0-based).
    Solve {
        instance: PathBuf,
        #[command(flatten)]
        method: Method,
    },
    /// Apply the kernelization rules.
    Normalize {
        instance: PathBuf,
        /// Write the residual instance here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Print the gadget graph as an edge list.
    Build {
        instance: PathBuf,
        #[arg(short = 'k')]
        k: Option<usize>,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        layout: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Turn a MEG-set of the gadget graph into set covers.
    Extract {
        instance: PathBuf,
        #[arg(long)]
        meg: PathBuf,
        #[arg(short = 'k')]
        k: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverKind {
    Exact,
    Greedy,
}

#[derive(Subcommand)]
enum PipelineCmd {
    Run {
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "greedy")]
        solver: SolverKind,
        #[arg(short = 'k')]
        k: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
        /// Kernelize first and reduce only the residual instance.
        #[arg(long)]
        normalize: bool,
        /// Emit JSON instead of key=value lines.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Gnp,
}

#[derive(Subcommand)]
enum GenCmd {
    /// Connected G(n, p) graph (redrawn until connected).
    Graph {
        #[arg(long, value_enum, default_value = "gnp")]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Random coverable instance.
    Cover {
        #[arg(long)]
        eta: usize,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        seed: u64,
        /// Only emit instances with distinct sets, every set of size >= 2 and
        /// every item in >= 2 sets.
        #[arg(long)]
        normalized: bool,
    },
}

fn parse_pair(s: &str) -> Result<(Vertex, Vertex), String> {
    let (a, b) = s.split_once(',').ok_or("expected X,Y")?;
    let parse = |t: &str| t.trim().parse::<Vertex>().map_err(|e| format!("`{t}`: {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    Graph::parse_edge_list(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_instance(path: &Path) -> Result<SetCoverInstance> {
    SetCoverInstance::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_meg(path: &Path) -> Result<MegSet> {
    MegSet::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn warn_unnormalized(inst: &SetCoverInstance) {
    if !inst.is_normalized() {
        eprintln!("warning: instance is not normalized; the reduction guarantees may not apply");
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Graph(cmd) => graph(cmd),
        Command::Cover(cmd) => cover(cmd),
        Command::Reduce(cmd) => reduce(cmd),
        Command::Pipeline(PipelineCmd::Run { instance, solver, k, budget, normalize, json }) => {
            let inst = read_instance(&instance)?;
            warn_unnormalized(&inst);
            let config = PipelineConfig {
                k,
                solver: match solver {
                    SolverKind::Exact => MegSolver::Exact { budget },
                    SolverKind::Greedy => MegSolver::Greedy,
                },
                normalize_first: normalize,
                ..PipelineConfig::default()
            };
            let report = pipeline(&inst, &config)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", report.to_text());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen(GenCmd::Graph { model: Model::Gnp, n, p, seed }) => {
            if !(0.0..=1.0).contains(&p) {
                bail!("p must lie in [0, 1]");
            }
            if n >= 2 && p == 0.0 {
                bail!("G({n}, 0) is never connected");
            }
            let mut rng = gen::rng(seed);
            let (g, _) = gen::connected_gnp(n, p, 1_000_000, &mut rng)
                .context("no connected sample after 1000000 draws")?;
            print!("# gnp n={n} p={p} seed={seed}\n{}", g.to_edge_list());
            Ok(ExitCode::SUCCESS)
        }
        Command::Gen(GenCmd::Cover { eta, h, seed, normalized }) => {
            if h == 0 && eta > 0 {
                bail!("items need at least one set");
            }
            let mut rng = gen::rng(seed);
            let inst = if normalized {
                gen::random_normalized_instance(eta, h, 1_000_000, &mut rng)
                    .with_context(|| format!("no normalized instance with eta={eta}, h={h} found"))?
            } else {
                gen::random_cover_instance(eta, h, &mut rng)
            };
            print!("# eta={eta} h={h} seed={seed}\n{}", inst.to_text());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn graph(cmd: GraphCmd) -> Result<ExitCode> {
    match cmd {
        GraphCmd::Solve { graph, method, budget, out } => {
            let g = read_graph(&graph)?;
            let m = if method.exact {
                match exact_min_meg(&g, budget)? {
                    Some(m) => m,
                    None => bail!("no MEG-set of size <= {} exists", budget.unwrap_or(0)),
                }
            } else {
                greedy_meg(&g)?
            };
            emit(out.as_deref(), &format!("{m}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        GraphCmd::Verify { graph, meg, witnesses } => {
            let g = read_graph(&graph)?;
            let m = read_meg(&meg)?;
            let verdict = verify_meg_set(&g, &m)?;
            print!("{verdict}");
            if witnesses {
                for &e in g.edges() {
                    if let Some(w) = witness_for_edge(&g, &m, e)? {
                        println!("witness {e} by {} {}", w.x, w.y);
                    }
                }
            }
            Ok(if verdict.is_valid() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        GraphCmd::Monitor { graph, pair: (x, y), cross_check } => {
            let g = read_graph(&graph)?;
            let edges = monitored_edges_of_pair(&g, x, y)?;
            for e in &edges {
                println!("{e}");
            }
            if cross_check {
                let mut disagreements = 0;
                for &e in g.edges() {
                    if pair_monitors_edge_oracle(&g, x, y, e)? != edges.contains(&e) {
                        eprintln!("disagreement on edge {e}");
                        disagreements += 1;
                    }
                }
                if disagreements > 0 {
                    bail!("{disagreements} edge(s) disagree with the edge-deletion test");
                }
                eprintln!("cross-check: {} edges agree", g.edge_count());
            }
            Ok(ExitCode::SUCCESS)
        }
        GraphCmd::Minimalize { graph, meg, out } => {
            let g = read_graph(&graph)?;
            let m = minimalize(&g, &read_meg(&meg)?)?;
            emit(out.as_deref(), &format!("{m}\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        GraphCmd::Dot { graph } => {
            print!("{}", read_graph(&graph)?.to_dot(None));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn cover(cmd: CoverCmd) -> Result<ExitCode> {
    match cmd {
        CoverCmd::Solve { instance, method } => {
            let inst = read_instance(&instance)?;
            let chosen = if method.exact { exact_min_cover(&inst) } else { greedy_cover(&inst) };
            println!("{}", join(&chosen));
            Ok(ExitCode::SUCCESS)
        }
        CoverCmd::Normalize { instance, out } => {
            let norm = normalize(&read_instance(&instance)?);
            println!("forced={}", join(&norm.forced));
            match &norm.residual {
                None => println!("residual=none"),
                Some(r) => {
                    println!("items={}", join(&norm.item_map));
                    println!("sets={}", join(&norm.set_map));
                    match out {
                        Some(p) => emit(Some(&p), &r.to_text())?,
                        None => print!("{}", r.to_text()),
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn reduce(cmd: ReduceCmd) -> Result<ExitCode> {
    match cmd {
        ReduceCmd::Build { instance, k, dot, layout, out } => {
            let inst = read_instance(&instance)?;
            warn_unnormalized(&inst);
            let built = build_reduction(&inst, k.unwrap_or_else(|| default_copies(inst.size())))?;
            if let Some(p) = dot {
                emit(Some(&p), &built.to_dot())?;
            }
            if let Some(p) = layout {
                emit(Some(&p), &built.layout_text())?;
            }
            emit(out.as_deref(), &built.graph().to_edge_list())?;
            Ok(ExitCode::SUCCESS)
        }
        ReduceCmd::Extract { instance, meg, k } => {
            let inst = read_instance(&instance)?;
            warn_unnormalized(&inst);
            let built = build_reduction(&inst, k.unwrap_or_else(|| default_copies(inst.size())))?;
            let ex = extract_covers(&built, &read_meg(&meg)?)?;
            println!("minimal={}", ex.minimal);
            println!("meg={}", ex.meg);
            println!("meg_valid={}", ex.meg_valid);
            for (l, c) in ex.covers.iter().enumerate() {
                println!("cover l={l}: {}", join(c));
            }
            println!("best={}", join(ex.best()));
            if !ex.meg_valid {
                eprintln!("warning: the extracted vertex set is not a MEG-set");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
