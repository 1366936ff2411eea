use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use grr_core::autos::{auto_report, ball_colour_autos, check_global, check_triple, GlobalMode, TripleMode, TripleVerdict};
use grr_core::cayley::{build_ball, build_cayley, Graph};
use grr_core::classify::{check_condition, classify_group, Condition};
use grr_core::coverings::{check_covering, class_labels, schreier_graph, CoverMode, EdgeLabels, GraphMorphism};
use grr_core::enlarge::{
    abc_report, augment_report, cube_enlarge, grr_pipeline, property_r_enlarge, rigidify_report, EnlargeOptions, Flavor,
};
use grr_core::triangles::triangle_census;
use grr_core::{ball_elements, make_group, Budget, Element, GenSet, Group, GroupSpec};

#[derive(Parser)]
#[command(name = "grr", version, about = "Local rigidity checks and GRR constructions for Cayley graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Print the full JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Write the JSON report to a file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write a DOT rendering of the graph involved.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    /// Seed for randomized instances (cycle_pair groups).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for parallel searches
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Vertex limit for automorphism searches.
    #[arg(long, global = true)]
    budget_vertices: Option<usize>,
    /// Run enlargements below their order thresholds.
    #[arg(long, global = true)]
    best_effort: bool,
    /// Keep involutions out of added elements.
    #[arg(long, global = true)]
    no_involutions: bool,
}

#[derive(Args)]
struct GroupArg {
    /// Group specification: a JSON file, or inline JSON.
    #[arg(long)]
    group: String,
}

#[derive(Args)]
struct TArg {
    /// Explicit enlarged set T.
    #[arg(long, conflicts_with = "t_ball")]
    t: Option<String>,
    /// Take T^± = S^{<=k}.
    #[arg(long)]
    t_ball: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConditionArg {
    Star,
    Dagger,
    Ddagger,
}

#[derive(Clone, Copy, ValueEnum)]
enum TripleArg {
    Orientation,
    Colour,
    Grr,
}

#[derive(Clone, Copy, ValueEnum)]
enum GlobalArg {
    Grr,
    Drr,
    Orr,
    OrientationPair,
    ColourPair,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Cube,
    PropertyR,
    Augment,
    Rigidify,
    Abc,
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    General,
    PropertyR,
    Abc,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverArg {
    Covering,
    Radius1Iso,
    LabelCompatible,
}

#[derive(Subcommand)]
enum Command {
    /// Structural invariants; with --s and --condition, a generating-set condition.
    Classify {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, requires = "condition")]
        s: Option<String>,
        #[arg(long, value_enum, requires = "s")]
        condition: Option<ConditionArg>,
    },
    /// Ball of radius r in Cay(G,T) around the identity.
    Ball {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 1)]
        radius: usize,
    },
    /// Triangle count of every edge (1,s).
    Triangles {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        s: String,
    },
    /// Automorphisms of the radius-1 ball of Cay(G,T), or of the whole graph.
    Autos {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        s: String,
        #[command(flatten)]
        t: TArg,
        /// Only colour-preserving maps of the ball fixing the identity.
        #[arg(long, conflicts_with = "whole")]
        colour: bool,
        /// Use the whole Cayley graph, fixing the identity.
        #[arg(long)]
        whole: bool,
    },
    /// Decide whether (G,S,T) is an orientation, colour or GRR triple on the ball
    CheckTriple {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        s: String,
        #[command(flatten)]
        t: TArg,
        #[arg(long, value_enum)]
        mode: TripleArg,
    },
    /// Decide GRR/DRR/ORR and the pair properties on the whole finite graph
    CheckGlobal {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        s: String,
        #[arg(long, value_enum)]
        mode: GlobalArg,
    },
    /// Run one enlargement step and verify its postconditions
    Enlarge {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        s: String,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Augmented element (augment) or first element (abc).
        #[arg(long)]
        s0: Option<String>,
        #[arg(long)]
        gamma: Option<String>,
        /// Second element for abc.
        #[arg(long)]
        b: Option<String>,
        /// Replace central generators before looking for witnesses.
        #[arg(long)]
        preprocess_central: bool,
    },
    /// Enlarge S to a strong GRR triple and verify it locally
    Pipeline {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        s: String,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long, value_enum, default_value = "property-r")]
        flavor: FlavorArg,
    },
    /// Schreier quotient of Cay(G,S) by <H>, or a morphism file, checked as a covering.
    Cover {
        #[arg(long, required_unless_present = "morphism")]
        group: Option<String>,
        #[arg(long, requires = "group")]
        s: Option<String>,
        /// Generators of H.
        #[arg(long, default_value = "")]
        h: String,
        /// Set whose edge classes are the labels (defaults to --s).
        #[arg(long)]
        labels: Option<String>,
        /// Morphism JSON {source, target, map}.
        #[arg(long, conflicts_with = "group")]
        morphism: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "covering")]
        mode: CoverArg,
    },
}

/// A report plus the verdict that sets the exit status.
struct Outcome {
    report: Value,
    verdict: bool,
    summary: String,
    dot: Option<String>,
}

fn read_group(arg: &str, seed: Option<u64>) -> anyhow::Result<Group> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading group spec {arg}"))?
    };
    let mut spec: GroupSpec = serde_json::from_str(&text).context("malformed group spec")?;
    if let (Some(s), GroupSpec::CyclePair { seed, .. }) = (seed, &mut spec) {
        *seed = s;
    }
    Ok(make_group(&spec)?)
}

fn resolve_t(g: &Group, s: &GenSet, t: &TArg, budget: &Budget) -> anyhow::Result<GenSet> {
    match (&t.t, t.t_ball) {
        (Some(words), None) => Ok(GenSet::parse(g, words)?),
        (None, Some(k)) => Ok(GenSet::from_symmetric(g, &ball_elements(g, s, k, budget)?)?),
        (None, None) => Ok(s.clone()),
        _ => bail!("give either --t or --t-ball"),
    }
}

fn element(g: &Group, word: &Option<String>, what: &str) -> anyhow::Result<Element> {
    let w = word.as_ref().with_context(|| format!("--{what} is required here"))?;
    Ok(g.parse(w)?)
}

fn triple_json(g: &Group, s: &GenSet, t: &GenSet, v: &TripleVerdict) -> Value {
    let witness = v.witness.as_ref().map(|w| {
        json!({
            "is_inverse_map": w.is_inverse_map,
            "moved": w.moved.iter().map(|(x, y)| [g.format(x), g.format(y)]).collect::<Vec<_>>(),
            "perm": w.perm,
        })
    });
    json!({
        "group": g.label(),
        "s": s.format(g),
        "t": t.format(g),
        "t_symmetric_size": t.sym_len(),
        "mode": v.mode,
        "holds": v.holds,
        "examined": v.examined,
        "witness": witness,
    })
}

fn graph_json(graph: &Graph) -> Value {
    json!({ "n": graph.n(), "edges": graph.edges().into_iter().map(|(u, v)| [u, v]).collect::<Vec<_>>() })
}

fn parse_graph(v: &Value) -> anyhow::Result<Graph> {
    let n = v["n"].as_u64().context("graph needs n")? as usize;
    let edges: Vec<(usize, usize)> = serde_json::from_value::<Vec<[usize; 2]>>(v["edges"].clone())
        .context("graph needs edges")?
        .into_iter()
        .map(|[a, b]| (a, b))
        .collect();
    if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= n || b >= n) {
        bail!("edge ({a}, {b}) leaves the vertex range");
    }
    Ok(Graph::from_arcs(n, false, edges))
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let c = &cli.common;
    let mut budget = Budget::default();
    if let Some(v) = c.budget_vertices {
        if v == 0 {
            bail!("--budget-vertices must be positive");
        }
        budget.vertices_fixed = v;
    }
    let opts = EnlargeOptions { best_effort: c.best_effort, no_involutions: c.no_involutions, preprocess_central: false, budget };
    let out = match &cli.command {
        Command::Classify { group, s, condition } => {
            let g = read_group(&group.group, c.seed)?;
            match (s, condition) {
                (Some(words), Some(which)) => {
                    let s = GenSet::parse(&g, words)?;
                    let which = match which {
                        ConditionArg::Star => Condition::Star,
                        ConditionArg::Dagger => Condition::Dagger,
                        ConditionArg::Ddagger => Condition::Ddagger,
                    };
                    let w = check_condition(&g, &s, which, None, &budget)?;
                    Outcome { summary: format!("condition holds: {}", w.holds), verdict: w.holds, report: w.to_json(&g), dot: None }
                }
                _ => {
                    let rep = classify_group(&g, &budget)?;
                    let summary = format!(
                        "order {}, abelian {}, generalized dicyclic {}, generalized dihedral {}",
                        rep.order,
                        rep.abelian,
                        rep.generalized_dicyclic.is_some(),
                        rep.generalized_dihedral.is_some()
                    );
                    Outcome { report: rep.to_json(&g), verdict: true, summary, dot: None }
                }
            }
        }
        Command::Ball { group, t, radius } => {
            let g = read_group(&group.group, c.seed)?;
            let t = GenSet::parse(&g, t)?;
            let ball = build_ball(&g, &t, *radius, &budget)?;
            let summary = format!("{} vertices, {} edges", ball.n(), ball.graph.edge_count());
            Outcome { report: serde_json::to_value(ball.to_json(&g))?, verdict: true, summary, dot: Some(ball.to_dot(&g)) }
        }
        Command::Triangles { group, s } => {
            let g = read_group(&group.group, c.seed)?;
            let s = GenSet::parse(&g, s)?;
            let census = triangle_census(&g, &s);
            let report = json!({ "s": s.format(&g), "counts": census.named(&g), "separates": census.separates() });
            Outcome { summary: format!("separates: {}", census.separates()), verdict: true, report, dot: None }
        }
        Command::Autos { group, s, t, colour, whole } => {
            let g = read_group(&group.group, c.seed)?;
            let s = GenSet::parse(&g, s)?;
            let t = resolve_t(&g, &s, t, &budget)?;
            let (rep, lg) = if *whole {
                let lg = build_cayley(&g, &t, false, &budget)?;
                let one = lg.index_of(&g.identity()).context("identity missing")?;
                (auto_report(&lg, &g, &s, Some(one), &budget)?, lg)
            } else if *colour {
                (ball_colour_autos(&g, &t, &budget)?, build_ball(&g, &t, 1, &budget)?)
            } else {
                let lg = build_ball(&g, &t, 1, &budget)?;
                (auto_report(&lg, &g, &s, Some(0), &budget)?, lg)
            };
            let report = json!({
                "vertices": lg.vertex_names(&g),
                "count": rep.count,
                "fixed": rep.fixed,
                "automorphisms": rep.automorphisms,
                "flags": rep.flags,
            });
            Outcome { summary: format!("{} automorphisms", rep.count), verdict: true, report, dot: Some(lg.to_dot(&g)) }
        }
        Command::CheckTriple { group, s, t, mode } => {
            let g = read_group(&group.group, c.seed)?;
            let s = GenSet::parse(&g, s)?;
            let t = resolve_t(&g, &s, t, &budget)?;
            let mode = match mode {
                TripleArg::Orientation => TripleMode::Orientation,
                TripleArg::Colour => TripleMode::Colour,
                TripleArg::Grr => TripleMode::Grr,
            };
            let v = check_triple(&g, &s, &t, mode, &budget)?;
            let mut summary = format!("{:?} triple: {}", mode, v.holds);
            if let Some(w) = &v.witness {
                summary.push_str(if w.is_inverse_map { " (witness: inverse map)" } else { " (witness found)" });
            }
            let dot = build_ball(&g, &t, 1, &budget)?.to_dot(&g);
            Outcome { report: triple_json(&g, &s, &t, &v), verdict: v.holds, summary, dot: Some(dot) }
        }
        Command::CheckGlobal { group, s, mode } => {
            let g = read_group(&group.group, c.seed)?;
            let s = GenSet::parse(&g, s)?;
            let mode = match mode {
                GlobalArg::Grr => GlobalMode::Grr,
                GlobalArg::Drr => GlobalMode::Drr,
                GlobalArg::Orr => GlobalMode::Orr,
                GlobalArg::OrientationPair => GlobalMode::OrientationPair,
                GlobalArg::ColourPair => GlobalMode::ColourPair,
            };
            let v = check_global(&g, &s, mode, &budget)?;
            let mut summary = format!("{:?}: {}", mode, v.holds);
            if v.disagreement {
                summary.push_str(" (ball and global criteria disagree)");
            }
            let mut report = serde_json::to_value(&v)?;
            report["s"] = json!(s.format(&g));
            Outcome { report, verdict: v.holds, summary, dot: None }
        }
        Command::Enlarge { group, s, method, s0, gamma, b, preprocess_central } => {
            let g = read_group(&group.group, c.seed)?;
            let s = GenSet::parse(&g, s)?;
            let opts = EnlargeOptions { preprocess_central: *preprocess_central, ..opts };
            let rep = match method {
                MethodArg::Cube => cube_enlarge(&g, &s, &opts)?,
                MethodArg::PropertyR => property_r_enlarge(&g, &s, None, &opts)?,
                MethodArg::Augment => augment_report(&g, &s, &element(&g, s0, "s0")?, &element(&g, gamma, "gamma")?, &opts)?,
                MethodArg::Rigidify => rigidify_report(&g, &s, &element(&g, gamma, "gamma")?, &opts)?,
                MethodArg::Abc => abc_report(&g, &element(&g, s0, "s0")?, &element(&g, b, "b")?, &opts)?,
            };
            let summary = format!("|T^±| = {}, checks pass: {}", rep.output.sym_len(), rep.ok());
            Outcome { report: rep.to_json(&g), verdict: rep.ok(), summary, dot: None }
        }
        Command::Pipeline { group, s, gamma, flavor } => {
            let g = read_group(&group.group, c.seed)?;
            let s = GenSet::parse(&g, s)?;
            let gamma = gamma.as_ref().map(|w| g.parse(w)).transpose()?;
            let flavor = match flavor {
                FlavorArg::General => Flavor::General,
                FlavorArg::PropertyR => Flavor::PropertyR,
                FlavorArg::Abc => Flavor::Abc,
            };
            let rep = grr_pipeline(&g, &s, gamma.as_ref(), flavor, &opts)?;
            let summary = format!("GRR triple with |T^±| = {}: {}", rep.output.sym_len(), rep.ok());
            let dot = build_ball(&g, &rep.output, 1, &budget)?.to_dot(&g);
            Outcome { report: rep.to_json(&g), verdict: rep.ok(), summary, dot: Some(dot) }
        }
        Command::Cover { group, s, h, labels, morphism, mode } => {
            let (m, edge_labels, mut report) = match (group, morphism) {
                (_, Some(path)) => {
                    let v: Value = serde_json::from_str(&fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)
                        .context("malformed morphism")?;
                    let map: Vec<usize> = serde_json::from_value(v["map"].clone()).context("morphism needs map")?;
                    let m = GraphMorphism::new(parse_graph(&v["source"])?, parse_graph(&v["target"])?, map);
                    let labels: Option<EdgeLabels> = v.get("labels").map(|l| {
                        serde_json::from_value::<Vec<[usize; 3]>>(l.clone())
                            .map(|xs| xs.into_iter().map(|[a, b, k]| ((a.min(b), a.max(b)), k)).collect())
                    }).transpose().context("labels must be [u, v, label] triples")?;
                    (m, labels, json!({}))
                }
                (Some(group), None) => {
                    let g = read_group(group, c.seed)?;
                    let s = GenSet::parse(&g, s.as_deref().context("--s is required with --group")?)?;
                    let hs: Vec<Element> = h.split(',').map(str::trim).filter(|w| !w.is_empty()).map(|w| g.parse(w)).collect::<Result<_, _>>()?;
                    let q = schreier_graph(&g, &s, &hs, &budget)?;
                    let lab = match labels {
                        Some(words) => GenSet::parse(&g, words)?,
                        None => s.clone(),
                    };
                    let edge_labels = class_labels(&g, &q.cayley, &lab);
                    (q.morphism.clone(), Some(edge_labels), q.to_json(&g))
                }
                (None, None) => bail!("give --group or --morphism"),
            };
            let mode = match mode {
                CoverArg::Covering => CoverMode::Covering,
                CoverArg::Radius1Iso => CoverMode::Radius1Iso,
                CoverArg::LabelCompatible => CoverMode::LabelCompatible(edge_labels.context("label-compatible mode needs labels")?),
            };
            let v = check_covering(&m, &mode)?;
            report["verdict"] = serde_json::to_value(&v)?;
            if report.get("morphism").is_none() {
                report["morphism"] = json!({ "source": graph_json(&m.source), "target": graph_json(&m.target), "map": m.map });
            }
            Outcome { summary: format!("{}: {}", v.mode, v.holds), verdict: v.holds, report, dot: None }
        }
    };
    Ok(out)
}

fn write(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.common.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = run(&cli).and_then(|o| {
        let text = serde_json::to_string_pretty(&o.report)? + "\n";
        if let Some(p) = &cli.common.out {
            write(p, &text)?;
        }
        if let (Some(p), Some(dot)) = (&cli.common.dot, &o.dot) {
            write(p, dot)?;
        }
        if cli.common.json {
            print!("{text}");
        } else {
            println!("{}", o.summary);
        }
        Ok(o.verdict)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
