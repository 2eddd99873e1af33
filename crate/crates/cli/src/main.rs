//! Command-line front end for the dicolor library.
//!
//! Instances are JSON objects with optional `digraph`, `graph`, `tree`,
//! `path`, `cycle` and `order` fields; `-` reads from standard input.
//! Exit codes: 0 success, 1 property violation or counterexample, 2 invalid input.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use dicolor::coloring::gallai_roy_coloring;
use dicolor::exact::{chromatic_number_exact, find_hamiltonian_dicycle, find_hamiltonian_dipath};
use dicolor::harness::{
    gen_ham_dicycle_digraph, gen_ham_dipath_digraph, gen_no_secant_graph, gen_outtree_digraph, gen_star_tree_instance,
    gen_subdivision_free, gen_tournament, run_bound_experiment, scan_conjecture, seeded, ExperimentConfig, ScanConfig,
    Theorem, TreeShape,
};
use dicolor::secancy::{color_no_secant, VertexOrdering};
use dicolor::star::{
    check_flattening, color_normal_nosecant_general, color_star0, color_star1_with, color_whip, flatten_to_star_like,
    four_color, GeneralOutcome, Star1Mode,
};
use dicolor::structural::{
    color_hamcycle_b1free, color_hamcycle_bispindlefree, color_hamdipath_c2free, color_outtree_c2free,
    color_pathcover_c2free, ColorOrCertificate,
};
use dicolor::subdivision::{check_certificate, detect, Detection, PatternSpec, SearchLimits, SubdivisionCertificate};
use dicolor::tournament::build_cycle_subdivision;
use dicolor::tree::{saturate, RootedTree};
use dicolor::{is_proper, underlying_graph, Coloring, Digraph, Error, Graph};

#[derive(Parser)]
#[command(name = "dicolor", version, about = "Color digraphs or exhibit forbidden cycle subdivisions")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest instance handled by exhaustive search.
    #[arg(long, global = true)]
    limit: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance.
    Gen(GenArgs),
    /// Search an instance for a subdivision of a pattern.
    Detect {
        instance: String,
        /// two-blocks:K1,K2, bispindle:K1,K2,K3 or multi-block:K1,...,Kt (tournaments only).
        #[arg(long)]
        pattern: PatternSpec,
        /// Search-node budget; allows instances above the limit.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run a colorer on an instance.
    Color {
        instance: String,
        #[arg(long, value_enum)]
        method: Method,
        /// Comma-separated parameters, e.g. 3,2.
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
    },
    /// Exact chromatic number of the underlying graph.
    Chi { instance: String },
    /// Add every tree-order pair that creates no secant pair.
    Saturate { instance: String },
    /// Embed a saturated instance into one with a star-like tree.
    Flatten { instance: String },
    /// Check a coloring, certificate or colorer result against an instance.
    Verify {
        instance: String,
        artifact: String,
        /// Pattern for a bare certificate.
        #[arg(long)]
        pattern: Option<PatternSpec>,
    },
    /// Randomized experiments.
    #[command(subcommand)]
    Scan(ScanCommand),
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long, default_value_t = 10)]
    n: usize,
    /// Probability of each extra arc.
    #[arg(long, default_value_t = 0.1)]
    density: f64,
    /// Tree shape: random, path, whip or starI.
    #[arg(long, default_value = "random")]
    shape: TreeShape,
    /// Pattern to avoid, for the subdivision-free family.
    #[arg(long, default_value = "two-blocks:2,2")]
    pattern: PatternSpec,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Tournament,
    HamDipath,
    HamDicycle,
    OutTree,
    StarTree,
    NoSecant,
    SubdivisionFree,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Hamdipath,
    Pathcover,
    Hamcycle,
    B1free,
    Outtree,
    NoSecant,
    GallaiRoy,
    Whip,
    Star0,
    Star1,
    Star1Strict,
    Four,
    General,
}

#[derive(Subcommand)]
enum ScanCommand {
    /// Check a coloring bound over random instances.
    Bounds {
        /// 3k1, pathcover, 4k, 2k-1, 4k1(k2-1), no-secant-3, star0, star1,
        /// maximal-out-tree or non-dilated.
        #[arg(long)]
        theorem: Theorem,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 6)]
        n_min: usize,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, default_value_t = 0.1)]
        density: f64,
        /// Parameter tuples separated by ';', e.g. "2,2;3,2".
        #[arg(long)]
        grid: Option<String>,
        /// Largest n for which the exact chromatic number is computed.
        #[arg(long, default_value_t = 12)]
        oracle_limit: usize,
    },
    /// Look for saturated star-tree instances without a 4-coloring.
    Conjecture {
        #[arg(long, default_value = "random")]
        family: TreeShape,
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Default, Serialize, Deserialize)]
struct Instance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    digraph: Option<Digraph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    graph: Option<Graph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tree: Option<RootedTree>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    path: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cycle: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<VertexOrdering>,
}

impl Instance {
    fn digraph(&self) -> Result<&Digraph, Failure> {
        self.digraph.as_ref().ok_or_else(|| Failure::invalid("instance has no digraph"))
    }

    /// The graph, or the underlying graph of the digraph.
    fn graph(&self) -> Result<Graph, Failure> {
        match (&self.graph, &self.digraph) {
            (Some(g), _) => Ok(g.clone()),
            (None, Some(d)) => Ok(underlying_graph(d)),
            (None, None) => Err(Failure::invalid("instance has no graph or digraph")),
        }
    }

    fn tree(&self) -> Result<&RootedTree, Failure> {
        self.tree.as_ref().ok_or_else(|| Failure::invalid("instance has no tree"))
    }
}

enum Failure {
    Invalid(String),
    Violation(String),
}

impl Failure {
    fn invalid(msg: impl Into<String>) -> Self {
        Failure::Invalid(msg.into())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SearchExhausted(_) | Error::Internal(_) => Failure::Violation(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Invalid(format!("malformed JSON: {e}"))
    }
}

/// Text to emit and an optional violation that sets exit code 1.
struct Output {
    body: String,
    violation: Option<String>,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, violation: None }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        emit(&cli, &out.body)?;
        Ok(out.violation)
    });
    match result {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(v)) | Err(Failure::Violation(v)) => {
            eprintln!("violation: {v}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, body: &str) -> Result<(), Failure> {
    let mut text = body.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &cli.out {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn read_text(source: &str) -> Result<String, Failure> {
    if source == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(source).map_err(|e| Failure::invalid(format!("{source}: {e}")))
    }
}

fn read_instance(source: &str) -> Result<Instance, Failure> {
    Ok(serde_json::from_str(&read_text(source)?)?)
}

fn to_json<T: Serialize>(v: &T) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn json_only(cli: &Cli, what: &str) -> Result<(), Failure> {
    match cli.format {
        Format::Json => Ok(()),
        Format::Csv => Err(Failure::invalid(format!("{what} has no CSV form"))),
    }
}

fn coloring_csv(c: &Coloring) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["vertex", "color"]).map_err(|e| Failure::invalid(e.to_string()))?;
    for (v, color) in c.colors().iter().enumerate() {
        w.serialize((v, color)).map_err(|e| Failure::invalid(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV is UTF-8"))
}

/// Renders a value, or its coloring as CSV rows.
fn render(cli: &Cli, value: &Value, coloring: Option<&Coloring>, what: &str) -> Result<String, Failure> {
    match (cli.format, coloring) {
        (Format::Json, _) => to_json(value),
        (Format::Csv, Some(c)) => coloring_csv(c),
        (Format::Csv, None) => Err(Failure::invalid(format!("{what} has no CSV form"))),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Gen(args) => {
            json_only(cli, "gen")?;
            Ok(Output::ok(to_json(&generate(args, cli.seed, cli.limit)?)?))
        }
        Command::Detect { instance, pattern, budget } => {
            json_only(cli, "detect")?;
            let inst = read_instance(instance)?;
            Ok(Output::ok(to_json(&run_detect(&inst, pattern, *budget, cli.limit)?)?))
        }
        Command::Color { instance, method, k } => run_color(cli, &read_instance(instance)?, *method, k),
        Command::Chi { instance } => {
            let g = read_instance(instance)?.graph()?;
            let (chi, coloring) = chromatic_number_exact(&g, cli.limit.unwrap_or(40))?;
            let value = json!({ "chi": chi, "coloring": coloring });
            Ok(Output::ok(render(cli, &value, Some(&coloring), "chi")?))
        }
        Command::Saturate { instance } => {
            json_only(cli, "saturate")?;
            let inst = read_instance(instance)?;
            let t = inst.tree()?.clone();
            let g = saturate(&inst.graph()?, &t)?;
            Ok(Output::ok(to_json(&Instance {
                graph: Some(g),
                tree: Some(t),
                ..Instance::default()
            })?))
        }
        Command::Flatten { instance } => {
            json_only(cli, "flatten")?;
            let inst = read_instance(instance)?;
            let (g, t) = (inst.graph()?, inst.tree()?);
            let f = flatten_to_star_like(&g, t)?;
            let violation = check_flattening(&g, t, &f).err();
            Ok(Output {
                body: to_json(&f)?,
                violation,
            })
        }
        Command::Verify { instance, artifact, pattern } => {
            json_only(cli, "verify")?;
            let inst = read_instance(instance)?;
            let artifact: Value = serde_json::from_str(&read_text(artifact)?)?;
            let verdict = verify(&inst, artifact, pattern.as_ref())?;
            let body = to_json(&json!({ "valid": verdict.is_ok(), "reason": verdict.as_ref().err() }))?;
            Ok(Output {
                body,
                violation: verdict.err(),
            })
        }
        Command::Scan(scan) => run_scan(cli, scan),
    }
}

fn generate(args: &GenArgs, seed: u64, limit: Option<usize>) -> Result<Instance, Failure> {
    let mut rng = seeded(seed);
    let n = args.n;
    let mut inst = Instance::default();
    match args.family {
        Family::Tournament => inst.digraph = Some(gen_tournament(n, &mut rng)),
        Family::HamDipath => {
            let (d, p) = gen_ham_dipath_digraph(n, args.density, &mut rng)?;
            (inst.digraph, inst.path) = (Some(d), Some(p));
        }
        Family::HamDicycle => {
            let (d, c) = gen_ham_dicycle_digraph(n, args.density, &mut rng)?;
            (inst.digraph, inst.cycle) = (Some(d), Some(c));
        }
        Family::OutTree => {
            let (d, t) = gen_outtree_digraph(n, args.shape, args.density, &mut rng)?;
            (inst.digraph, inst.tree) = (Some(d), Some(t));
        }
        Family::StarTree => {
            let (g, t) = gen_star_tree_instance(args.shape, n, &mut rng)?;
            (inst.graph, inst.tree) = (Some(g), Some(t));
        }
        Family::NoSecant => {
            let (g, l) = gen_no_secant_graph(n, &mut rng)?;
            (inst.graph, inst.order) = (Some(g), Some(l));
        }
        Family::SubdivisionFree => {
            let limits = SearchLimits::exact(limit.unwrap_or(40));
            let budget = 4 * n * n;
            match args.pattern {
                PatternSpec::TwoBlocks { .. } => {
                    let (d, p) = gen_ham_dipath_digraph(n, args.density, &mut rng)?;
                    let planted: Vec<_> = p.windows(2).map(|w| (w[0], w[1])).collect();
                    inst.digraph = Some(gen_subdivision_free(&d, &planted, &args.pattern, limits, budget, &mut rng)?);
                    inst.path = Some(p);
                }
                PatternSpec::Bispindle { .. } => {
                    let (d, c) = gen_ham_dicycle_digraph(n, args.density, &mut rng)?;
                    let planted: Vec<_> = (0..c.len()).map(|i| (c[i], c[(i + 1) % c.len()])).collect();
                    inst.digraph = Some(gen_subdivision_free(&d, &planted, &args.pattern, limits, budget, &mut rng)?);
                    inst.cycle = Some(c);
                }
                PatternSpec::MultiBlock(_) => {
                    return Err(Failure::invalid("subdivision-free generation needs a two-blocks or bispindle pattern"))
                }
            }
        }
    }
    Ok(inst)
}

fn run_detect(inst: &Instance, spec: &PatternSpec, budget: Option<u64>, limit: Option<usize>) -> Result<Value, Failure> {
    let d = inst.digraph()?;
    if let PatternSpec::MultiBlock(ks) = spec {
        let build = build_cycle_subdivision(d, ks)?;
        return Ok(json!({
            "verdict": "found",
            "spec": spec,
            "certificate": build.certificate,
            "report": build.report,
        }));
    }
    let limits = SearchLimits {
        exact_max_n: limit.unwrap_or(30),
        node_budget: budget,
    };
    Ok(match detect(d, spec, limits)? {
        Detection::Found(c) => json!({ "verdict": "found", "spec": spec, "certificate": c }),
        Detection::Absent => json!({ "verdict": "absent", "spec": spec }),
        Detection::Unknown => json!({ "verdict": "unknown", "spec": spec }),
    })
}

/// `k` padded with `defaults` beyond its length.
fn params<const N: usize>(k: &[usize], defaults: [usize; N]) -> Result<[usize; N], Failure> {
    if k.len() > N {
        return Err(Failure::invalid(format!("expected at most {N} parameters, got {}", k.len())));
    }
    let mut out = defaults;
    out[..k.len()].copy_from_slice(k);
    Ok(out)
}

fn hamiltonian_path(inst: &Instance, limit: usize) -> Result<Vec<usize>, Failure> {
    match &inst.path {
        Some(p) => Ok(p.clone()),
        None => find_hamiltonian_dipath(inst.digraph()?, limit)?
            .ok_or_else(|| Failure::invalid("digraph has no Hamiltonian dipath")),
    }
}

fn hamiltonian_cycle(inst: &Instance, limit: usize) -> Result<Vec<usize>, Failure> {
    match &inst.cycle {
        Some(c) => Ok(c.clone()),
        None => find_hamiltonian_dicycle(inst.digraph()?, limit)?
            .ok_or_else(|| Failure::invalid("digraph has no Hamiltonian dicycle")),
    }
}

/// Serializes `r` with extra top-level fields after checking its invariant.
fn dichotomy(d: &Digraph, r: &ColorOrCertificate, extra: Value) -> Result<(Value, Option<String>), Failure> {
    let mut value = serde_json::to_value(r)?;
    if let (Value::Object(map), Value::Object(more)) = (&mut value, extra) {
        map.extend(more);
    }
    Ok((value, r.check(d).err()))
}

fn plain_coloring(g: &Graph, c: &Coloring, bound: Option<usize>, extra: Value) -> Result<(Value, Option<String>), Failure> {
    let mut value = json!({ "result": "coloring", "coloring": c, "bound": bound });
    if let (Value::Object(map), Value::Object(more)) = (&mut value, extra) {
        map.extend(more);
    }
    let violation = if !is_proper(g, c)? {
        Some("coloring is not proper".to_string())
    } else {
        bound.filter(|&b| c.palette() > b).map(|b| format!("palette {} exceeds bound {b}", c.palette()))
    };
    Ok((value, violation))
}

fn run_color(cli: &Cli, inst: &Instance, method: Method, k: &[usize]) -> Result<Output, Failure> {
    let limit = cli.limit.unwrap_or(40);
    let (value, violation) = match method {
        Method::Hamdipath => {
            let [k1, k2] = params(k, [2, 2])?;
            let p = hamiltonian_path(inst, limit)?;
            let d = inst.digraph()?;
            dichotomy(d, &color_hamdipath_c2free(d, &p, k1, k2)?, json!({ "path": p }))?
        }
        Method::Pathcover => {
            let [k1, k2] = params(k, [2, 2])?;
            let d = inst.digraph()?;
            let (r, cover) = color_pathcover_c2free(d, k1, k2)?;
            dichotomy(d, &r, json!({ "cover": cover }))?
        }
        Method::Hamcycle => {
            let [k1, k2, k3] = params(k, [2, 2, 2])?;
            let c = hamiltonian_cycle(inst, limit)?;
            let d = inst.digraph()?;
            dichotomy(d, &color_hamcycle_bispindlefree(d, &c, k1, k2, k3)?, json!({ "cycle": c }))?
        }
        Method::B1free => {
            let [k1, k3] = params(k, [2, 2])?;
            let c = hamiltonian_cycle(inst, limit)?;
            let d = inst.digraph()?;
            dichotomy(d, &color_hamcycle_b1free(d, &c, k1, k3)?, json!({ "cycle": c }))?
        }
        Method::Outtree => {
            let [k1, k2] = params(k, [2, 2])?;
            let d = inst.digraph()?;
            let o = color_outtree_c2free(d, inst.tree()?, k1, k2)?;
            let extra = json!({ "rewiring": o.rewiring, "tree": o.tree, "classes": o.classes });
            dichotomy(d, &o.result, extra)?
        }
        Method::NoSecant => {
            let g = inst.graph()?;
            let l = inst.order.clone().unwrap_or_else(|| VertexOrdering::identity(g.n()));
            plain_coloring(&g, &color_no_secant(&g, &l)?, Some(3), json!({}))?
        }
        Method::GallaiRoy => {
            let d = inst.digraph()?;
            let g = underlying_graph(d);
            plain_coloring(&g, &gallai_roy_coloring(d)?, None, json!({}))?
        }
        Method::Whip | Method::Star0 | Method::Star1 | Method::Star1Strict | Method::Four => {
            let (g, t) = (inst.graph()?, inst.tree()?);
            let (c, extra) = match method {
                Method::Whip => (color_whip(&g, t)?, json!({})),
                Method::Star0 => (color_star0(&g, t)?, json!({})),
                Method::Star1 => (color_star1_with(&g, t, Star1Mode::Search)?.0, json!({})),
                Method::Star1Strict => {
                    let (c, steps) = color_star1_with(&g, t, Star1Mode::Strict)?;
                    (c, json!({ "steps": steps }))
                }
                _ => {
                    let (c, route) = four_color(&g, t)?;
                    (c, json!({ "route": route }))
                }
            };
            plain_coloring(&g, &c, Some(4), extra)?
        }
        Method::General => {
            let (g, t) = (inst.graph()?, inst.tree()?);
            match color_normal_nosecant_general(&g, t)? {
                GeneralOutcome::Colored { coloring, search_nodes } => {
                    plain_coloring(&g, &coloring, Some(4), json!({ "search_nodes": search_nodes }))?
                }
                GeneralOutcome::Counterexample(report) => {
                    let value = json!({ "result": "counterexample", "report": report });
                    (value, Some("instance has no 4-coloring".to_string()))
                }
            }
        }
    };
    let coloring: Option<Coloring> = value.get("coloring").map(|c| serde_json::from_value(c.clone())).transpose()?;
    Ok(Output {
        body: render(cli, &value, coloring.as_ref(), "a certificate")?,
        violation,
    })
}

fn verify(inst: &Instance, artifact: Value, pattern: Option<&PatternSpec>) -> Result<Result<(), String>, Failure> {
    if artifact.get("result").is_some() {
        let r: ColorOrCertificate = serde_json::from_value(artifact)?;
        return Ok(r.check(inst.digraph()?));
    }
    if artifact.get("paths").is_some() {
        let cert: SubdivisionCertificate = serde_json::from_value(artifact)?;
        let spec = pattern.ok_or_else(|| Failure::invalid("a bare certificate needs --pattern"))?;
        return Ok(check_certificate(inst.digraph()?, &cert, spec));
    }
    if artifact.get("colors").is_some() {
        let c: Coloring = serde_json::from_value(artifact)?;
        return Ok(if is_proper(&inst.graph()?, &c)? {
            Ok(())
        } else {
            Err("coloring is not proper".into())
        });
    }
    Err(Failure::invalid("artifact is not a coloring, certificate or colorer result"))
}

fn parse_grid(text: &str) -> Result<Vec<Vec<usize>>, Failure> {
    text.split(';')
        .filter(|e| !e.trim().is_empty())
        .map(|entry| {
            entry
                .split(',')
                .map(|k| k.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::invalid(format!("grid entry {entry:?}: {e}")))
        })
        .collect()
}

fn run_scan(cli: &Cli, scan: &ScanCommand) -> Result<Output, Failure> {
    match scan {
        ScanCommand::Bounds {
            theorem,
            trials,
            n_min,
            n_max,
            density,
            grid,
            oracle_limit,
        } => {
            let mut cfg = ExperimentConfig::new(*theorem, *trials, *n_min, *n_max, cli.seed);
            cfg.density = *density;
            cfg.oracle_limit = *oracle_limit;
            if let Some(limit) = cli.limit {
                cfg.exact_limit = limit;
            }
            if let Some(g) = grid {
                cfg.grid = parse_grid(g)?;
            }
            let report = run_bound_experiment(&cfg)?;
            let body = match cli.format {
                Format::Json => to_json(&report)?,
                Format::Csv => report.to_csv(),
            };
            let violation = (!report.summary.zero_violations)
                .then(|| format!("{} of {} trials violated the bound", report.summary.violations, report.summary.trials));
            Ok(Output { body, violation })
        }
        ScanCommand::Conjecture {
            family,
            n_min,
            n_max,
            trials,
        } => {
            let report = scan_conjecture(&ScanConfig {
                family: *family,
                n_min: *n_min,
                n_max: *n_max,
                trials: *trials,
                seed: cli.seed,
            })?;
            let body = match cli.format {
                Format::Json => to_json(&report)?,
                Format::Csv => report.to_csv(),
            };
            let violation = (!report.counterexamples.is_empty())
                .then(|| format!("{} instances without a 4-coloring", report.counterexamples.len()));
            Ok(Output { body, violation })
        }
    }
}
