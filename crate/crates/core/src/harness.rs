//! Seeded instance generators, bound experiments and the conjecture scan.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`; trial `i` of an experiment uses stream `i` of the
//! experiment seed, so reports are reproducible across platforms.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::digraph::{is_proper, underlying_graph, Coloring, Digraph, Graph};
use crate::error::{invalid, precondition, Error, Result};
use crate::exact::{chromatic_number_exact, independence_number};
use crate::secancy::{color_no_secant, degeneracy, VertexOrdering};
use crate::star::{color_normal_nosecant_general, color_star0, color_star1, CounterexampleReport, GeneralOutcome};
use crate::structural::{
    color_hamcycle_b1free, color_hamcycle_bispindlefree, color_hamdipath_c2free, color_outtree_c2free,
    color_pathcover_c2free, ColorOrCertificate,
};
use crate::subdivision::{check_certificate, detect, Detection, PatternSpec, SearchLimits};
use crate::tournament::build_cycle_subdivision_shuffled;
use crate::tree::{classify_star, is_maximal_out_tree, make_maximal_out_tree, saturate_shuffled, RootedTree};

/// Report schema version.
pub const FORMAT: u32 = 1;

/// The generator used everywhere in the harness.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// First 16 hex digits of the SHA-256 of the value's JSON encoding.
pub fn instance_hash<T: Serialize>(value: &T) -> String {
    let json = serde_json::to_vec(value).expect("instances serialize");
    hex::encode(Sha256::digest(&json))[..16].to_string()
}

/// Random tournament: one arc per pair, each orientation with probability 1/2.
pub fn gen_tournament<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Digraph {
    let arcs = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .map(|(u, v)| if rng.gen_bool(0.5) { (u, v) } else { (v, u) })
        .collect::<Vec<_>>();
    Digraph::new(n, arcs).expect("a tournament is an orientation")
}

/// Random orientations of non-adjacent pairs, each kept with probability `density`.
fn add_random_arcs<R: Rng + ?Sized>(n: usize, mut arcs: Vec<(usize, usize)>, density: f64, rng: &mut R) -> Digraph {
    let mut adjacent = vec![vec![false; n]; n];
    for &(u, v) in &arcs {
        adjacent[u][v] = true;
        adjacent[v][u] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if !adjacent[u][v] && rng.gen_bool(density) {
                arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
    }
    Digraph::new(n, arcs).expect("random arcs form an orientation")
}

fn check_density(density: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&density) {
        return Err(invalid(format!("density {density} is outside [0, 1]")));
    }
    Ok(())
}

/// Digraph with a planted Hamiltonian dipath (returned) plus random arcs.
pub fn gen_ham_dipath_digraph<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Result<(Digraph, Vec<usize>)> {
    check_density(density)?;
    let mut path: Vec<usize> = (0..n).collect();
    path.shuffle(rng);
    let arcs = path.windows(2).map(|w| (w[0], w[1])).collect();
    Ok((add_random_arcs(n, arcs, density, rng), path))
}

/// Digraph with a planted Hamiltonian dicycle (returned) plus random arcs.
pub fn gen_ham_dicycle_digraph<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Result<(Digraph, Vec<usize>)> {
    check_density(density)?;
    if n < 3 {
        return Err(invalid("a dicycle needs at least 3 vertices"));
    }
    let mut cycle: Vec<usize> = (0..n).collect();
    cycle.shuffle(rng);
    let arcs = (0..n).map(|i| (cycle[i], cycle[(i + 1) % n])).collect();
    Ok((add_random_arcs(n, arcs, density, rng), cycle))
}

/// Shape families for random rooted trees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum TreeShape {
    /// Uniform random recursive tree.
    Random,
    Path,
    Whip,
    /// Star^i-like tree.
    Star(usize),
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeShape::Random => f.write_str("random"),
            TreeShape::Path => f.write_str("path"),
            TreeShape::Whip => f.write_str("whip"),
            TreeShape::Star(i) => write!(f, "star{i}"),
        }
    }
}

impl FromStr for TreeShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(TreeShape::Random),
            "path" => Ok(TreeShape::Path),
            "whip" => Ok(TreeShape::Whip),
            _ => s
                .strip_prefix("star")
                .and_then(|i| i.parse().ok())
                .map(TreeShape::Star)
                .ok_or_else(|| invalid(format!("unknown tree shape {s:?}"))),
        }
    }
}

impl From<TreeShape> for String {
    fn from(s: TreeShape) -> String {
        s.to_string()
    }
}

impl TryFrom<String> for TreeShape {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Random rooted tree of the given shape with about `n` vertices (star
/// shapes may need more), vertex labels shuffled.
pub fn gen_tree<R: Rng + ?Sized>(shape: TreeShape, n: usize, rng: &mut R) -> Result<RootedTree> {
    if n == 0 {
        return Err(invalid("a tree needs a vertex"));
    }
    let mut parent: Vec<Option<usize>> = vec![None];
    match shape {
        TreeShape::Random => {
            for v in 1..n {
                parent.push(Some(rng.gen_range(0..v)));
            }
        }
        TreeShape::Path => {
            for v in 1..n {
                parent.push(Some(v - 1));
            }
        }
        TreeShape::Whip => {
            if n < 4 {
                return Err(invalid("a whip needs at least 4 vertices"));
            }
            let above = rng.gen_range(0..=n - 3);
            for v in 1..=above {
                parent.push(Some(v - 1));
            }
            while parent.len() < n {
                parent.push(Some(above));
            }
        }
        TreeShape::Star(i) => {
            fn branch<R: Rng + ?Sized>(parent: &mut Vec<Option<usize>>, under: usize, rank: usize, wide: bool, rng: &mut R) {
                parent.push(Some(under));
                let node = parent.len() - 1;
                if rank == 0 {
                    return;
                }
                for _ in 0..2 + usize::from(wide && rng.gen_bool(0.5)) {
                    branch(parent, node, rank - 1, wide, rng);
                }
            }
            // retry random branching until the skeleton fits, then fall back to the smallest one
            for attempt in 0..20 {
                let wide = attempt < 19;
                parent.truncate(1);
                let top = if wide && rng.gen_bool(0.5) {
                    0
                } else {
                    parent.push(Some(0));
                    1
                };
                let count = 2 + usize::from(top == 0) + usize::from(wide && rng.gen_bool(0.5));
                for _ in 0..count {
                    branch(&mut parent, top, i, wide, rng);
                }
                if parent.len() <= n {
                    break;
                }
            }
            // subdivide random edges up to the target size
            while parent.len() < n {
                let v = rng.gen_range(1..parent.len());
                let w = parent.len();
                parent.push(parent[v]);
                parent[v] = Some(w);
            }
        }
    }
    let mut label: Vec<usize> = (0..parent.len()).collect();
    label.shuffle(rng);
    let mut relabeled = vec![None; parent.len()];
    for (v, p) in parent.iter().enumerate() {
        relabeled[label[v]] = p.map(|p| label[p]);
    }
    let t = RootedTree::new(label[0], relabeled)?;
    let ok = match shape {
        TreeShape::Whip => classify_star(&t).kind == crate::tree::StarKind::Whip,
        TreeShape::Star(i) => classify_star(&t).index() == Some(i),
        _ => true,
    };
    if !ok {
        return Err(Error::Internal(format!("generated tree is not of shape {shape}")));
    }
    Ok(t)
}

/// Digraph with a planted spanning out-tree (arcs parent → child) plus random arcs.
pub fn gen_outtree_digraph<R: Rng + ?Sized>(
    n: usize,
    shape: TreeShape,
    density: f64,
    rng: &mut R,
) -> Result<(Digraph, RootedTree)> {
    check_density(density)?;
    let t = gen_tree(shape, n, rng)?;
    let d = add_random_arcs(t.n(), t.arcs(), density, rng);
    Ok((d, t.with_view(crate::tree::TreeView::OutTree)))
}

/// Saturated instance over a random tree of the given shape; candidate
/// edges are added in random order.
pub fn gen_star_tree_instance<R: Rng + ?Sized>(shape: TreeShape, n: usize, rng: &mut R) -> Result<(Graph, RootedTree)> {
    let t = gen_tree(shape, n, rng)?;
    let g = saturate_shuffled(&t.as_graph(), &t, rng)?;
    Ok((g, t))
}

/// Random graph with an ordering free of secant pairs: consecutive edges
/// with probability 0.8, then random jumps kept when they cross no
/// earlier jump.
pub fn gen_no_secant_graph<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<(Graph, VertexOrdering)> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = (1..n).filter(|_| rng.gen_bool(0.8)).map(|i| (i - 1, i)).collect();
    let mut jumps: Vec<(usize, usize)> = Vec::new();
    if n >= 3 {
        for _ in 0..3 * n {
            let a = rng.gen_range(0..n - 2);
            let b = rng.gen_range(a + 2..n);
            let crosses = jumps
                .iter()
                .any(|&(c, d)| (a < c && c < b && b < d) || (c < a && a < d && d < b) || (a, b) == (c, d));
            if !crosses {
                jumps.push((a, b));
            }
        }
    }
    edges.extend(jumps);
    let g = Graph::new(n, edges.into_iter().map(|(i, j)| (order[i], order[j])))?;
    Ok((g, VertexOrdering::new(order)?))
}

/// Removes arcs outside `planted` until `spec` is absent: each round runs
/// the exact detector and deletes a random unplanted arc of the found
/// subdivision. `budget` caps the number of rounds.
pub fn gen_subdivision_free<R: Rng + ?Sized>(
    d: &Digraph,
    planted: &[(usize, usize)],
    spec: &PatternSpec,
    limits: SearchLimits,
    budget: usize,
    rng: &mut R,
) -> Result<Digraph> {
    let mut d = d.clone();
    for _ in 0..budget {
        let cert = match detect(&d, spec, SearchLimits { node_budget: None, ..limits })? {
            Detection::Absent => return Ok(d),
            Detection::Found(c) => c,
            Detection::Unknown => unreachable!("exact mode has no budget"),
        };
        let arcs: Vec<(usize, usize)> = cert
            .paths
            .iter()
            .zip(&cert.directions)
            .flat_map(|(p, dir)| {
                let back = matches!(dir, crate::subdivision::PathDirection::Backward);
                p.windows(2)
                    .map(move |w| if back { (w[1], w[0]) } else { (w[0], w[1]) })
                    .collect::<Vec<_>>()
            })
            .filter(|a| !planted.contains(a))
            .collect();
        let &(u, v) = arcs
            .choose(rng)
            .ok_or_else(|| precondition(format!("the planted structure contains {spec}")))?;
        d = d.without_arc(u, v);
    }
    Err(Error::BudgetExhausted(budget as u64))
}

/// Bound checked by an experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Theorem {
    HamDipath,
    PathCover,
    HamCycle,
    DegreeConfined,
    OutTree,
    NoSecant,
    Star0,
    Star1,
    MaximalOutTree,
    NonDilated,
}

impl Theorem {
    pub const ALL: [Theorem; 10] = [
        Theorem::HamDipath,
        Theorem::PathCover,
        Theorem::HamCycle,
        Theorem::DegreeConfined,
        Theorem::OutTree,
        Theorem::NoSecant,
        Theorem::Star0,
        Theorem::Star1,
        Theorem::MaximalOutTree,
        Theorem::NonDilated,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::HamDipath => "3k1",
            Theorem::PathCover => "pathcover",
            Theorem::HamCycle => "4k",
            Theorem::DegreeConfined => "2k-1",
            Theorem::OutTree => "4k1(k2-1)",
            Theorem::NoSecant => "no-secant-3",
            Theorem::Star0 => "star0",
            Theorem::Star1 => "star1",
            Theorem::MaximalOutTree => "maximal-out-tree",
            Theorem::NonDilated => "non-dilated",
        }
    }

    /// Number of parameters in a grid entry (`None` for variable length).
    fn arity(self) -> Option<usize> {
        match self {
            Theorem::HamDipath | Theorem::PathCover | Theorem::OutTree => Some(2),
            Theorem::HamCycle => Some(3),
            Theorem::DegreeConfined => Some(2),
            Theorem::NonDilated => None,
            _ => Some(0),
        }
    }

    fn default_grid(self) -> Vec<Vec<usize>> {
        match self {
            Theorem::HamDipath => vec![vec![2, 2], vec![3, 2], vec![3, 3], vec![5, 2]],
            Theorem::PathCover => vec![vec![2, 2]],
            Theorem::HamCycle => vec![vec![2, 1, 2], vec![2, 2, 2], vec![3, 2, 1], vec![3, 3, 3]],
            Theorem::DegreeConfined => vec![vec![2, 2], vec![3, 3], vec![3, 2], vec![2, 3]],
            Theorem::OutTree => vec![vec![2, 2], vec![3, 2], vec![3, 3]],
            Theorem::NonDilated => vec![vec![1, 2, 1, 2], vec![2, 1, 3, 1], vec![1, 2, 2, 1, 3, 3]],
            _ => vec![vec![]],
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == s)
            .ok_or_else(|| invalid(format!("unknown theorem id {s:?}")))
    }
}

impl From<Theorem> for String {
    fn from(t: Theorem) -> String {
        t.id().to_string()
    }
}

impl TryFrom<String> for Theorem {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Parameters of a bound experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub theorem: Theorem,
    /// Parameter tuples, used round-robin by trial index; empty means the
    /// theorem's default grid.
    #[serde(default)]
    pub grid: Vec<Vec<usize>>,
    pub trials: usize,
    pub n_min: usize,
    pub n_max: usize,
    /// Probability of each extra arc between non-adjacent pairs.
    pub density: f64,
    pub seed: u64,
    /// Exact chromatic number is computed when `n` is at most this.
    pub oracle_limit: usize,
    /// Exact detector scale limit.
    pub exact_limit: usize,
}

impl ExperimentConfig {
    pub fn new(theorem: Theorem, trials: usize, n_min: usize, n_max: usize, seed: u64) -> Self {
        ExperimentConfig {
            theorem,
            grid: Vec::new(),
            trials,
            n_min,
            n_max,
            density: 0.1,
            seed,
            oracle_limit: 12,
            exact_limit: 40,
        }
    }

    fn validate(&self) -> Result<Vec<Vec<usize>>> {
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(invalid("size range must satisfy 1 ≤ n_min ≤ n_max"));
        }
        check_density(self.density)?;
        let grid = if self.grid.is_empty() {
            self.theorem.default_grid()
        } else {
            self.grid.clone()
        };
        for entry in &grid {
            let ok = match self.theorem.arity() {
                Some(a) => entry.len() == a && entry.iter().all(|&k| k > 0),
                None => entry.len() >= 4 && entry.len() % 2 == 0 && entry.iter().all(|&k| k > 0),
            };
            if !ok {
                return Err(invalid(format!("grid entry {entry:?} does not fit theorem {}", self.theorem)));
            }
        }
        Ok(grid)
    }
}

/// Outcome of one trial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub params: Vec<usize>,
    pub n: usize,
    /// Arc or edge count of the instance.
    pub arcs: usize,
    pub instance_hash: String,
    /// "coloring", "certificate" or "construction".
    pub branch: String,
    pub palette: Option<usize>,
    pub bound: Option<usize>,
    pub oracle_chi: Option<usize>,
    pub certificate_valid: Option<bool>,
    /// Theorem-specific measurement: maximum degree, cover size, degeneracy,
    /// rewiring steps or non-dilated blocks.
    pub measure: Option<usize>,
    pub violation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub trials: usize,
    pub colorings: usize,
    pub certificates: usize,
    pub violations: usize,
    pub max_palette: usize,
    pub zero_violations: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub format: u32,
    pub config: ExperimentConfig,
    pub records: Vec<TrialRecord>,
    pub summary: Summary,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    trial: usize,
    params: String,
    n: usize,
    arcs: usize,
    instance_hash: &'a str,
    branch: &'a str,
    palette: Option<usize>,
    bound: Option<usize>,
    oracle_chi: Option<usize>,
    certificate_valid: Option<bool>,
    measure: Option<usize>,
    violation: Option<&'a str>,
}

impl Report {
    /// One CSV row per trial.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(CsvRow {
                trial: r.trial,
                params: r.params.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" "),
                n: r.n,
                arcs: r.arcs,
                instance_hash: &r.instance_hash,
                branch: &r.branch,
                palette: r.palette,
                bound: r.bound,
                oracle_chi: r.oracle_chi,
                certificate_valid: r.certificate_valid,
                measure: r.measure,
                violation: r.violation.as_deref(),
            })
            .expect("rows serialize");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("CSV is UTF-8")
    }
}

struct Trial<'a> {
    cfg: &'a ExperimentConfig,
    record: TrialRecord,
}

impl Trial<'_> {
    fn violate(&mut self, why: impl Into<String>) {
        self.record.violation.get_or_insert_with(|| why.into());
    }

    fn limits(&self) -> SearchLimits {
        SearchLimits::exact(self.cfg.exact_limit)
    }

    fn hash<T: Serialize>(&mut self, value: &T, n: usize, arcs: usize) {
        self.record.instance_hash = instance_hash(value);
        self.record.n = n;
        self.record.arcs = arcs;
    }

    /// Records a coloring of `g`: properness, bound and oracle consistency.
    fn coloring(&mut self, g: &Graph, c: &Coloring, bound: usize) {
        self.record.branch = "coloring".into();
        self.record.palette = Some(c.palette());
        self.record.bound = Some(bound);
        match is_proper(g, c) {
            Ok(true) => {}
            _ => self.violate("coloring is not proper"),
        }
        if c.palette() > bound {
            self.violate(format!("palette {} exceeds bound {bound}", c.palette()));
        }
        if g.n() <= self.cfg.oracle_limit {
            if let Ok((chi, _)) = chromatic_number_exact(g, self.cfg.oracle_limit) {
                self.record.oracle_chi = Some(chi);
                if chi > c.palette() {
                    self.violate(format!("oracle chromatic number {chi} exceeds palette"));
                }
            }
        }
    }

    /// Records a colorer outcome on an instance sampled free of the pattern:
    /// a certificate there means the detector and the colorer disagree.
    fn outcome(&mut self, d: &Digraph, r: &ColorOrCertificate) {
        match r {
            ColorOrCertificate::Coloring { coloring, bound } => self.coloring(&underlying_graph(d), coloring, *bound),
            ColorOrCertificate::Certificate { certificate, spec } => {
                self.record.branch = "certificate".into();
                let valid = check_certificate(d, certificate, spec).is_ok();
                self.record.certificate_valid = Some(valid);
                self.violate(if valid {
                    "certificate on an instance sampled free of the pattern"
                } else {
                    "invalid certificate"
                });
            }
        }
    }
}

fn run_trial(cfg: &ExperimentConfig, grid: &[Vec<usize>], trial: usize) -> TrialRecord {
    let mut rng = seeded(cfg.seed);
    rng.set_stream(trial as u64);
    let params = grid[trial % grid.len()].clone();
    let n = rng.gen_range(cfg.n_min..=cfg.n_max);
    let mut t = Trial {
        cfg,
        record: TrialRecord {
            trial,
            params: params.clone(),
            n,
            arcs: 0,
            instance_hash: String::new(),
            branch: String::new(),
            palette: None,
            bound: None,
            oracle_chi: None,
            certificate_valid: None,
            measure: None,
            violation: None,
        },
    };
    if let Err(e) = trial_body(&mut t, &params, n, &mut rng) {
        t.violate(format!("error: {e}"));
    }
    t.record
}

fn trial_body(t: &mut Trial, params: &[usize], n: usize, rng: &mut ChaCha8Rng) -> Result<()> {
    let cfg = t.cfg;
    let budget = 4 * n * n;
    match cfg.theorem {
        Theorem::HamDipath => {
            let spec = PatternSpec::two_blocks(params[0], params[1])?;
            let (d, p) = gen_ham_dipath_digraph(n, cfg.density, rng)?;
            let planted: Vec<_> = p.windows(2).map(|w| (w[0], w[1])).collect();
            let d = gen_subdivision_free(&d, &planted, &spec, t.limits(), budget, rng)?;
            t.hash(&d, n, d.arc_count());
            let r = color_hamdipath_c2free(&d, &p, params[0], params[1])?;
            t.outcome(&d, &r);
        }
        Theorem::PathCover => {
            let (k1, k2) = (params[0], params[1]);
            let spec = PatternSpec::two_blocks(k1, k2)?;
            let d = add_random_arcs(n, Vec::new(), cfg.density, rng);
            let d = gen_subdivision_free(&d, &[], &spec, t.limits(), budget, rng)?;
            t.hash(&d, n, d.arc_count());
            let (r, cover) = color_pathcover_c2free(&d, k1, k2)?;
            t.outcome(&d, &r);
            t.record.measure = Some(cover.len());
            if n <= cfg.oracle_limit {
                let alpha = independence_number(&underlying_graph(&d), cfg.oracle_limit)?;
                if cover.len() <= alpha {
                    if let Some(c) = r.coloring() {
                        if c.palette() > 3 * alpha * k1.max(k2) {
                            t.violate("palette exceeds 3·α·k");
                        }
                    }
                }
            }
        }
        Theorem::HamCycle => {
            let spec = PatternSpec::bispindle(params[0], params[1], params[2])?;
            let (d, c) = gen_ham_dicycle_digraph(n.max(3), cfg.density, rng)?;
            let planted: Vec<_> = (0..c.len()).map(|i| (c[i], c[(i + 1) % c.len()])).collect();
            let d = gen_subdivision_free(&d, &planted, &spec, t.limits(), budget, rng)?;
            t.hash(&d, d.n(), d.arc_count());
            let r = color_hamcycle_bispindlefree(&d, &c, params[0], params[1], params[2])?;
            t.outcome(&d, &r);
        }
        Theorem::DegreeConfined => {
            let (k1, k3) = (params[0], params[1]);
            let spec = PatternSpec::bispindle(k1, 1, k3)?;
            let (d, c) = gen_ham_dicycle_digraph(n.max(3), cfg.density, rng)?;
            let planted: Vec<_> = (0..c.len()).map(|i| (c[i], c[(i + 1) % c.len()])).collect();
            let d = gen_subdivision_free(&d, &planted, &spec, t.limits(), budget, rng)?;
            t.hash(&d, d.n(), d.arc_count());
            let g = underlying_graph(&d);
            let delta = g.max_degree();
            t.record.measure = Some(delta);
            let k = k1.max(k3);
            if d.n() >= 2 * k && delta > 2 * k - 2 {
                t.violate(format!("maximum degree {delta} exceeds 2k−2"));
            }
            let r = color_hamcycle_b1free(&d, &c, k1, k3)?;
            t.outcome(&d, &r);
        }
        Theorem::OutTree => {
            let (k1, k2) = (params[0], params[1]);
            let spec = PatternSpec::two_blocks(k1, k2)?;
            let shape = TreeShape::Star(t.record.trial % 2);
            let (d, tree) = gen_outtree_digraph(n, shape, cfg.density, rng)?;
            let d = gen_subdivision_free(&d, &tree.arcs(), &spec, t.limits(), budget, rng)?;
            t.hash(&d, d.n(), d.arc_count());
            let out = color_outtree_c2free(&d, &tree, k1, k2)?;
            t.record.measure = Some(out.rewiring.len());
            t.outcome(&d, &out.result);
        }
        Theorem::NoSecant => {
            let (g, order) = gen_no_secant_graph(n, rng)?;
            t.hash(&g, n, g.edge_count());
            let (degen, _) = degeneracy(&g);
            t.record.measure = Some(degen);
            if degen > 2 {
                t.violate(format!("degeneracy {degen} exceeds 2"));
            }
            let c = color_no_secant(&g, &order)?;
            t.coloring(&g, &c, 3);
        }
        Theorem::Star0 | Theorem::Star1 => {
            let i = usize::from(cfg.theorem == Theorem::Star1);
            let (g, tree) = gen_star_tree_instance(TreeShape::Star(i), n, rng)?;
            t.hash(&(&g, &tree), g.n(), g.edge_count());
            let c = if i == 0 { color_star0(&g, &tree)? } else { color_star1(&g, &tree)? };
            t.coloring(&g, &c, 4);
        }
        Theorem::MaximalOutTree => {
            let (d, tree) = gen_outtree_digraph(n, TreeShape::Random, cfg.density, rng)?;
            t.hash(&d, n, d.arc_count());
            let (maximal, steps) = make_maximal_out_tree(&d, &tree)?;
            t.record.branch = "construction".into();
            t.record.measure = Some(steps.len());
            if !is_maximal_out_tree(&d, &maximal) {
                t.violate("result is not a maximal out-tree");
            }
            if steps.iter().any(|s| s.new_level <= s.old_level) {
                t.violate("a rewiring step did not raise a level");
            }
        }
        Theorem::NonDilated => {
            let m = params.len() / 2;
            let need = m + params.iter().sum::<usize>();
            let size = n.max(need);
            let tour = gen_tournament(size, rng);
            t.hash(&tour, size, tour.arc_count());
            let build = build_cycle_subdivision_shuffled(&tour, params, rng)?;
            t.record.branch = "construction".into();
            t.record.measure = Some(build.report.non_dilated);
            let valid = check_certificate(&tour, &build.certificate, &build.spec).is_ok();
            t.record.certificate_valid = Some(valid);
            if !valid {
                t.violate("built cycle is not a valid subdivision");
            }
            if build.report.non_dilated < m {
                t.violate(format!("only {} non-dilated blocks", build.report.non_dilated));
            }
        }
    }
    Ok(())
}

/// Runs the trials of `cfg` in parallel and collects them in trial order.
pub fn run_bound_experiment(cfg: &ExperimentConfig) -> Result<Report> {
    let grid = cfg.validate()?;
    let records: Vec<TrialRecord> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial(cfg, &grid, i))
        .collect();
    let violations = records.iter().filter(|r| r.violation.is_some()).count();
    let summary = Summary {
        trials: records.len(),
        colorings: records.iter().filter(|r| r.branch == "coloring").count(),
        certificates: records.iter().filter(|r| r.branch == "certificate").count(),
        violations,
        max_palette: records.iter().filter_map(|r| r.palette).max().unwrap_or(0),
        zero_violations: violations == 0,
    };
    Ok(Report {
        format: FORMAT,
        config: cfg.clone(),
        records,
        summary,
    })
}

/// Parameters of a conjecture scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub family: TreeShape,
    pub n_min: usize,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub format: u32,
    pub config: ScanConfig,
    pub colored: usize,
    pub total_search_nodes: u64,
    pub max_search_nodes: u64,
    pub max_palette: usize,
    pub counterexamples: Vec<CounterexampleReport>,
}

#[derive(Serialize)]
struct ScanCsvRow {
    family: String,
    n_min: usize,
    n_max: usize,
    trials: usize,
    seed: u64,
    colored: usize,
    counterexamples: usize,
    total_search_nodes: u64,
    max_search_nodes: u64,
    max_palette: usize,
}

impl ScanReport {
    /// A single CSV summary row.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.serialize(ScanCsvRow {
            family: self.config.family.to_string(),
            n_min: self.config.n_min,
            n_max: self.config.n_max,
            trials: self.config.trials,
            seed: self.config.seed,
            colored: self.colored,
            counterexamples: self.counterexamples.len(),
            total_search_nodes: self.total_search_nodes,
            max_search_nodes: self.max_search_nodes,
            max_palette: self.max_palette,
        })
        .expect("row serializes");
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("CSV is UTF-8")
    }
}

/// Searches saturated instances over random trees of `family` for graphs
/// without a 4-coloring.
pub fn scan_conjecture(cfg: &ScanConfig) -> Result<ScanReport> {
    if cfg.n_min == 0 || cfg.n_min > cfg.n_max {
        return Err(invalid("size range must satisfy 1 ≤ n_min ≤ n_max"));
    }
    let outcomes: Vec<GeneralOutcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = seeded(cfg.seed);
            rng.set_stream(i as u64);
            let n = rng.gen_range(cfg.n_min..=cfg.n_max);
            let (g, t) = gen_star_tree_instance(cfg.family, n, &mut rng)?;
            color_normal_nosecant_general(&g, &t)
        })
        .collect::<Result<_>>()?;
    let mut report = ScanReport {
        format: FORMAT,
        config: cfg.clone(),
        colored: 0,
        total_search_nodes: 0,
        max_search_nodes: 0,
        max_palette: 0,
        counterexamples: Vec::new(),
    };
    for o in outcomes {
        let nodes = match o {
            GeneralOutcome::Colored { coloring, search_nodes } => {
                report.colored += 1;
                report.max_palette = report.max_palette.max(coloring.colors_used());
                search_nodes
            }
            GeneralOutcome::Counterexample(c) => {
                let nodes = c.search_nodes;
                report.counterexamples.push(*c);
                nodes
            }
        };
        report.total_search_nodes += nodes;
        report.max_search_nodes = report.max_search_nodes.max(nodes);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_parse_and_generate() {
        let mut rng = seeded(7);
        for s in ["random", "path", "whip", "star0", "star1", "star2"] {
            let shape: TreeShape = s.parse().unwrap();
            assert_eq!(shape.to_string(), s);
            let t = gen_tree(shape, 12, &mut rng).unwrap();
            assert!(t.n() >= 12);
        }
        assert!("star".parse::<TreeShape>().is_err());
    }

    #[test]
    fn theorem_ids_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(t.id().parse::<Theorem>().unwrap(), t);
        }
        assert!("5k".parse::<Theorem>().is_err());
    }

    #[test]
    fn bare_cycle_at_zero_density() {
        let (d, c) = gen_ham_dicycle_digraph(8, 0.0, &mut seeded(1)).unwrap();
        assert_eq!(d.arc_count(), 8);
        assert!(crate::exact::is_hamiltonian_sequence(&d, &c, true));
    }
}
