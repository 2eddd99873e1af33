//! Forbidden patterns, subdivision certificates, exact detectors for
//! two-blocks cycles and bispindles, and block-dilation accounting.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{invalid, Error, Result};

/// Parameters of a forbidden oriented cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecJson", into = "SpecJson")]
pub enum PatternSpec {
    /// `C(k1, k2)`: two internally disjoint `x→y` dipaths, normalized `k1 ≥ k2`.
    TwoBlocks { k1: usize, k2: usize },
    /// `B(k1, k2; k3)`: two `x→y` dipaths and one `y→x` dipath, normalized `k1 ≥ k2`.
    Bispindle { k1: usize, k2: usize, k3: usize },
    /// `C(k1, …, k_t)` with `t` even; block `i` has length `k_i`.
    MultiBlock(Vec<usize>),
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    kind: CertificateKind,
    params: Vec<usize>,
}

impl TryFrom<SpecJson> for PatternSpec {
    type Error = Error;

    fn try_from(raw: SpecJson) -> Result<Self> {
        match (raw.kind, raw.params.as_slice()) {
            (CertificateKind::TwoBlocksCycle, &[k1, k2]) => PatternSpec::two_blocks(k1, k2),
            (CertificateKind::Bispindle, &[k1, k2, k3]) => PatternSpec::bispindle(k1, k2, k3),
            (CertificateKind::MultiBlockCycle, ks) => PatternSpec::multi_block(ks.to_vec()),
            (kind, ks) => Err(invalid(format!("{} parameters do not fit {kind:?}", ks.len()))),
        }
    }
}

impl From<PatternSpec> for SpecJson {
    fn from(s: PatternSpec) -> Self {
        SpecJson {
            kind: s.kind(),
            params: s.params(),
        }
    }
}

impl PatternSpec {
    pub fn two_blocks(k1: usize, k2: usize) -> Result<Self> {
        if k1 == 0 || k2 == 0 {
            return Err(invalid("two-blocks parameters must be positive"));
        }
        Ok(PatternSpec::TwoBlocks {
            k1: k1.max(k2),
            k2: k1.min(k2),
        })
    }

    pub fn bispindle(k1: usize, k2: usize, k3: usize) -> Result<Self> {
        if k1 == 0 || k2 == 0 || k3 == 0 {
            return Err(invalid("bispindle parameters must be positive"));
        }
        Ok(PatternSpec::Bispindle {
            k1: k1.max(k2),
            k2: k1.min(k2),
            k3,
        })
    }

    pub fn multi_block(ks: Vec<usize>) -> Result<Self> {
        if ks.is_empty() || !ks.len().is_multiple_of(2) {
            return Err(invalid("a multi-block cycle needs a positive even number of blocks"));
        }
        if ks.contains(&0) {
            return Err(invalid("block lengths must be positive"));
        }
        Ok(PatternSpec::MultiBlock(ks))
    }

    pub fn kind(&self) -> CertificateKind {
        match self {
            PatternSpec::TwoBlocks { .. } => CertificateKind::TwoBlocksCycle,
            PatternSpec::Bispindle { .. } => CertificateKind::Bispindle,
            PatternSpec::MultiBlock(_) => CertificateKind::MultiBlockCycle,
        }
    }

    pub fn params(&self) -> Vec<usize> {
        match self {
            PatternSpec::TwoBlocks { k1, k2 } => vec![*k1, *k2],
            PatternSpec::Bispindle { k1, k2, k3 } => vec![*k1, *k2, *k3],
            PatternSpec::MultiBlock(ks) => ks.clone(),
        }
    }
}

impl std::fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PatternSpec::TwoBlocks { k1, k2 } => write!(f, "C({k1},{k2})"),
            PatternSpec::Bispindle { k1, k2, k3 } => write!(f, "B({k1},{k2};{k3})"),
            PatternSpec::MultiBlock(ks) => {
                let parts: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
                write!(f, "C({})", parts.join(","))
            }
        }
    }
}

/// Parses `two-blocks:K1,K2`, `bispindle:K1,K2,K3` or `multi-block:K1,…,Kt`.
impl std::str::FromStr for PatternSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, params) = s
            .split_once(':')
            .ok_or_else(|| invalid(format!("pattern {s:?} is not KIND:PARAMS")))?;
        let ks = params
            .split(',')
            .map(|k| k.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| invalid(format!("pattern parameters {params:?}: {e}")))?;
        match (kind, ks.as_slice()) {
            ("two-blocks", &[k1, k2]) => PatternSpec::two_blocks(k1, k2),
            ("bispindle", &[k1, k2, k3]) => PatternSpec::bispindle(k1, k2, k3),
            ("multi-block", _) => PatternSpec::multi_block(ks),
            _ => Err(invalid(format!("unknown pattern {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    TwoBlocksCycle,
    Bispindle,
    MultiBlockCycle,
}

/// Direction of a certificate dipath.
///
/// `Xy`/`Yx` are used by two-blocks cycles and bispindles. Multi-block
/// cycles list their paths in traversal order and mark whether the arcs
/// follow the listing (`Forward`) or oppose it (`Backward`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathDirection {
    Xy,
    Yx,
    Forward,
    Backward,
}

/// Explicit dipaths witnessing a subdivision of a pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubdivisionCertificate {
    pub kind: CertificateKind,
    pub x: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<usize>,
    pub paths: Vec<Vec<usize>>,
    pub directions: Vec<PathDirection>,
}

impl SubdivisionCertificate {
    pub fn two_blocks(p1: Vec<usize>, p2: Vec<usize>) -> Self {
        SubdivisionCertificate {
            kind: CertificateKind::TwoBlocksCycle,
            x: p1[0],
            y: p1.last().copied(),
            paths: vec![p1, p2],
            directions: vec![PathDirection::Xy, PathDirection::Xy],
        }
    }

    pub fn bispindle(p1: Vec<usize>, p2: Vec<usize>, p3: Vec<usize>) -> Self {
        SubdivisionCertificate {
            kind: CertificateKind::Bispindle,
            x: p1[0],
            y: p1.last().copied(),
            paths: vec![p1, p2, p3],
            directions: vec![PathDirection::Xy, PathDirection::Xy, PathDirection::Yx],
        }
    }

    /// Multi-block cycle from blocks in traversal order; block 0 is forward.
    pub fn multi_block(blocks: Vec<Vec<usize>>) -> Self {
        let directions = (0..blocks.len())
            .map(|i| if i % 2 == 0 { PathDirection::Forward } else { PathDirection::Backward })
            .collect();
        SubdivisionCertificate {
            kind: CertificateKind::MultiBlockCycle,
            x: blocks[0][0],
            y: None,
            paths: blocks,
            directions,
        }
    }

    /// Arc count of path `i`.
    pub fn path_length(&self, i: usize) -> usize {
        self.paths[i].len().saturating_sub(1)
    }
}

/// True iff the certificate witnesses `spec` in `d`.
pub fn validate_certificate(d: &Digraph, cert: &SubdivisionCertificate, spec: &PatternSpec) -> bool {
    check_certificate(d, cert, spec).is_ok()
}

/// Like [`validate_certificate`], reporting the first defect found.
pub fn check_certificate(
    d: &Digraph,
    cert: &SubdivisionCertificate,
    spec: &PatternSpec,
) -> std::result::Result<(), String> {
    if cert.kind != spec.kind() {
        return Err(format!("certificate kind {:?} does not match {spec}", cert.kind));
    }
    if cert.paths.len() != cert.directions.len() {
        return Err("paths and directions differ in count".into());
    }
    for (i, p) in cert.paths.iter().enumerate() {
        if p.len() < 2 {
            return Err(format!("path {i} has no arc"));
        }
        if let Some(&v) = p.iter().find(|&&v| v >= d.n()) {
            return Err(format!("path {i} uses unknown vertex {v}"));
        }
        let mut seen = vec![false; d.n()];
        for &v in p {
            if seen[v] {
                return Err(format!("path {i} repeats vertex {v}"));
            }
            seen[v] = true;
        }
        let backward = matches!(cert.directions[i], PathDirection::Backward);
        for w in p.windows(2) {
            let (u, v) = if backward { (w[1], w[0]) } else { (w[0], w[1]) };
            if !d.has_arc(u, v) {
                return Err(format!("path {i} needs missing arc ({u},{v})"));
            }
        }
    }
    match spec {
        PatternSpec::TwoBlocks { k1, k2 } => check_spindle(cert, &[*k1, *k2], None),
        PatternSpec::Bispindle { k1, k2, k3 } => check_spindle(cert, &[*k1, *k2], Some(*k3)),
        PatternSpec::MultiBlock(ks) => check_multi_block(cert, ks),
    }
}

fn check_spindle(
    cert: &SubdivisionCertificate,
    ks: &[usize; 2],
    back: Option<usize>,
) -> std::result::Result<(), String> {
    use PathDirection::{Xy, Yx};
    let expected: &[PathDirection] = if back.is_some() { &[Xy, Xy, Yx] } else { &[Xy, Xy] };
    if cert.directions != expected {
        return Err(format!("expected directions {expected:?}"));
    }
    let x = cert.x;
    let y = cert.y.ok_or("missing junction y")?;
    if x == y {
        return Err("junctions coincide".into());
    }
    for (i, p) in cert.paths.iter().enumerate() {
        let (s, t) = if cert.directions[i] == Yx { (y, x) } else { (x, y) };
        if p[0] != s || *p.last().unwrap() != t {
            return Err(format!("path {i} does not join its junctions"));
        }
    }
    let (l1, l2) = (cert.path_length(0), cert.path_length(1));
    if l1 == 1 && l2 == 1 {
        return Err("both x→y paths are the same arc".into());
    }
    if !((l1 >= ks[0] && l2 >= ks[1]) || (l1 >= ks[1] && l2 >= ks[0])) {
        return Err(format!("x→y path lengths {l1}, {l2} are too short"));
    }
    if let Some(k3) = back {
        if cert.path_length(2) < k3 {
            return Err(format!("y→x path length {} is below {k3}", cert.path_length(2)));
        }
    }
    let mut owner: Vec<(usize, usize)> = Vec::new();
    for (i, p) in cert.paths.iter().enumerate() {
        for &v in &p[1..p.len() - 1] {
            owner.push((v, i));
        }
    }
    owner.sort_unstable();
    if let Some(w) = owner.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(format!("vertex {} is interior to two paths", w[0].0));
    }
    Ok(())
}

fn check_multi_block(cert: &SubdivisionCertificate, ks: &[usize]) -> std::result::Result<(), String> {
    let t = ks.len();
    if cert.paths.len() != t {
        return Err(format!("expected {t} blocks, found {}", cert.paths.len()));
    }
    for i in 0..t {
        let a = cert.directions[i];
        let b = cert.directions[(i + 1) % t];
        if !matches!(a, PathDirection::Forward | PathDirection::Backward) || a == b {
            return Err(format!("blocks {i} and {} do not alternate", (i + 1) % t));
        }
        let next = &cert.paths[(i + 1) % t];
        if cert.paths[i].last() != next.first() {
            return Err(format!("block {i} does not end where block {} starts", (i + 1) % t));
        }
        if cert.path_length(i) < ks[i] {
            return Err(format!("block {i} has length {} below {}", cert.path_length(i), ks[i]));
        }
    }
    if cert.x != cert.paths[0][0] {
        return Err("x is not the start of block 0".into());
    }
    let mut cycle: Vec<usize> = cert.paths.iter().flat_map(|p| p[..p.len() - 1].iter().copied()).collect();
    if cycle.len() < 3 {
        return Err("cycle has fewer than 3 vertices".into());
    }
    cycle.sort_unstable();
    if let Some(w) = cycle.windows(2).find(|w| w[0] == w[1]) {
        return Err(format!("vertex {} repeats on the cycle", w[0]));
    }
    Ok(())
}

/// Per-block dilation of a multi-block certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DilationReport {
    pub blocks: Vec<BlockDilation>,
    pub non_dilated: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDilation {
    pub length: usize,
    pub param: usize,
    pub dilated: bool,
}

/// Marks block `i` dilated iff its length exceeds `k_i`. Only the structure
/// is checked here; arcs are checked by [`validate_certificate`].
pub fn dilation_report(cert: &SubdivisionCertificate, spec: &PatternSpec) -> Result<DilationReport> {
    let PatternSpec::MultiBlock(ks) = spec else {
        return Err(invalid("dilation is defined for multi-block cycles"));
    };
    if cert.kind != CertificateKind::MultiBlockCycle || cert.paths.len() != cert.directions.len() {
        return Err(invalid("not a multi-block certificate"));
    }
    if cert.paths.iter().any(|p| p.len() < 2) {
        return Err(invalid("a block has no arc"));
    }
    check_multi_block(cert, ks).map_err(Error::InvalidInput)?;
    let blocks: Vec<BlockDilation> = ks
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let length = cert.path_length(i);
            BlockDilation {
                length,
                param: k,
                dilated: length > k,
            }
        })
        .collect();
    let non_dilated = blocks.iter().filter(|b| !b.dilated).count();
    Ok(DilationReport { blocks, non_dilated })
}

/// Scale limits for the detectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchLimits {
    /// Largest vertex count searched without a budget.
    pub exact_max_n: usize,
    /// Search-node budget; required above `exact_max_n`.
    pub node_budget: Option<u64>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            exact_max_n: 30,
            node_budget: None,
        }
    }
}

impl SearchLimits {
    pub fn exact(max_n: usize) -> Self {
        SearchLimits {
            exact_max_n: max_n,
            node_budget: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Detection {
    Found(SubdivisionCertificate),
    Absent,
    /// The node budget ran out first.
    Unknown,
}

impl Detection {
    pub fn certificate(self) -> Option<SubdivisionCertificate> {
        match self {
            Detection::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Searches `d` for a subdivision of `spec` (two-blocks cycles and bispindles).
pub fn detect(d: &Digraph, spec: &PatternSpec, limits: SearchLimits) -> Result<Detection> {
    let budget = if d.n() > limits.exact_max_n {
        match limits.node_budget {
            Some(b) => Some(b),
            None => {
                return Err(Error::ScaleExceeded {
                    n: d.n(),
                    limit: limits.exact_max_n,
                })
            }
        }
    } else {
        limits.node_budget
    };
    let mut s = Search::new(d, budget);
    let found = match *spec {
        PatternSpec::TwoBlocks { k1, k2 } => s.two_blocks(k1, k2),
        PatternSpec::Bispindle { k1, k2, k3 } => s.bispindle(k1, k2, k3),
        PatternSpec::MultiBlock(_) => {
            return Err(invalid("no detector for multi-block cycles"));
        }
    };
    Ok(match found {
        Ok(Some(c)) => Detection::Found(c),
        Ok(None) => Detection::Absent,
        Err(OutOfBudget) => Detection::Unknown,
    })
}

/// Exact search with the default scale limit.
pub fn find_two_blocks_cycle(d: &Digraph, k1: usize, k2: usize) -> Result<Option<SubdivisionCertificate>> {
    let spec = PatternSpec::two_blocks(k1, k2)?;
    Ok(detect(d, &spec, SearchLimits::default())?.certificate())
}

/// Exact search with the default scale limit.
pub fn find_bispindle(
    d: &Digraph,
    k1: usize,
    k2: usize,
    k3: usize,
) -> Result<Option<SubdivisionCertificate>> {
    let spec = PatternSpec::bispindle(k1, k2, k3)?;
    Ok(detect(d, &spec, SearchLimits::default())?.certificate())
}

struct OutOfBudget;

/// Callback on a completed path prefix and the vertex states.
type Visitor<'v, S, T> = dyn FnMut(&mut S, &[usize], &mut [u8]) -> Step<Option<T>> + 'v;

type Step<T> = std::result::Result<T, OutOfBudget>;

struct Search<'a> {
    d: &'a Digraph,
    budget: Option<u64>,
    nodes: u64,
}

/// Vertex states while growing path prefixes.
const FREE: u8 = 0;
const USED: u8 = 1;

impl<'a> Search<'a> {
    fn new(d: &'a Digraph, budget: Option<u64>) -> Self {
        Search { d, budget, nodes: 0 }
    }

    fn tick(&mut self) -> Step<()> {
        self.nodes += 1;
        match self.budget {
            Some(b) if self.nodes > b => Err(OutOfBudget),
            _ => Ok(()),
        }
    }

    /// Calls `visit` on every simple dipath of exactly `len` arcs starting at
    /// `path[0]` whose new vertices are `FREE` in `state` and not `stop`
    /// except possibly as the final vertex. Stops early when `visit` returns
    /// `Some`.
    fn prefixes<T>(
        &mut self,
        path: &mut Vec<usize>,
        len: usize,
        state: &mut [u8],
        stop: Option<usize>,
        visit: &mut Visitor<'_, Self, T>,
    ) -> Step<Option<T>> {
        self.tick()?;
        if path.len() == len + 1 {
            return visit(self, path, state);
        }
        let last = *path.last().unwrap();
        let d = self.d;
        for &w in d.out_neighbors(last) {
            if state[w] != FREE {
                continue;
            }
            let final_step = path.len() == len;
            if Some(w) == stop && !final_step {
                continue;
            }
            state[w] = USED;
            path.push(w);
            let r = self.prefixes(path, len, state, stop, visit);
            path.pop();
            state[w] = FREE;
            if let Some(found) = r? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }

    fn two_blocks(&mut self, k1: usize, k2: usize) -> Step<Option<SubdivisionCertificate>> {
        let n = self.d.n();
        for x in 0..n {
            let mut state = vec![FREE; n];
            state[x] = USED;
            let mut q1 = vec![x];
            let found = self.prefixes(&mut q1, k1, &mut state, None, &mut |s, q1, state| {
                let q1 = q1.to_vec();
                let a = *q1.last().unwrap();
                // a may be reused as the end of the second prefix
                state[a] = FREE;
                let mut q2 = vec![x];
                let r = s.prefixes(&mut q2, k2, state, Some(a), &mut |s, q2, state| {
                    s.close_two_blocks(&q1, q2, state, k1, k2)
                });
                state[a] = USED;
                r
            })?;
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }


    fn close_two_blocks(
        &mut self,
        q1: &[usize],
        q2: &[usize],
        state: &[u8],
        k1: usize,
        k2: usize,
    ) -> Step<Option<SubdivisionCertificate>> {
        self.tick()?;
        let a = *q1.last().unwrap();
        let b = *q2.last().unwrap();
        if a == b {
            if k1 == 1 && k2 == 1 {
                return Ok(None);
            }
            return Ok(Some(SubdivisionCertificate::two_blocks(q1.to_vec(), q2.to_vec())));
        }
        let allowed: Vec<bool> = (0..self.d.n()).map(|v| state[v] == FREE || v == a || v == b).collect();
        let (from_b, parent_b) = bfs(self.d, b, &allowed);
        // The first vertex reachable from b on a walk from a is a valid meeting
        // point: the walk before it avoids everything reachable from b.
        let Some(r1) = bfs_to_set(self.d, a, &allowed, &from_b) else {
            return Ok(None);
        };
        let z = *r1.last().unwrap();
        let mut p1 = q1.to_vec();
        p1.extend_from_slice(&r1[1..]);
        let mut p2 = q2.to_vec();
        p2.extend_from_slice(&trace(&parent_b, b, z)[1..]);
        Ok(Some(SubdivisionCertificate::two_blocks(p1, p2)))
    }

    fn bispindle(&mut self, k1: usize, k2: usize, k3: usize) -> Step<Option<SubdivisionCertificate>> {
        let n = self.d.n();
        let everything = vec![true; n];
        let reach: Vec<Vec<bool>> = (0..n).map(|v| bfs(self.d, v, &everything).0).collect();
        for x in 0..n {
            for y in 0..n {
                if x == y || !reach[x][y] || !reach[y][x] {
                    continue;
                }
                let mut interior = vec![false; n];
                if self.spindle(x, y, k1, k2, &interior)?.is_none() {
                    continue;
                }
                let mut p3 = vec![y];
                interior[y] = true;
                let found = self.return_path(x, y, k1, k2, k3, &mut p3, &mut interior)?;
                if found.is_some() {
                    return Ok(found);
                }
            }
        }
        Ok(None)
    }

    /// Extends the `y→x` path `p3` depth-first; `interior` marks its vertices
    /// (including `y`, which the spindle search treats separately).
    #[allow(clippy::too_many_arguments)]
    fn return_path(
        &mut self,
        x: usize,
        y: usize,
        k1: usize,
        k2: usize,
        k3: usize,
        p3: &mut Vec<usize>,
        interior: &mut Vec<bool>,
    ) -> Step<Option<SubdivisionCertificate>> {
        self.tick()?;
        let last = *p3.last().unwrap();
        let d = self.d;
        let mut inner = interior.clone();
        inner[y] = false;
        if d.has_arc(last, x) && p3.len() >= k3 {
            if let Some((p1, p2)) = self.spindle(x, y, k1, k2, &inner)? {
                let mut back = p3.clone();
                back.push(x);
                return Ok(Some(SubdivisionCertificate::bispindle(p1, p2, back)));
            }
        }
        for &w in d.out_neighbors(last) {
            if w == x || interior[w] {
                continue;
            }
            // x must stay reachable from w without reusing the path
            let mut allowed: Vec<bool> = interior.iter().map(|&b| !b).collect();
            allowed[x] = true;
            if !bfs(d, w, &allowed).0[x] {
                continue;
            }
            inner[w] = true;
            let viable = self.spindle(x, y, k1, k2, &inner)?.is_some();
            inner[w] = false;
            if !viable {
                continue;
            }
            interior[w] = true;
            p3.push(w);
            let r = self.return_path(x, y, k1, k2, k3, p3, interior);
            p3.pop();
            interior[w] = false;
            if let Some(c) = r? {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    /// Two internally disjoint `x→y` dipaths of lengths at least `k1` and
    /// `k2` avoiding `forbidden`.
    fn spindle(
        &mut self,
        x: usize,
        y: usize,
        k1: usize,
        k2: usize,
        forbidden: &[bool],
    ) -> Step<Option<(Vec<usize>, Vec<usize>)>> {
        let n = self.d.n();
        let mut state: Vec<u8> = forbidden.iter().map(|&f| if f { USED } else { FREE }).collect();
        state[x] = USED;
        let mut q1 = vec![x];
        self.prefixes(&mut q1, k1, &mut state, Some(y), &mut |s, q1, state| {
            let q1 = q1.to_vec();
            let a = *q1.last().unwrap();
            if a == y {
                state[y] = FREE;
            }
            let mut q2 = vec![x];
            let r = s.prefixes(&mut q2, k2, state, Some(y), &mut |s, q2, state| {
                s.tick()?;
                let b = *q2.last().unwrap();
                let mut allowed: Vec<bool> = (0..n).map(|v| state[v] == FREE).collect();
                allowed[y] = true;
                let tails = match (a == y, b == y) {
                    (true, true) if k1 == 1 && k2 == 1 => None,
                    (true, true) => Some((vec![y], vec![y])),
                    (true, false) => {
                        allowed[b] = true;
                        let (seen, parent) = bfs(s.d, b, &allowed);
                        seen[y].then(|| (vec![y], trace(&parent, b, y)))
                    }
                    (false, true) => {
                        allowed[a] = true;
                        let (seen, parent) = bfs(s.d, a, &allowed);
                        seen[y].then(|| (trace(&parent, a, y), vec![y]))
                    }
                    (false, false) => {
                        allowed[a] = true;
                        allowed[b] = true;
                        two_disjoint_paths_to(s.d, &allowed, a, b, y)
                    }
                };
                Ok(tails.map(|(r1, r2)| {
                    let mut p1 = q1.clone();
                    p1.extend_from_slice(&r1[1..]);
                    let mut p2 = q2.to_vec();
                    p2.extend_from_slice(&r2[1..]);
                    (p1, p2)
                }))
            });
            if a == y {
                state[y] = USED;
            }
            r
        })
    }
}

/// Breadth-first search from `s` through `allowed` vertices.
fn bfs(d: &Digraph, s: usize, allowed: &[bool]) -> (Vec<bool>, Vec<usize>) {
    let n = d.n();
    let mut seen = vec![false; n];
    let mut parent = vec![usize::MAX; n];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in d.out_neighbors(u) {
            if allowed[w] && !seen[w] {
                seen[w] = true;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    (seen, parent)
}

/// Shortest path from `s` to the first vertex of `targets` it meets, moving
/// through `allowed` vertices.
fn bfs_to_set(d: &Digraph, s: usize, allowed: &[bool], targets: &[bool]) -> Option<Vec<usize>> {
    if targets[s] {
        return Some(vec![s]);
    }
    let n = d.n();
    let mut seen = vec![false; n];
    let mut parent = vec![usize::MAX; n];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &w in d.out_neighbors(u) {
            if allowed[w] && !seen[w] {
                seen[w] = true;
                parent[w] = u;
                if targets[w] {
                    return Some(trace(&parent, s, w));
                }
                queue.push_back(w);
            }
        }
    }
    None
}

fn trace(parent: &[usize], s: usize, t: usize) -> Vec<usize> {
    let mut out = vec![t];
    let mut v = t;
    while v != s {
        v = parent[v];
        out.push(v);
    }
    out.reverse();
    out
}

/// Two dipaths `a→y` and `b→y` through `allowed` vertices sharing only `y`,
/// by two augmentations on the vertex-split flow network.
fn two_disjoint_paths_to(
    d: &Digraph,
    allowed: &[bool],
    a: usize,
    b: usize,
    y: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = d.n();
    let size = 2 * n + 1;
    let source = 2 * n;
    let sink = 2 * y;
    let mut cap = vec![0i8; size * size];
    for v in (0..n).filter(|&v| allowed[v] && v != y) {
        cap[2 * v * size + 2 * v + 1] = 1;
    }
    for &(u, v) in d.arcs() {
        if allowed[u] && allowed[v] && u != y {
            cap[(2 * u + 1) * size + 2 * v] = 1;
        }
    }
    cap[source * size + 2 * a] = 1;
    cap[source * size + 2 * b] = 1;
    let mut flow = vec![0i8; size * size];
    for _ in 0..2 {
        let mut parent = vec![usize::MAX; size];
        parent[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for w in 0..size {
                if parent[w] == usize::MAX && cap[u * size + w] - flow[u * size + w] > 0 {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        if parent[sink] == usize::MAX {
            return None;
        }
        let mut v = sink;
        while v != source {
            let u = parent[v];
            flow[u * size + v] += 1;
            flow[v * size + u] -= 1;
            v = u;
        }
    }
    let mut follow = |start: usize| {
        let mut path = vec![start];
        let mut cur = 2 * start;
        while cur != sink {
            let next = (0..size).find(|&w| flow[cur * size + w] > 0).expect("flow is conserved");
            flow[cur * size + next] -= 1;
            if next % 2 == 0 {
                path.push(next / 2);
            }
            cur = next;
        }
        path
    };
    let pa = follow(a);
    let pb = follow(b);
    Some((pa, pb))
}
