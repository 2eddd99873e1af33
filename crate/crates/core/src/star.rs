//! 4-colorers for graphs with a normal spanning tree and no secant pairs:
//! whips, star^0-like and star^1-like trees, a general exact search, and
//! the flattening of arbitrary trees into star-like ones.

use serde::{Deserialize, Serialize};

use crate::coloring::{clique_cutset_combine, SubColoring};
use crate::digraph::{Coloring, Graph};
use crate::error::{precondition, Error, Result};
use crate::exact::k_coloring;
use crate::secancy::{color_no_secant, VertexOrdering};
use crate::tree::{
    classify_star, find_tree_secant_pair, is_normal, is_saturated, restrict_by_ancestry, saturate,
    tree_jumps, RootedTree, StarKind,
};

fn require_saturated(g: &Graph, t: &RootedTree) -> Result<()> {
    if !is_saturated(g, t)? {
        return Err(precondition("instance is not saturated with respect to its tree"));
    }
    Ok(())
}

fn require_no_secant(g: &Graph, t: &RootedTree) -> Result<()> {
    if !is_normal(g, t)? {
        return Err(precondition("tree is not normal in the graph"));
    }
    if let Some((first, second)) = find_tree_secant_pair(g, t)? {
        return Err(Error::SecantPair { first, second });
    }
    Ok(())
}

/// Vertices of a path-shaped tree from one end to the other.
fn path_order(t: &RootedTree) -> Option<Vec<usize>> {
    let n = t.n();
    let start = (0..n).find(|&v| t.degree(v) <= 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next: Vec<usize> = t
            .children(cur)
            .iter()
            .copied()
            .chain(t.parent(cur))
            .filter(|&w| w != prev)
            .collect();
        match next.as_slice() {
            [] => break,
            [w] => {
                prev = cur;
                cur = *w;
                order.push(cur);
            }
            _ => return None,
        }
    }
    (order.len() == n).then_some(order)
}

/// 3-coloring along the tree when the tree is a path.
fn color_path_shaped(g: &Graph, t: &RootedTree) -> Result<Coloring> {
    let order = path_order(t).ok_or_else(|| Error::Internal("tree is not a path".into()))?;
    color_no_secant(g, &VertexOrdering::new(order)?)
        .map_err(|e| Error::Internal(format!("path-shaped block: {e}")))
}

/// Graph and tree obtained by merging `merged` (a set of vertices forming
/// whole subtrees hanging from `attach`) into one new vertex placed under
/// `attach`. Returns the kept vertices, whose local indices come first; the
/// new vertex has the last index.
fn contract_into_new_vertex(
    g: &Graph,
    t: &RootedTree,
    merged: &[usize],
    attach: usize,
) -> Result<(Graph, RootedTree, Vec<usize>)> {
    let n = g.n();
    let mut gone = vec![false; n];
    for &v in merged {
        gone[v] = true;
    }
    let keep: Vec<usize> = (0..n).filter(|&v| !gone[v]).collect();
    let mut local = vec![usize::MAX; n];
    for (i, &v) in keep.iter().enumerate() {
        local[v] = i;
    }
    let new = keep.len();
    let mut edges: Vec<(usize, usize)> = g.induced(&keep).edges().to_vec();
    let mut linked = vec![false; n];
    for &u in merged {
        for &w in g.neighbors(u) {
            if !gone[w] && !linked[w] {
                linked[w] = true;
                edges.push((local[w], new));
            }
        }
    }
    if !linked[attach] {
        edges.push((local[attach], new));
    }
    let mut parent: Vec<Option<usize>> = keep
        .iter()
        .map(|&v| t.parent(v).map(|p| local[p]))
        .collect();
    parent.push(Some(local[attach]));
    let root = local[t.root()];
    Ok((Graph::new(new + 1, edges)?, RootedTree::new(root, parent)?, keep))
}

/// Proper 3-coloring of a saturated instance over a whip in which all
/// leaves below the node share one color.
pub fn color_whip(g: &Graph, t: &RootedTree) -> Result<Coloring> {
    require_saturated(g, t)?;
    if classify_star(t).kind != StarKind::Whip {
        return Err(precondition("tree is not a whip"));
    }
    whip_coloring(g, t)
}

fn whip_coloring(g: &Graph, t: &RootedTree) -> Result<Coloring> {
    let node = (0..t.n()).find(|&v| t.degree(v) > 2).expect("a whip has a node");
    let leaves = t.children(node).to_vec();
    let (g2, t2, keep) = contract_into_new_vertex(g, t, &leaves, node)?;
    let c2 = color_path_shaped(&g2, &t2)?;
    let leaf_color = c2.color(keep.len());
    let mut colors = vec![leaf_color; g.n()];
    for (i, &v) in keep.iter().enumerate() {
        colors[v] = c2.color(i);
    }
    Coloring::from_colors(colors)
}

/// Proper 4-coloring of a saturated instance over a star^0-like tree.
pub fn color_star0(g: &Graph, t: &RootedTree) -> Result<Coloring> {
    require_saturated(g, t)?;
    if classify_star(t).index() != Some(0) {
        return Err(precondition("tree is not star^0-like"));
    }
    star0_coloring(g, t)
}

/// Cut-set split on the jump `(y, z)`: the path `T[y, z]` and the rest with
/// the path interior removed.
fn split_on_jump(
    g: &Graph,
    t: &RootedTree,
    y: usize,
    z: usize,
    rest: impl FnOnce(&Graph, &RootedTree) -> Result<Coloring>,
) -> Result<Coloring> {
    let path = t.path(y, z);
    let mut inside = vec![false; g.n()];
    for &v in &path[1..path.len() - 1] {
        inside[v] = true;
    }
    let keep: Vec<usize> = (0..g.n()).filter(|&v| !inside[v]).collect();
    let (g2, t2) = restrict_by_ancestry(g, t, &keep)?;
    let c2 = rest(&g2, &t2)?;
    let c1 = color_no_secant(&g.induced(&path), &VertexOrdering::identity(path.len()))
        .map_err(|e| Error::Internal(format!("cut-set path block: {e}")))?;
    clique_cutset_combine(
        g,
        &[y, z],
        &[SubColoring::new(keep, c2)?, SubColoring::new(path, c1)?],
    )
}

fn star0_coloring(g: &Graph, t: &RootedTree) -> Result<Coloring> {
    let Some(x) = (0..t.n()).find(|&v| t.degree(v) > 2) else {
        return color_path_shaped(g, t);
    };
    if let Some(&(y, z)) = tree_jumps(g, t).iter().find(|&&(y, _)| t.is_ancestor(x, y)) {
        return split_on_jump(g, t, y, z, star0_coloring);
    }
    // G[T_x] is the bare subtree: contract it, then alternate below x.
    let sub = t.subtree(x);
    let mut colors = vec![0; g.n()];
    let base = match t.parent(x) {
        None => 1,
        Some(p) => {
            let (g2, t2, keep) = contract_into_new_vertex(g, t, &sub, p)?;
            let c2 = color_path_shaped(&g2, &t2)?;
            for (i, &v) in keep.iter().enumerate() {
                colors[v] = c2.color(i);
            }
            c2.color(keep.len())
        }
    };
    for &u in &sub {
        colors[u] = if (t.level(u) - t.level(x)).is_multiple_of(2) { base } else { 4 };
    }
    Coloring::new(4, colors)
}

/// How [`color_star1_with`] handles the core left after cut-set splits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Star1Mode {
    /// Exact 4-coloring search on the core.
    #[default]
    Search,
    /// Remove vertices of degree at most 3 and dominated vertices first,
    /// then search what remains.
    Strict,
}

/// One step of the star^1 decomposition, in the order applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "step")]
pub enum ReductionStep {
    CutSet { y: usize, z: usize },
    LowDegree { vertex: usize },
    Dominated { vertex: usize, by: usize },
    Search { vertices: usize, nodes: u64 },
}

/// Proper 4-coloring of a saturated instance over a star^1-like tree.
pub fn color_star1(g: &Graph, t: &RootedTree) -> Result<Coloring> {
    color_star1_with(g, t, Star1Mode::Search).map(|(c, _)| c)
}

/// [`color_star1`] with an explicit core strategy and a trace of the steps.
/// Vertex labels in the trace are local to the block being processed.
pub fn color_star1_with(g: &Graph, t: &RootedTree, mode: Star1Mode) -> Result<(Coloring, Vec<ReductionStep>)> {
    require_saturated(g, t)?;
    if classify_star(t).index() != Some(1) {
        return Err(precondition("tree is not star^1-like"));
    }
    let mut trace = Vec::new();
    let c = star1_coloring(g, t, mode, &mut trace)?;
    Ok((c, trace))
}

fn star1_coloring(g: &Graph, t: &RootedTree, mode: Star1Mode, trace: &mut Vec<ReductionStep>) -> Result<Coloring> {
    // a jump with no node strictly inside its tree path splits off a path block
    let jump = tree_jumps(g, t).into_iter().find(|&(y, z)| {
        let p = t.path(y, z);
        p[1..p.len() - 1].iter().all(|&v| t.degree(v) <= 2)
    });
    if let Some((y, z)) = jump {
        trace.push(ReductionStep::CutSet { y, z });
        return split_on_jump(g, t, y, z, |g2, t2| star1_coloring(g2, t2, mode, trace));
    }
    match mode {
        Star1Mode::Search => search_four(g, trace),
        Star1Mode::Strict => reduce_then_search(g, trace),
    }
}

fn search_four(g: &Graph, trace: &mut Vec<ReductionStep>) -> Result<Coloring> {
    let run = k_coloring(g, 4, None);
    trace.push(ReductionStep::Search {
        vertices: g.n(),
        nodes: run.nodes,
    });
    run.coloring
        .ok_or_else(|| Error::SearchExhausted(format!("no 4-coloring of a {}-vertex core", g.n())))
}

fn reduce_then_search(g: &Graph, trace: &mut Vec<ReductionStep>) -> Result<Coloring> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut removed: Vec<(usize, Option<usize>)> = Vec::new();
    let live_neighbors = |alive: &[bool], v: usize| -> Vec<usize> {
        g.neighbors(v).iter().copied().filter(|&w| alive[w]).collect()
    };
    loop {
        if let Some(v) = (0..n).find(|&v| alive[v] && live_neighbors(&alive, v).len() <= 3) {
            alive[v] = false;
            removed.push((v, None));
            trace.push(ReductionStep::LowDegree { vertex: v });
            continue;
        }
        let dominated = (0..n).filter(|&w| alive[w]).find_map(|w| {
            let nw = live_neighbors(&alive, w);
            (0..n)
                .find(|&u| {
                    u != w && alive[u] && !g.has_edge(u, w) && nw.iter().all(|&x| g.has_edge(u, x))
                })
                .map(|u| (w, u))
        });
        match dominated {
            Some((w, u)) => {
                alive[w] = false;
                removed.push((w, Some(u)));
                trace.push(ReductionStep::Dominated { vertex: w, by: u });
            }
            None => break,
        }
    }
    let core: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let core_coloring = search_four(&g.induced(&core), trace)?;
    let mut colors = vec![0usize; n];
    for (i, &v) in core.iter().enumerate() {
        colors[v] = core_coloring.color(i);
    }
    for &(v, by) in removed.iter().rev() {
        colors[v] = match by {
            Some(u) => colors[u],
            None => {
                let used: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                (1..=4).find(|c| !used.contains(c)).expect("at most 3 colored neighbors")
            }
        };
    }
    Coloring::new(4, colors)
}

/// Evidence that an instance has no proper 4-coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub instance: Graph,
    pub tree: RootedTree,
    pub search_nodes: u64,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "outcome")]
pub enum GeneralOutcome {
    Colored { coloring: Coloring, search_nodes: u64 },
    Counterexample(Box<CounterexampleReport>),
}

/// Exact search for a 4-coloring of any graph with a normal spanning tree
/// and no secant pairs. An exhausted search yields a counterexample report.
pub fn color_normal_nosecant_general(g: &Graph, t: &RootedTree) -> Result<GeneralOutcome> {
    require_no_secant(g, t)?;
    let run = k_coloring(g, 4, None);
    Ok(match run.coloring {
        Some(coloring) => GeneralOutcome::Colored {
            coloring,
            search_nodes: run.nodes,
        },
        None => GeneralOutcome::Counterexample(Box::new(CounterexampleReport {
            instance: g.clone(),
            tree: t.clone(),
            search_nodes: run.nodes,
            verdict: "no-4-coloring".into(),
        })),
    })
}

/// Which colorer produced a 4-coloring in [`four_color`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FourColorRoute {
    Path,
    Whip,
    Star0,
    Star1,
    Search,
}

/// Saturates `(g, t)` and colors it with the colorer matching the tree's
/// class. The result is a proper coloring of `g` with at most 4 colors.
pub fn four_color(g: &Graph, t: &RootedTree) -> Result<(Coloring, FourColorRoute)> {
    require_no_secant(g, t)?;
    let s = saturate(g, t)?;
    let class = classify_star(t);
    let (c, route) = match class.kind {
        StarKind::PathDegenerate => (color_path_shaped(&s, t)?, FourColorRoute::Path),
        StarKind::Whip => (whip_coloring(&s, t)?, FourColorRoute::Whip),
        StarKind::Star(0) => (star0_coloring(&s, t)?, FourColorRoute::Star0),
        StarKind::Star(1) => (star1_coloring(&s, t, Star1Mode::Search, &mut Vec::new())?, FourColorRoute::Star1),
        _ => match color_normal_nosecant_general(&s, t)? {
            GeneralOutcome::Colored { coloring, .. } => (coloring, FourColorRoute::Search),
            GeneralOutcome::Counterexample(report) => {
                return Err(Error::SearchExhausted(
                    serde_json::to_string(&report).expect("report serializes"),
                ))
            }
        },
    };
    Ok((c, route))
}

/// A star-like instance containing the input as an induced subgraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flattening {
    pub graph: Graph,
    pub tree: RootedTree,
    /// `correspondence[v]` is the image of input vertex `v`.
    pub correspondence: Vec<usize>,
    pub index: usize,
}

/// Extends a saturated instance to one whose tree is star^i-like by hanging
/// new tree vertices below the root and below leaves. Non-tree edges and
/// tree-order are unchanged, so the input is an induced subgraph.
pub fn flatten_to_star_like(g: &Graph, t: &RootedTree) -> Result<Flattening> {
    require_saturated(g, t)?;
    let n = t.n();
    let identity: Vec<usize> = (0..n).collect();
    if let Some(index) = classify_star(t).index() {
        return Ok(Flattening {
            graph: g.clone(),
            tree: t.clone(),
            correspondence: identity,
            index,
        });
    }
    let mut parent: Vec<Option<usize>> = t.parents().to_vec();
    let add = |parent: &mut Vec<Option<usize>>, under: usize| {
        parent.push(Some(under));
        parent.len() - 1
    };
    let root = t.root();
    // every branching vertex must be a node
    match t.children(root).len() {
        0 => {
            for _ in 0..3 {
                add(&mut parent, root);
            }
        }
        2 => {
            add(&mut parent, root);
        }
        _ => {}
    }
    let base = RootedTree::new(root, parent.clone())?;
    let nodes_on = |tr: &RootedTree, leaf: usize| tr.ancestors(leaf).iter().filter(|&&v| tr.degree(v) > 2).count();
    let target = base.leaves().iter().map(|&l| nodes_on(&base, l)).max().unwrap_or(0).max(1);
    for leaf in base.leaves() {
        let mut frontier = vec![leaf];
        for _ in nodes_on(&base, leaf)..target {
            let mut next = Vec::new();
            for v in frontier {
                next.push(add(&mut parent, v));
                next.push(add(&mut parent, v));
            }
            frontier = next;
        }
    }
    let tree = RootedTree::new(root, parent)?;
    let edges: std::collections::BTreeSet<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .chain(tree.arcs())
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    let graph = Graph::new(tree.n(), edges)?;
    let index = classify_star(&tree)
        .index()
        .ok_or_else(|| Error::Internal("flattened tree is not star-like".into()))?;
    let out = Flattening {
        graph,
        tree,
        correspondence: identity,
        index,
    };
    check_flattening(g, t, &out).map_err(Error::Internal)?;
    Ok(out)
}

/// Checks the flattening postconditions: star-like tree, normality, no
/// secant pairs, equal non-tree edge sets under the correspondence, and
/// preserved tree-order.
pub fn check_flattening(g: &Graph, t: &RootedTree, f: &Flattening) -> std::result::Result<(), String> {
    if classify_star(&f.tree).index() != Some(f.index) {
        return Err("reported index does not match the tree".into());
    }
    if !is_normal(&f.graph, &f.tree).map_err(|e| e.to_string())? {
        return Err("tree is not normal".into());
    }
    if find_tree_secant_pair(&f.graph, &f.tree).map_err(|e| e.to_string())?.is_some() {
        return Err("secant pair present".into());
    }
    let map = &f.correspondence;
    let non_tree = |g: &Graph, t: &RootedTree| -> Vec<(usize, usize)> {
        g.edges().iter().copied().filter(|&(u, v)| !t.is_tree_edge(u, v)).collect()
    };
    let mut mapped: Vec<(usize, usize)> = non_tree(g, t)
        .into_iter()
        .map(|(u, v)| (map[u].min(map[v]), map[u].max(map[v])))
        .collect();
    mapped.sort_unstable();
    if mapped != non_tree(&f.graph, &f.tree) {
        return Err("non-tree edges differ".into());
    }
    for a in 0..t.n() {
        for b in 0..t.n() {
            if t.is_ancestor(a, b) && !f.tree.is_ancestor(map[a], map[b]) {
                return Err(format!("tree-order between {a} and {b} is lost"));
            }
        }
    }
    Ok(())
}
