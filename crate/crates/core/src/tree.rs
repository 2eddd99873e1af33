//! Rooted spanning trees: ancestry, normal trees, maximal out-trees,
//! tree-relative secancy, saturation and the star-like taxonomy.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, Graph};
use crate::error::{invalid, precondition, Error, Result};
use crate::secancy::{interleaving_pairs, Edge, SecantPair};

/// How a tree is read: as an undirected normal tree or as an out-tree whose
/// arcs point away from the root.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreeView {
    #[default]
    Normal,
    OutTree,
}

/// A spanning tree of `0..n` with a designated root.
///
/// Vertex queries index internal tables directly and panic on vertices
/// outside `0..n`; use [`RootedTree::check_vertex`] on untrusted input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeJson", into = "TreeJson")]
pub struct RootedTree {
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    level: Vec<usize>,
    tin: Vec<usize>,
    tout: Vec<usize>,
    preorder: Vec<usize>,
    view: TreeView,
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    root: usize,
    parent: Vec<i64>,
}

impl TryFrom<TreeJson> for RootedTree {
    type Error = Error;

    fn try_from(raw: TreeJson) -> Result<Self> {
        let parent = raw
            .parent
            .iter()
            .map(|&p| match p {
                -1 => Ok(None),
                p if p >= 0 => Ok(Some(p as usize)),
                p => Err(invalid(format!("parent index {p} is negative"))),
            })
            .collect::<Result<Vec<_>>>()?;
        RootedTree::new(raw.root, parent)
    }
}

impl From<RootedTree> for TreeJson {
    fn from(t: RootedTree) -> Self {
        TreeJson {
            root: t.root,
            parent: t.parent.iter().map(|p| p.map_or(-1, |p| p as i64)).collect(),
        }
    }
}

impl RootedTree {
    /// Validates that `parent` describes a tree spanning `0..parent.len()`
    /// rooted at `root`.
    pub fn new(root: usize, parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if root >= n {
            return Err(invalid(format!("root {root} out of range for n = {n}")));
        }
        if parent[root].is_some() {
            return Err(invalid("root must have no parent"));
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            match *p {
                None if v != root => {
                    return Err(invalid(format!("vertex {v} has no parent but is not the root")))
                }
                Some(p) if p >= n || p == v => {
                    return Err(invalid(format!("vertex {v} has invalid parent {p}")))
                }
                Some(p) => children[p].push(v),
                None => {}
            }
        }
        let mut level = vec![0; n];
        let mut tin = vec![0; n];
        let mut tout = vec![0; n];
        let mut preorder = Vec::with_capacity(n);
        let mut stack = vec![(root, 0usize)];
        tin[root] = 0;
        preorder.push(root);
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if let Some(&c) = children[v].get(*next) {
                *next += 1;
                level[c] = level[v] + 1;
                tin[c] = preorder.len();
                preorder.push(c);
                stack.push((c, 0));
            } else {
                tout[v] = preorder.len();
                stack.pop();
            }
        }
        if preorder.len() != n {
            return Err(invalid("parent links contain a cycle or do not reach the root"));
        }
        Ok(RootedTree {
            root,
            parent,
            children,
            level,
            tin,
            tout,
            preorder,
            view: TreeView::Normal,
        })
    }

    /// Tree from `(parent, child)` pairs.
    pub fn from_arcs(n: usize, root: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut parent = vec![None; n];
        for &(p, c) in arcs {
            if c >= n || parent[c].is_some() {
                return Err(invalid(format!("vertex {c} has in-degree above 1")));
            }
            parent[c] = Some(p);
        }
        RootedTree::new(root, parent)
    }

    pub fn with_view(mut self, view: TreeView) -> Self {
        self.view = view;
        self
    }

    pub fn view(&self) -> TreeView {
        self.view
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn check_vertex(&self, x: usize) -> Result<()> {
        if x >= self.n() {
            return Err(invalid(format!("vertex {x} is not in the tree")));
        }
        Ok(())
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn children(&self, x: usize) -> &[usize] {
        &self.children[x]
    }

    /// Number of edges on the path from the root to `x`.
    pub fn level(&self, x: usize) -> usize {
        self.level[x]
    }

    pub fn height(&self) -> usize {
        self.level.iter().copied().max().unwrap_or(0)
    }

    /// Degree of `x` in the undirected tree.
    pub fn degree(&self, x: usize) -> usize {
        self.children[x].len() + usize::from(self.parent[x].is_some())
    }

    /// `a ≤_T b`: `a` lies on the path from the root to `b`.
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.tin[a] <= self.tin[b] && self.tout[b] <= self.tout[a]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.is_ancestor(a, b) || self.is_ancestor(b, a)
    }

    pub fn is_tree_edge(&self, a: usize, b: usize) -> bool {
        self.parent[a] == Some(b) || self.parent[b] == Some(a)
    }

    /// Vertices of `T[root, x]`, root first.
    pub fn ancestors(&self, x: usize) -> Vec<usize> {
        let mut out = vec![x];
        let mut v = x;
        while let Some(p) = self.parent[v] {
            out.push(p);
            v = p;
        }
        out.reverse();
        out
    }

    /// Vertices of the subtree rooted at `x`, in preorder.
    pub fn subtree(&self, x: usize) -> Vec<usize> {
        self.preorder[self.tin[x]..self.tout[x]].to_vec()
    }

    pub fn subtree_size(&self, x: usize) -> usize {
        self.tout[x] - self.tin[x]
    }

    pub fn preorder(&self) -> &[usize] {
        &self.preorder
    }

    /// Common ancestor of maximum level.
    pub fn lca(&self, x: usize, y: usize) -> usize {
        let (mut a, mut b) = (x, y);
        while self.level[a] > self.level[b] {
            a = self.parent[a].unwrap();
        }
        while self.level[b] > self.level[a] {
            b = self.parent[b].unwrap();
        }
        while a != b {
            a = self.parent[a].unwrap();
            b = self.parent[b].unwrap();
        }
        a
    }

    /// Tree path from `a` to `b`, both included.
    pub fn path(&self, a: usize, b: usize) -> Vec<usize> {
        let c = self.lca(a, b);
        let mut up = Vec::new();
        let mut v = a;
        while v != c {
            up.push(v);
            v = self.parent[v].unwrap();
        }
        up.push(c);
        let mut down = Vec::new();
        let mut v = b;
        while v != c {
            down.push(v);
            v = self.parent[v].unwrap();
        }
        up.extend(down.into_iter().rev());
        up
    }

    /// Childless vertices other than the root.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&v| v != self.root && self.children[v].is_empty())
            .collect()
    }

    /// Paths from the root to each childless vertex.
    pub fn root_leaf_paths(&self) -> Vec<Vec<usize>> {
        if self.n() == 1 {
            return vec![vec![self.root]];
        }
        self.leaves().into_iter().map(|l| self.ancestors(l)).collect()
    }

    /// `(parent, child)` pairs in child order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.n()).filter_map(|v| self.parent[v].map(|p| (p, v))).collect()
    }

    pub fn as_graph(&self) -> Graph {
        Graph::new(self.n(), self.arcs()).expect("tree edges are simple")
    }
}

fn check_spans(g: &Graph, t: &RootedTree) -> Result<()> {
    if g.n() != t.n() {
        return Err(invalid(format!(
            "tree spans {} vertices, graph has {}",
            t.n(),
            g.n()
        )));
    }
    Ok(())
}

/// Every edge joins tree-comparable vertices.
pub fn is_normal(g: &Graph, t: &RootedTree) -> Result<bool> {
    check_spans(g, t)?;
    Ok(g.edges().iter().all(|&(u, v)| t.comparable(u, v)))
}

fn require_normal(g: &Graph, t: &RootedTree) -> Result<()> {
    if !is_normal(g, t)? {
        return Err(precondition("tree is not normal in the graph"));
    }
    Ok(())
}

/// Depth-first spanning tree, which is always normal. Neighbors are explored
/// in increasing order.
pub fn dfs_normal_tree(g: &Graph, root: usize) -> Result<RootedTree> {
    let n = g.n();
    if root >= n {
        return Err(invalid(format!("root {root} out of range for n = {n}")));
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut stack = vec![(root, 0usize)];
    while let Some(&mut (v, ref mut next)) = stack.last_mut() {
        if let Some(&w) = g.neighbors(v).get(*next) {
            *next += 1;
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::Disconnected);
    }
    RootedTree::new(root, parent)
}

/// Every tree arc `(parent, child)` is an arc of `d`.
pub fn is_out_tree_of(d: &Digraph, t: &RootedTree) -> bool {
    t.n() == d.n() && t.arcs().iter().all(|&(p, c)| d.has_arc(p, c))
}

/// Every arc `(x, y)` with `level(x) ≥ level(y)` has `y` as an ancestor of `x`.
pub fn is_maximal_out_tree(d: &Digraph, t: &RootedTree) -> bool {
    is_out_tree_of(d, t)
        && d.arcs()
            .iter()
            .all(|&(x, y)| t.level(x) < t.level(y) || t.is_ancestor(y, x))
}

/// One rehanging of `vertex` under `new_parent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewireStep {
    pub vertex: usize,
    pub old_parent: usize,
    pub new_parent: usize,
    pub old_level: usize,
    pub new_level: usize,
}

/// Rehangs vertices until the out-tree is maximal. Each step takes the first
/// arc `(x, y)` (lexicographically) with `level(x) ≥ level(y)` and `y` not an
/// ancestor of `x`, and makes `x` the parent of `y`.
pub fn make_maximal_out_tree(d: &Digraph, t: &RootedTree) -> Result<(RootedTree, Vec<RewireStep>)> {
    if !is_out_tree_of(d, t) {
        return Err(precondition("tree is not a spanning out-tree of the digraph"));
    }
    let n = d.n();
    let mut tree = t.clone();
    let mut steps = Vec::new();
    loop {
        let bad = d
            .arcs()
            .iter()
            .copied()
            .find(|&(x, y)| tree.level(x) >= tree.level(y) && !tree.is_ancestor(y, x));
        let Some((x, y)) = bad else { break };
        let mut parent = tree.parents().to_vec();
        let old_parent = parent[y].expect("the root is an ancestor of every vertex");
        parent[y] = Some(x);
        let next = RootedTree::new(tree.root(), parent)?;
        let step = RewireStep {
            vertex: y,
            old_parent,
            new_parent: x,
            old_level: tree.level(y),
            new_level: next.level(y),
        };
        if step.new_level <= step.old_level {
            return Err(Error::Internal(format!("rewiring did not raise the level of {y}")));
        }
        steps.push(step);
        if steps.len() > n * n {
            return Err(Error::Internal("rewiring exceeded n² steps".into()));
        }
        tree = next;
    }
    Ok((tree.with_view(TreeView::OutTree), steps))
}

/// Comparable edges that are not tree edges, as `(lower, upper)` with the
/// lower end an ancestor of the upper end, sorted by levels.
pub fn tree_jumps(g: &Graph, t: &RootedTree) -> Vec<Edge> {
    let mut out: Vec<Edge> = g
        .edges()
        .iter()
        .filter(|&&(u, v)| t.comparable(u, v) && !t.is_tree_edge(u, v))
        .map(|&(u, v)| if t.is_ancestor(u, v) { (u, v) } else { (v, u) })
        .collect();
    out.sort_by_key(|&(a, b)| (t.level(a), t.level(b), a, b));
    out
}

/// Whether two jumps (given as `(lower, upper)`) are secant along some
/// root path: their upper ends are comparable and their levels interleave.
pub fn jumps_secant(t: &RootedTree, e: Edge, f: Edge) -> bool {
    if !t.comparable(e.1, f.1) {
        return false;
    }
    let (l, m) = (t.level(e.0), t.level(e.1));
    let (p, q) = (t.level(f.0), t.level(f.1));
    (l < p && p < m && m < q) || (p < l && l < q && q < m)
}

fn normalize_pair(e: Edge, f: Edge) -> SecantPair {
    if e <= f {
        (e, f)
    } else {
        (f, e)
    }
}

/// Edge pairs that are secant along some root-to-leaf path of `t`.
pub fn secant_pairs_wrt_tree(g: &Graph, t: &RootedTree) -> Result<Vec<SecantPair>> {
    require_normal(g, t)?;
    let all = tree_jumps(g, t);
    let mut found = BTreeSet::new();
    for path in t.root_leaf_paths() {
        let mut on_path = vec![false; t.n()];
        for &v in &path {
            on_path[v] = true;
        }
        let js: Vec<Edge> = all.iter().copied().filter(|&(a, b)| on_path[a] && on_path[b]).collect();
        for (e, f) in interleaving_pairs(&js, |v| t.level(v), false) {
            found.insert(normalize_pair(e, f));
        }
    }
    Ok(found.into_iter().collect())
}

/// First tree-secant pair under the pairwise predicate, if any.
pub fn find_tree_secant_pair(g: &Graph, t: &RootedTree) -> Result<Option<SecantPair>> {
    require_normal(g, t)?;
    let js = tree_jumps(g, t);
    for (i, &e) in js.iter().enumerate() {
        for &f in &js[i + 1..] {
            if jumps_secant(t, e, f) {
                return Ok(Some((e, f)));
            }
        }
    }
    Ok(None)
}

fn comparable_non_edges(g: &Graph, t: &RootedTree) -> Vec<Edge> {
    let mut out = Vec::new();
    for b in 0..t.n() {
        let mut a = t.parent(b);
        while let Some(x) = a {
            if !g.has_edge(x, b) {
                out.push((x, b));
            }
            a = t.parent(x);
        }
    }
    out.sort_by_key(|&(a, b)| (t.level(a), t.level(b), a, b));
    out
}

fn saturate_in_order(g: &Graph, t: &RootedTree, candidates: &[Edge]) -> Result<Graph> {
    if let Some((first, second)) = find_tree_secant_pair(g, t)? {
        return Err(Error::SecantPair { first, second });
    }
    let mut jumps = tree_jumps(g, t);
    let mut added = Vec::new();
    for &e in candidates {
        let is_jump = !t.is_tree_edge(e.0, e.1);
        if is_jump && jumps.iter().any(|&f| jumps_secant(t, e, f)) {
            continue;
        }
        if is_jump {
            jumps.push(e);
        }
        added.push(e);
    }
    Graph::new(g.n(), g.edges().iter().copied().chain(added))
}

/// Adds comparable non-edges, scanned by (lower level, upper level, index),
/// whenever no secant pair is created. Adding edges only adds constraints,
/// so a single pass yields a saturated supergraph.
pub fn saturate(g: &Graph, t: &RootedTree) -> Result<Graph> {
    require_normal(g, t)?;
    saturate_in_order(g, t, &comparable_non_edges(g, t))
}

/// Saturation with the candidate edges scanned in random order.
pub fn saturate_shuffled<R: Rng + ?Sized>(g: &Graph, t: &RootedTree, rng: &mut R) -> Result<Graph> {
    require_normal(g, t)?;
    let mut cands = comparable_non_edges(g, t);
    cands.shuffle(rng);
    saturate_in_order(g, t, &cands)
}

/// Normal, free of tree-secant pairs, and every comparable non-edge would
/// create a secant pair.
pub fn is_saturated(g: &Graph, t: &RootedTree) -> Result<bool> {
    if !is_normal(g, t)? || find_tree_secant_pair(g, t)?.is_some() {
        return Ok(false);
    }
    let jumps = tree_jumps(g, t);
    Ok(comparable_non_edges(g, t)
        .into_iter()
        .all(|e| !t.is_tree_edge(e.0, e.1) && jumps.iter().any(|&f| jumps_secant(t, e, f))))
}

/// Kind of a tree in the star-like hierarchy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "index")]
pub enum StarKind {
    /// Star^0-like tree whose node has only leaf children.
    Whip,
    /// Star^i-like tree for the given `i`.
    Star(usize),
    /// No vertex of degree above 2.
    PathDegenerate,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarClass {
    pub kind: StarKind,
    /// Vertices of degree above 2.
    pub nodes: Vec<usize>,
}

impl StarClass {
    /// The `i` of a star^i-like tree; whips are star^0-like.
    pub fn index(&self) -> Option<usize> {
        match self.kind {
            StarKind::Whip => Some(0),
            StarKind::Star(i) => Some(i),
            _ => None,
        }
    }
}

/// Classifies `t` in the star-like hierarchy.
///
/// Exactly one node gives star^0 (a whip when the node's children are all
/// childless). Higher indices are read top-down from the root: each node's
/// branches must all be bare paths (rank 0 node) or all have the same rank.
pub fn classify_star(t: &RootedTree) -> StarClass {
    let nodes: Vec<usize> = (0..t.n()).filter(|&v| t.degree(v) > 2).collect();
    let kind = match nodes.len() {
        0 => StarKind::PathDegenerate,
        1 => {
            let x = nodes[0];
            if t.children(x).iter().all(|&c| t.children(c).is_empty()) {
                StarKind::Whip
            } else {
                StarKind::Star(0)
            }
        }
        _ => match branch_rank(t, t.root()) {
            Some(r) if r >= 1 => StarKind::Star(r as usize),
            _ => StarKind::Other,
        },
    };
    StarClass { kind, nodes }
}

/// Rank of the branch hanging from `v`: −1 for a bare path, `i` when it is a
/// star^i-like tree entered from its root side, `None` otherwise.
fn branch_rank(t: &RootedTree, v: usize) -> Option<i64> {
    let mut x = v;
    while t.degree(x) <= 2 {
        match t.children(x) {
            [] => return Some(-1),
            [c] => x = *c,
            _ => return None,
        }
    }
    let mut rank = None;
    for &c in t.children(x) {
        let r = branch_rank(t, c)?;
        if rank.is_some_and(|q| q != r) {
            return None;
        }
        rank = Some(r);
    }
    rank.map(|r| r + 1)
}

/// A jump with its taxonomy flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JumpInfo {
    pub lower: usize,
    pub upper: usize,
    /// No other jump has both ends on the tree path between `lower` and `upper`.
    pub minimal: bool,
    /// The lower end has the largest level among all lower ends.
    pub higher: bool,
}

impl JumpInfo {
    /// `lower ≤_T x ≤_T upper`.
    pub fn is_over(&self, t: &RootedTree, x: usize) -> bool {
        t.is_ancestor(self.lower, x) && t.is_ancestor(x, self.upper)
    }
}

pub fn jump_taxonomy(g: &Graph, t: &RootedTree) -> Result<Vec<JumpInfo>> {
    require_normal(g, t)?;
    let js = tree_jumps(g, t);
    let top = js.iter().map(|&(a, _)| t.level(a)).max();
    let within = |e: Edge, x: usize| t.is_ancestor(e.0, x) && t.is_ancestor(x, e.1);
    Ok(js
        .iter()
        .map(|&e| JumpInfo {
            lower: e.0,
            upper: e.1,
            minimal: !js.iter().any(|&f| f != e && within(e, f.0) && within(e, f.1)),
            higher: Some(t.level(e.0)) == top,
        })
        .collect())
}

/// Restriction of `(g, t)` to `keep`, re-indexed locally (local `i` is
/// `keep[i]`). Each kept vertex hangs from its nearest kept proper ancestor,
/// so tree-order is preserved and normality and absence of secant pairs carry
/// over. Fails when the kept set has no unique topmost vertex.
pub fn restrict_by_ancestry(g: &Graph, t: &RootedTree, keep: &[usize]) -> Result<(Graph, RootedTree)> {
    let mut local = vec![usize::MAX; t.n()];
    for (i, &v) in keep.iter().enumerate() {
        local[v] = i;
    }
    let mut parent = vec![None; keep.len()];
    let mut root = None;
    for (i, &v) in keep.iter().enumerate() {
        let mut a = t.parent(v);
        while let Some(x) = a {
            if local[x] != usize::MAX {
                break;
            }
            a = t.parent(x);
        }
        match a {
            Some(x) => parent[i] = Some(local[x]),
            None if root.is_none() => root = Some(i),
            None => return Err(invalid("kept vertices do not have a unique topmost vertex")),
        }
    }
    let root = root.ok_or_else(|| invalid("empty restriction"))?;
    Ok((g.induced(keep), RootedTree::new(root, parent)?))
}
