//! Conditional colorers: each returns a proper coloring within its bound or
//! a certificate that the digraph contains the forbidden subdivision.

use serde::{Deserialize, Serialize};

use crate::coloring::{
    gallai_roy_coloring, gallai_roy_path, greedy_coloring, partition_sum_coloring, product_union_coloring,
    SubColoring,
};
use crate::digraph::{is_proper, underlying_graph, Coloring, Digraph, Graph};
use crate::error::{invalid, precondition, Error, Result};
use crate::exact::is_hamiltonian_sequence;
use crate::secancy::{color_no_secant, find_secant_pair, VertexOrdering};
use crate::star::{four_color, FourColorRoute};
use crate::subdivision::{check_certificate, PatternSpec, SubdivisionCertificate};
use crate::tree::{
    classify_star, find_tree_secant_pair, is_out_tree_of, make_maximal_out_tree, RewireStep, RootedTree,
    StarKind,
};

/// Either a coloring within a declared bound or a subdivision certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum ColorOrCertificate {
    Coloring { coloring: Coloring, bound: usize },
    Certificate {
        certificate: SubdivisionCertificate,
        spec: PatternSpec,
    },
}

impl ColorOrCertificate {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            ColorOrCertificate::Coloring { coloring, .. } => Some(coloring),
            ColorOrCertificate::Certificate { .. } => None,
        }
    }

    pub fn certificate(&self) -> Option<&SubdivisionCertificate> {
        match self {
            ColorOrCertificate::Certificate { certificate, .. } => Some(certificate),
            ColorOrCertificate::Coloring { .. } => None,
        }
    }

    /// Checks the branch invariant against `d`: a proper coloring of the
    /// underlying graph within the bound, or a valid certificate.
    pub fn check(&self, d: &Digraph) -> std::result::Result<(), String> {
        match self {
            ColorOrCertificate::Coloring { coloring, bound } => {
                if !is_proper(&underlying_graph(d), coloring).map_err(|e| e.to_string())? {
                    return Err("coloring is not proper".into());
                }
                if coloring.palette() > *bound {
                    return Err(format!("palette {} exceeds bound {bound}", coloring.palette()));
                }
                Ok(())
            }
            ColorOrCertificate::Certificate { certificate, spec } => check_certificate(d, certificate, spec),
        }
    }
}

fn certified(d: &Digraph, certificate: SubdivisionCertificate, spec: PatternSpec) -> Result<ColorOrCertificate> {
    check_certificate(d, &certificate, &spec)
        .map_err(|e| Error::Internal(format!("constructed certificate is invalid: {e}")))?;
    Ok(ColorOrCertificate::Certificate { certificate, spec })
}

fn join(mut a: Vec<usize>, b: Vec<usize>) -> Vec<usize> {
    debug_assert_eq!(a.last(), b.first());
    a.extend_from_slice(&b[1..]);
    a
}

/// Two-blocks certificate from two crossing chords `{l, m}` and `{p, q}`
/// of a dipath with `l < p < m < q`. `sub(a, b)` is the dipath segment from
/// `a` to a later vertex `b`.
fn crossing_chords(d: &Digraph, [l, p, m, q]: [usize; 4], sub: impl Fn(usize, usize) -> Vec<usize>) -> SubdivisionCertificate {
    match (d.has_arc(l, m), d.has_arc(p, q)) {
        (true, true) => SubdivisionCertificate::two_blocks(join(sub(l, p), vec![p, q]), join(vec![l, m], sub(m, q))),
        (false, false) => SubdivisionCertificate::two_blocks(join(vec![m, l], sub(l, p)), join(sub(m, q), vec![q, p])),
        (true, false) => SubdivisionCertificate::two_blocks(sub(l, p), join(join(vec![l, m], sub(m, q)), vec![q, p])),
        (false, true) => SubdivisionCertificate::two_blocks(sub(m, q), join(join(vec![m, l], sub(l, p)), vec![p, q])),
    }
}

/// Vertices of `seq` whose index is `i` modulo `k`, in sequence order.
fn residue_class(seq: &[usize], k: usize, i: usize) -> Vec<usize> {
    seq.iter().copied().skip(i).step_by(k).collect()
}

/// Colors a digraph with a Hamiltonian dipath `p` using at most `3·k1`
/// colors, `k1 ≥ k2` after normalization, or finds a `C(k1, k2)` subdivision.
pub fn color_hamdipath_c2free(d: &Digraph, p: &[usize], k1: usize, k2: usize) -> Result<ColorOrCertificate> {
    let spec = PatternSpec::two_blocks(k1, k2)?;
    let PatternSpec::TwoBlocks { k1: k, .. } = spec else { unreachable!() };
    if !is_hamiltonian_sequence(d, p, false) {
        return Err(invalid("sequence is not a Hamiltonian dipath"));
    }
    let mut pos = vec![0; d.n()];
    for (i, &v) in p.iter().enumerate() {
        pos[v] = i;
    }
    let g = underlying_graph(d);
    let mut parts = Vec::new();
    for i in 0..k.min(p.len()) {
        let class = residue_class(p, k, i);
        let gi = g.induced(&class);
        let order = VertexOrdering::identity(class.len());
        if let Some(((a, b), (c, e))) = find_secant_pair(&gi, &order)? {
            let mut ends = [class[a], class[b], class[c], class[e]];
            ends.sort_by_key(|&v| pos[v]);
            let cert = crossing_chords(d, ends, |u, v| p[pos[u]..=pos[v]].to_vec());
            return certified(d, cert, spec);
        }
        parts.push(SubColoring::new(class, color_no_secant(&gi, &order)?)?);
    }
    Ok(ColorOrCertificate::Coloring {
        coloring: partition_sum_coloring(&g, &parts)?,
        bound: 3 * k,
    })
}

/// Longest dipath found by depth-first search within `budget` extensions.
fn long_dipath(d: &Digraph, alive: &[bool], budget: &mut u64) -> Vec<usize> {
    fn grow(d: &Digraph, alive: &[bool], on: &mut [bool], path: &mut Vec<usize>, best: &mut Vec<usize>, budget: &mut u64) {
        if path.len() > best.len() {
            *best = path.clone();
        }
        let v = *path.last().unwrap();
        for &w in d.out_neighbors(v) {
            if *budget == 0 {
                return;
            }
            if alive[w] && !on[w] {
                *budget -= 1;
                on[w] = true;
                path.push(w);
                grow(d, alive, on, path, best, budget);
                path.pop();
                on[w] = false;
            }
        }
    }
    let mut best = Vec::new();
    let mut on = vec![false; d.n()];
    let live = alive.iter().filter(|&&a| a).count();
    for s in (0..d.n()).filter(|&s| alive[s]) {
        if best.len() == live {
            break;
        }
        on[s] = true;
        let mut path = vec![s];
        grow(d, alive, &mut on, &mut path, &mut best, budget);
        on[s] = false;
        if best.is_empty() {
            best = vec![s];
        }
    }
    best
}

/// Greedy dipath cover: repeatedly removes a longest dipath found within a
/// search budget.
pub fn greedy_dipath_cover(d: &Digraph) -> Vec<Vec<usize>> {
    let mut alive = vec![true; d.n()];
    let mut cover = Vec::new();
    while alive.iter().any(|&a| a) {
        let mut budget = 200_000;
        let path = long_dipath(d, &alive, &mut budget);
        for &v in &path {
            alive[v] = false;
        }
        cover.push(path);
    }
    cover
}

/// Colors `d` by covering it with dipaths and coloring each path's induced
/// subdigraph with [`color_hamdipath_c2free`] on its own palette. The bound
/// is `3·(number of paths)·max(k1, k2)`. Returns the cover alongside.
pub fn color_pathcover_c2free(d: &Digraph, k1: usize, k2: usize) -> Result<(ColorOrCertificate, Vec<Vec<usize>>)> {
    let k = k1.max(k2);
    let cover = greedy_dipath_cover(d);
    let mut parts = Vec::new();
    for path in &cover {
        let sub = d.induced(path);
        let local: Vec<usize> = (0..path.len()).collect();
        match color_hamdipath_c2free(&sub, &local, k1, k2)? {
            ColorOrCertificate::Coloring { coloring, .. } => parts.push(SubColoring::new(path.clone(), coloring)?),
            ColorOrCertificate::Certificate { mut certificate, spec } => {
                for q in &mut certificate.paths {
                    for v in q.iter_mut() {
                        *v = path[*v];
                    }
                }
                certificate.x = path[certificate.x];
                certificate.y = certificate.y.map(|y| path[y]);
                return Ok((certified(d, certificate, spec)?, cover));
            }
        }
    }
    let coloring = partition_sum_coloring(&underlying_graph(d), &parts)?;
    Ok((
        ColorOrCertificate::Coloring {
            coloring,
            bound: 3 * cover.len() * k,
        },
        cover,
    ))
}

/// Segment of the cycle `c` from index `a` forward to index `b`, wrapping.
fn cycle_segment(c: &[usize], a: usize, b: usize) -> Vec<usize> {
    let n = c.len();
    let len = (b + n - a) % n;
    (0..=len).map(|s| c[(a + s) % n]).collect()
}

/// Colors a digraph with a Hamiltonian dicycle `c` using at most `4·k`
/// colors, `k = max(k1, k2, k3)`, or finds a `B(k1, k2; k3)` subdivision.
pub fn color_hamcycle_bispindlefree(d: &Digraph, c: &[usize], k1: usize, k2: usize, k3: usize) -> Result<ColorOrCertificate> {
    let spec = PatternSpec::bispindle(k1, k2, k3)?;
    let k = k1.max(k2).max(k3);
    if !is_hamiltonian_sequence(d, c, true) || c.len() < 2 {
        return Err(invalid("sequence is not a Hamiltonian dicycle"));
    }
    let g = underlying_graph(d);
    let mut parts = Vec::new();
    for i in 0..k.min(c.len()) {
        // cycle indices of the class, the first one set apart
        let idx: Vec<usize> = (i..c.len()).step_by(k).collect();
        let rest: Vec<usize> = idx[1..].iter().map(|&j| c[j]).collect();
        let gi = g.induced(&rest);
        let order = VertexOrdering::identity(rest.len());
        if let Some(((a, b), (e, f))) = find_secant_pair(&gi, &order)? {
            let mut ends = [idx[a + 1], idx[b + 1], idx[e + 1], idx[f + 1]];
            ends.sort_unstable();
            let [l, p, m, q] = ends;
            let seg = |a: usize, b: usize| cycle_segment(c, a, b);
            let (xl, xp, xm, xq) = (c[l], c[p], c[m], c[q]);
            let cert = match (d.has_arc(xl, xm), d.has_arc(xp, xq)) {
                (true, true) => SubdivisionCertificate::bispindle(
                    join(seg(l, p), vec![xp, xq]),
                    join(vec![xl, xm], seg(m, q)),
                    seg(q, l),
                ),
                (true, false) => SubdivisionCertificate::bispindle(
                    join(vec![xq, xp], seg(p, m)),
                    join(seg(q, l), vec![xl, xm]),
                    seg(m, q),
                ),
                (false, true) => SubdivisionCertificate::bispindle(
                    join(seg(p, m), vec![xm, xl]),
                    join(vec![xp, xq], seg(q, l)),
                    seg(l, p),
                ),
                (false, false) => SubdivisionCertificate::bispindle(
                    join(vec![xm, xl], seg(l, p)),
                    join(seg(m, q), vec![xq, xp]),
                    seg(p, m),
                ),
            };
            return certified(d, cert, spec);
        }
        let inner = color_no_secant(&gi, &order)?;
        let mut colors = vec![4];
        colors.extend_from_slice(inner.colors());
        let mut vertices = vec![c[i]];
        vertices.extend(rest);
        parts.push(SubColoring::new(vertices, Coloring::new(4, colors)?)?);
    }
    Ok(ColorOrCertificate::Coloring {
        coloring: partition_sum_coloring(&g, &parts)?,
        bound: 4 * k,
    })
}

/// Colors a digraph with a Hamiltonian dicycle `c` using at most `2k − 1`
/// colors, `k = max(k1, k3) ≥ 2`, or finds a `B(k1, 1; k3)` subdivision.
/// Without a certificate every vertex is adjacent only to its `2k − 2`
/// cyclically nearest vertices.
pub fn color_hamcycle_b1free(d: &Digraph, c: &[usize], k1: usize, k3: usize) -> Result<ColorOrCertificate> {
    let spec = PatternSpec::bispindle(k1, 1, k3)?;
    let k = k1.max(k3);
    if k < 2 {
        return Err(precondition("the degree bound needs max(k1, k3) ≥ 2"));
    }
    let n = c.len();
    if !is_hamiltonian_sequence(d, c, true) || n < 2 {
        return Err(invalid("sequence is not a Hamiltonian dicycle"));
    }
    let g = underlying_graph(d);
    if n < 2 * k {
        return Ok(ColorOrCertificate::Coloring {
            coloring: Coloring::new(n, (1..=n).collect())?,
            bound: 2 * k - 1,
        });
    }
    let mut idx = vec![0; n];
    for (i, &v) in c.iter().enumerate() {
        idx[v] = i;
    }
    for s in 0..n {
        for &w in d.out_neighbors(c[s]) {
            let u = idx[w];
            let t = (u + n - s) % n;
            if (k..=n - k).contains(&t) {
                let cert = SubdivisionCertificate::bispindle(
                    cycle_segment(c, s, u),
                    vec![c[s], c[u]],
                    cycle_segment(c, u, s),
                );
                return certified(d, cert, spec);
            }
        }
    }
    Ok(ColorOrCertificate::Coloring {
        coloring: greedy_coloring(&g, c)?,
        bound: 2 * k - 1,
    })
}

/// Per-class summary of the out-tree pipeline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutTreeClass {
    pub class: usize,
    pub size: usize,
    pub comparable_arcs: usize,
    pub incomparable_arcs: usize,
    pub tree_kind: StarKind,
    pub route: Option<FourColorRoute>,
    pub comparable_palette: usize,
    pub incomparable_palette: usize,
}

/// Result of [`color_outtree_c2free`] with its intermediate data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutTreeOutcome {
    pub result: ColorOrCertificate,
    pub rewiring: Vec<RewireStep>,
    pub tree: RootedTree,
    pub classes: Vec<OutTreeClass>,
}

/// Colors a digraph with a spanning out-tree `t` using at most
/// `4·k1·(k2 − 1)` colors, `k1 ≥ k2 ≥ 2` after normalization, or finds a
/// `C(k1, k2)` subdivision.
pub fn color_outtree_c2free(d: &Digraph, t: &RootedTree, k1: usize, k2: usize) -> Result<OutTreeOutcome> {
    let spec = PatternSpec::two_blocks(k1, k2)?;
    let PatternSpec::TwoBlocks { k1, k2 } = spec else { unreachable!() };
    if k2 < 2 {
        return Err(precondition("the out-tree colorer needs k2 ≥ 2"));
    }
    if !is_out_tree_of(d, t) {
        return Err(precondition("tree is not a spanning out-tree of the digraph"));
    }
    let (tree, rewiring) = make_maximal_out_tree(d, t)?;
    let tree_kind = classify_star(&tree).kind;
    let g = underlying_graph(d);
    let n = d.n();
    let mut parts = Vec::new();
    let mut classes = Vec::new();
    let finish = |result, classes| OutTreeOutcome {
        result,
        rewiring: rewiring.clone(),
        tree: tree.clone(),
        classes,
    };
    for i in 0..k1 {
        let class: Vec<usize> = (0..n).filter(|&v| tree.level(v) % k1 == i).collect();
        if class.is_empty() {
            continue;
        }
        let mut in_class = vec![false; n];
        for &v in &class {
            in_class[v] = true;
        }
        let (a1, a2): (Vec<_>, Vec<_>) = d
            .arcs()
            .iter()
            .copied()
            .filter(|&(u, v)| in_class[u] && in_class[v])
            .partition(|&(u, v)| tree.comparable(u, v));

        // comparable arcs together with the tree edges
        let h = Graph::new(n, tree.arcs().into_iter().chain(a1.iter().copied()))?;
        if let Some(((l, m), (p, q))) = find_tree_secant_pair(&h, &tree)? {
            let mut ends = [l, m, p, q];
            ends.sort_by_key(|&v| tree.level(v));
            let cert = crossing_chords(d, ends, |u, v| tree.path(u, v));
            return Ok(finish(certified(d, cert, spec)?, classes));
        }
        let (c_all, route) = four_color(&h, &tree)?;
        let c1 = c_all.restrict(&class);

        let mut local = vec![usize::MAX; n];
        for (j, &v) in class.iter().enumerate() {
            local[v] = j;
        }
        let d2 = Digraph::new(class.len(), a2.iter().map(|&(u, v)| (local[u], local[v])))?;
        let c2 = gallai_roy_coloring(&d2).map_err(|_| Error::Internal("incomparable arcs form a cycle".into()))?;
        if c2.palette() >= k2 {
            let y: Vec<usize> = gallai_roy_path(&d2, &c2)[..k2].iter().map(|&j| class[j]).collect();
            let last = y[k2 - 1];
            let cert = match (0..k2 - 1).rev().find(|&j| tree.is_ancestor(y[j], last)) {
                Some(a) => {
                    let x = tree.lca(y[a], y[a + 1]);
                    SubdivisionCertificate::two_blocks(join(tree.path(x, y[a + 1]), y[a + 1..].to_vec()), tree.path(x, last))
                }
                None => {
                    let x = tree.lca(y[0], last);
                    SubdivisionCertificate::two_blocks(tree.path(x, last), join(tree.path(x, y[0]), y.clone()))
                }
            };
            return Ok(finish(certified(d, cert, spec)?, classes));
        }

        let g1 = Graph::new(class.len(), a1.iter().map(|&(u, v)| (local[u], local[v])))?;
        let g2 = underlying_graph(&d2);
        let combined = product_union_coloring(&g1, &c1, &g2, &c2)?;
        classes.push(OutTreeClass {
            class: i,
            size: class.len(),
            comparable_arcs: a1.len(),
            incomparable_arcs: a2.len(),
            tree_kind,
            route: Some(route),
            comparable_palette: c1.colors_used(),
            incomparable_palette: c2.palette(),
        });
        parts.push(SubColoring::new(class, combined)?);
    }
    let coloring = partition_sum_coloring(&g, &parts)?;
    Ok(finish(
        ColorOrCertificate::Coloring {
            coloring,
            bound: 4 * k1 * (k2 - 1),
        },
        classes,
    ))
}
