//! Independent brute-force oracles shared by the integration tests. None of
//! these reuse the library's search code.

#![allow(dead_code, clippy::needless_range_loop)]

use dicolor::{Digraph, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random oriented graph: each unordered pair gets an arc with probability
/// `p`, oriented uniformly.
pub fn random_digraph(n: usize, p: f64, rng: &mut impl Rng) -> Digraph {
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
    }
    Digraph::new(n, arcs).unwrap()
}

pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Chromatic number by dynamic programming over vertex subsets: the least
/// number of independent sets covering everything.
pub fn chromatic_number_dp(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    let full = (1usize << n) - 1;
    let adj: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | 1 << w))
        .collect();
    let mut independent = vec![false; full + 1];
    independent[0] = true;
    for s in 1..=full {
        let v = s.trailing_zeros() as usize;
        let rest = s & !(1 << v);
        independent[s] = independent[rest] && adj[v] & rest == 0;
    }
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for s in 1..=full {
        // the lowest vertex must sit in some independent subset of s
        let low = s & s.wrapping_neg();
        let mut sub = s;
        while sub > 0 {
            if sub & low != 0 && independent[sub] && best[s & !sub] != usize::MAX {
                best[s] = best[s].min(best[s & !sub] + 1);
            }
            sub = (sub - 1) & s;
        }
    }
    best[full]
}

/// Every simple dipath starting at `x`, as (vertices) lists.
pub fn all_paths_from(d: &Digraph, x: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = vec![x];
    fn go(d: &Digraph, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if path.len() > 1 {
            out.push(path.clone());
        }
        let last = *path.last().unwrap();
        for &w in d.out_neighbors(last) {
            if !path.contains(&w) {
                path.push(w);
                go(d, path, out);
                path.pop();
            }
        }
    }
    go(d, &mut path, &mut out);
    out
}

fn interior_mask(p: &[usize]) -> u64 {
    p[1..p.len() - 1].iter().fold(0, |m, &v| m | 1 << v)
}

/// Paths grouped by (start, end) with their interior masks and lengths.
fn path_table(d: &Digraph) -> Vec<Vec<Vec<(usize, u64)>>> {
    let n = d.n();
    let mut table = vec![vec![Vec::new(); n]; n];
    for x in 0..n {
        for p in all_paths_from(d, x) {
            table[x][*p.last().unwrap()].push((p.len() - 1, interior_mask(&p)));
        }
    }
    table
}

pub fn brute_two_blocks(d: &Digraph, k1: usize, k2: usize) -> bool {
    let t = path_table(d);
    let n = d.n();
    for x in 0..n {
        for y in 0..n {
            let ps = &t[x][y];
            for i in 0..ps.len() {
                for j in i + 1..ps.len() {
                    let (l1, m1) = ps[i];
                    let (l2, m2) = ps[j];
                    let fits = (l1 >= k1 && l2 >= k2) || (l1 >= k2 && l2 >= k1);
                    if fits && m1 & m2 == 0 {
                        return true;
                    }
                }
            }
        }
    }
    false
}

pub fn brute_bispindle(d: &Digraph, k1: usize, k2: usize, k3: usize) -> bool {
    let t = path_table(d);
    let n = d.n();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let ps = &t[x][y];
            for &(l3, m3) in t[y][x].iter().filter(|p| p.0 >= k3) {
                for i in 0..ps.len() {
                    for j in i + 1..ps.len() {
                        let (l1, m1) = ps[i];
                        let (l2, m2) = ps[j];
                        let fits = (l1 >= k1 && l2 >= k2) || (l1 >= k2 && l2 >= k1);
                        if fits && m1 & m2 == 0 && (m1 | m2) & m3 == 0 && l3 >= k3 {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

/// Order (vertex count) of a longest dipath, by exhaustive enumeration.
pub fn longest_dipath_order(d: &Digraph) -> usize {
    let mut best = usize::from(d.n() > 0);
    for x in 0..d.n() {
        for p in all_paths_from(d, x) {
            best = best.max(p.len());
        }
    }
    best
}

/// Transitive closure by repeated squaring of the boolean reachability matrix.
pub fn reachability(d: &Digraph) -> Vec<Vec<bool>> {
    let n = d.n();
    let mut r: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| u == v || d.has_arc(u, v)).collect()).collect();
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// Ancestor lists from parent pointers, root first.
pub fn ancestor_list(parent: &[Option<usize>], x: usize) -> Vec<usize> {
    let mut out = vec![x];
    let mut v = x;
    while let Some(p) = parent[v] {
        out.push(p);
        v = p;
    }
    out.reverse();
    out
}

/// Random recursive tree on `n` vertices rooted at 0.
pub fn random_parent_array(n: usize, rng: &mut impl Rng) -> Vec<Option<usize>> {
    (0..n).map(|v| if v == 0 { None } else { Some(rng.gen_range(0..v)) }).collect()
}

/// Proper-coloring check straight from the edge list.
pub fn proper(g: &Graph, colors: &[usize]) -> bool {
    colors.len() == g.n() && colors.iter().all(|&c| c >= 1) && g.edges().iter().all(|&(u, v)| colors[u] != colors[v])
}

fn levels(parent: &[Option<usize>]) -> Vec<usize> {
    (0..parent.len()).map(|v| ancestor_list(parent, v).len() - 1).collect()
}

fn is_anc(parent: &[Option<usize>], a: usize, b: usize) -> bool {
    ancestor_list(parent, b).contains(&a)
}

/// Every edge joins an ancestor to a descendant.
pub fn normal_oracle(g: &Graph, parent: &[Option<usize>]) -> bool {
    (0..parent.len()).all(|v| parent[v].is_none_or(|p| g.has_edge(p, v)))
        && g.edges().iter().all(|&(u, v)| is_anc(parent, u, v) || is_anc(parent, v, u))
}

/// Some two non-tree edges lie on one root path with interleaving levels.
pub fn tree_secant_oracle(g: &Graph, parent: &[Option<usize>]) -> bool {
    let lv = levels(parent);
    let jumps: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|&&(u, v)| parent[u] != Some(v) && parent[v] != Some(u))
        .map(|&(u, v)| if lv[u] < lv[v] { (u, v) } else { (v, u) })
        .collect();
    for (i, &(a, b)) in jumps.iter().enumerate() {
        for &(c, d) in &jumps[i + 1..] {
            let same_path = is_anc(parent, b, d) || is_anc(parent, d, b);
            let cross = (lv[a] < lv[c] && lv[c] < lv[b] && lv[b] < lv[d]) || (lv[c] < lv[a] && lv[a] < lv[d] && lv[d] < lv[b]);
            if same_path && cross {
                return true;
            }
        }
    }
    false
}

/// Normal, free of secant pairs, and no comparable non-adjacent pair can be
/// added without creating one.
pub fn saturated_oracle(g: &Graph, parent: &[Option<usize>]) -> bool {
    if !normal_oracle(g, parent) || tree_secant_oracle(g, parent) {
        return false;
    }
    let n = g.n();
    (0..n).all(|u| {
        (0..n).all(|v| {
            u >= v
                || g.has_edge(u, v)
                || !(is_anc(parent, u, v) || is_anc(parent, v, u))
                || tree_secant_oracle(&g.with_edge(u, v).unwrap(), parent)
        })
    })
}

/// Some two jumps of `order` interleave.
pub fn ordering_secant_oracle(g: &Graph, order: &[usize]) -> bool {
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let jumps: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
        .filter(|&(a, b)| b - a > 1)
        .collect();
    jumps.iter().any(|&(a, b)| jumps.iter().any(|&(c, d)| a < c && c < b && b < d))
}

fn is_dipath(d: &Digraph, p: &[usize]) -> bool {
    p.len() >= 2 && p.windows(2).all(|w| d.has_arc(w[0], w[1]))
}

fn all_distinct(vs: impl IntoIterator<Item = usize>) -> bool {
    let mut seen = std::collections::HashSet::new();
    vs.into_iter().all(|v| seen.insert(v))
}

/// Lengths (arc counts) dominate the required lengths under some matching
/// of the two largest-first orders.
fn dominates(mut have: Vec<usize>, mut need: Vec<usize>) -> bool {
    have.sort_unstable();
    need.sort_unstable();
    have.iter().zip(&need).all(|(h, n)| h >= n)
}

/// Two internally disjoint `x→y` dipaths of lengths at least `k1`, `k2`.
pub fn two_blocks_oracle(d: &Digraph, paths: &[Vec<usize>], k1: usize, k2: usize) -> bool {
    let [p, q] = paths else { return false };
    is_dipath(d, p)
        && is_dipath(d, q)
        && p[0] == q[0]
        && p.last() == q.last()
        && p[0] != *p.last().unwrap()
        && all_distinct(p.iter().chain(&q[1..q.len() - 1]).copied())
        && dominates(vec![p.len() - 1, q.len() - 1], vec![k1, k2])
}

/// Two internally disjoint `x→y` dipaths and a `y→x` dipath, all three
/// internally disjoint, with lengths at least `k1`, `k2` and `k3`.
pub fn bispindle_oracle(d: &Digraph, paths: &[Vec<usize>], k1: usize, k2: usize, k3: usize) -> bool {
    let [p, q, r] = paths else { return false };
    two_blocks_oracle(d, &[p.clone(), q.clone()], k1, k2)
        && is_dipath(d, r)
        && r[0] == *p.last().unwrap()
        && *r.last().unwrap() == p[0]
        && all_distinct(p.iter().chain(&q[1..q.len() - 1]).chain(&r[1..r.len() - 1]).copied())
        && r.len() > k3
}

/// Blocks in traversal order of one cycle: even blocks are dipaths, odd
/// blocks are dipaths read backwards, and block `i` has length at least `ks[i]`.
pub fn multi_block_oracle(d: &Digraph, blocks: &[Vec<usize>], ks: &[usize]) -> bool {
    let t = blocks.len();
    if t != ks.len() || t < 2 || t % 2 == 1 {
        return false;
    }
    let mut walk: Vec<usize> = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let arcs_along: Vec<usize> = if i % 2 == 0 { b.clone() } else { b.iter().rev().copied().collect() };
        if !is_dipath(d, &arcs_along) || b.len() - 1 < ks[i] {
            return false;
        }
        match walk.last() {
            Some(&last) if b[0] != last => return false,
            Some(_) => walk.extend(&b[1..]),
            None => walk.extend(b),
        }
    }
    walk.first() == walk.last() && all_distinct(walk[..walk.len() - 1].iter().copied())
}

/// Blocks whose length equals the required one.
pub fn exact_blocks(blocks: &[Vec<usize>], ks: &[usize]) -> usize {
    blocks.iter().zip(ks).filter(|(b, &k)| b.len() - 1 == k).count()
}
