//! Coloring combinators and primitive colorers.

use serde::{Deserialize, Serialize};

use crate::digraph::{is_proper, Coloring, Digraph, Graph};
use crate::error::{invalid, precondition, Error, Result};

/// A coloring of the subgraph induced by `vertices`; `coloring` is indexed
/// like `vertices`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubColoring {
    pub vertices: Vec<usize>,
    pub coloring: Coloring,
}

impl SubColoring {
    pub fn new(vertices: Vec<usize>, coloring: Coloring) -> Result<Self> {
        if vertices.len() != coloring.len() {
            return Err(invalid("sub-coloring length differs from its vertex list"));
        }
        Ok(SubColoring { vertices, coloring })
    }

    fn check_proper(&self, g: &Graph) -> Result<()> {
        if let Some(&v) = self.vertices.iter().find(|&&v| v >= g.n()) {
            return Err(invalid(format!("vertex {v} out of range")));
        }
        if !is_proper(&g.induced(&self.vertices), &self.coloring)? {
            return Err(precondition("a part coloring is not proper on its induced subgraph"));
        }
        Ok(())
    }
}

fn require_proper(g: &Graph, c: &Coloring, what: &str) -> Result<()> {
    if !is_proper(g, c)? {
        return Err(precondition(format!("{what} is not proper")));
    }
    Ok(())
}

/// Coloring of `g1 ∪ g2` by color pairs, flattened as `(a−1)·p2 + b`.
pub fn product_union_coloring(g1: &Graph, c1: &Coloring, g2: &Graph, c2: &Coloring) -> Result<Coloring> {
    if g1.n() != g2.n() {
        return Err(invalid("product union needs graphs on the same vertex set"));
    }
    require_proper(g1, c1, "first coloring")?;
    require_proper(g2, c2, "second coloring")?;
    let p2 = c2.palette();
    let colors = (0..g1.n()).map(|v| (c1.color(v) - 1) * p2 + c2.color(v)).collect();
    Coloring::new(c1.palette() * p2, colors)
}

/// Colors each part with its own block of colors, offset by the palettes of
/// the parts before it.
pub fn partition_sum_coloring(g: &Graph, parts: &[SubColoring]) -> Result<Coloring> {
    let mut colors = vec![0usize; g.n()];
    let mut offset = 0;
    for part in parts {
        part.check_proper(g)?;
        for (i, &v) in part.vertices.iter().enumerate() {
            if colors[v] != 0 {
                return Err(invalid(format!("vertex {v} lies in two parts")));
            }
            colors[v] = offset + part.coloring.color(i);
        }
        offset += part.coloring.palette();
    }
    if let Some(v) = colors.iter().position(|&c| c == 0) {
        return Err(invalid(format!("vertex {v} lies in no part")));
    }
    Coloring::new(offset, colors)
}

/// Colors each vertex by the order of the longest dipath starting there.
pub fn gallai_roy_coloring(d: &Digraph) -> Result<Coloring> {
    let order = d.topological_order().ok_or(Error::Cyclic)?;
    let mut colors = vec![0usize; d.n()];
    for &v in order.iter().rev() {
        colors[v] = 1 + d.out_neighbors(v).iter().map(|&w| colors[w]).max().unwrap_or(0);
    }
    Coloring::from_colors(colors)
}

/// Longest dipath (by vertex count) from the color classes of a Gallai–Roy
/// coloring: starts at a vertex of the top color and steps down one color
/// at a time.
pub fn gallai_roy_path(d: &Digraph, c: &Coloring) -> Vec<usize> {
    let Some(mut v) = (0..d.n()).max_by_key(|&v| (c.color(v), std::cmp::Reverse(v))) else {
        return Vec::new();
    };
    let mut path = vec![v];
    while c.color(v) > 1 {
        v = *d
            .out_neighbors(v)
            .iter()
            .find(|&&w| c.color(w) + 1 == c.color(v))
            .expect("a Gallai–Roy color is realized by a successor");
        path.push(v);
    }
    path
}

/// Glues colorings of the blocks `G[X_i ∪ S]` of a clique cut-set `S`.
///
/// Each block lists `S` among its vertices. Colors of block 0 are kept and
/// every other block is permuted so that it agrees with block 0 on `S`.
pub fn clique_cutset_combine(g: &Graph, s: &[usize], blocks: &[SubColoring]) -> Result<Coloring> {
    if !g.is_clique(s) {
        return Err(invalid("cut-set is not a clique"));
    }
    if blocks.len() < 2 {
        return Err(invalid("a cut-set decomposition needs at least two blocks"));
    }
    let n = g.n();
    let mut in_s = vec![false; n];
    for &v in s {
        in_s[v] = true;
    }
    let mut owner = vec![usize::MAX; n];
    for (b, block) in blocks.iter().enumerate() {
        block.check_proper(g)?;
        let mut has_s = 0;
        let mut own = 0;
        for &v in &block.vertices {
            if in_s[v] {
                has_s += 1;
            } else if owner[v] != usize::MAX {
                return Err(invalid(format!("vertex {v} lies in two blocks")));
            } else {
                owner[v] = b;
                own += 1;
            }
        }
        if has_s != s.len() {
            return Err(invalid(format!("block {b} does not contain the cut-set")));
        }
        if own == 0 {
            return Err(invalid(format!("block {b} has no vertex outside the cut-set")));
        }
        if block.coloring.palette() < s.len() {
            return Err(invalid(format!("block {b} palette is smaller than the cut-set")));
        }
    }
    if let Some(v) = (0..n).find(|&v| !in_s[v] && owner[v] == usize::MAX) {
        return Err(invalid(format!("vertex {v} lies in no block")));
    }
    if let Some(&(u, v)) = g
        .edges()
        .iter()
        .find(|&&(u, v)| !in_s[u] && !in_s[v] && owner[u] != owner[v])
    {
        return Err(invalid(format!("edge {{{u},{v}}} crosses blocks, so S is not a cut-set")));
    }
    let palette = blocks.iter().map(|b| b.coloring.palette()).max().unwrap();
    let color_in = |block: &SubColoring, v: usize| {
        let i = block.vertices.iter().position(|&w| w == v).unwrap();
        block.coloring.color(i)
    };
    let mut colors = vec![0usize; n];
    for (b, block) in blocks.iter().enumerate() {
        // perm[c] is the output color of block color c
        let mut perm = vec![0usize; palette + 1];
        let mut taken = vec![false; palette + 1];
        for &v in s {
            let target = color_in(&blocks[0], v);
            perm[color_in(block, v)] = target;
            taken[target] = true;
        }
        let mut free = (1..=palette).filter(|&c| !taken[c]);
        for slot in perm.iter_mut().skip(1) {
            if *slot == 0 {
                *slot = free.next().unwrap();
            }
        }
        for (i, &v) in block.vertices.iter().enumerate() {
            if !in_s[v] || b == 0 {
                colors[v] = perm[block.coloring.color(i)];
            }
        }
    }
    Coloring::new(palette, colors)
}

/// First-fit coloring along `order`.
pub fn greedy_coloring(g: &Graph, order: &[usize]) -> Result<Coloring> {
    let n = g.n();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(invalid("greedy order is not a permutation of the vertices"));
    }
    let mut colors = vec![0usize; n];
    let mut used = vec![false; n + 2];
    for &v in order {
        for &w in g.neighbors(v) {
            used[colors[w]] = true;
        }
        colors[v] = (1..).find(|&c| !used[c]).unwrap();
        for &w in g.neighbors(v) {
            used[colors[w]] = false;
        }
    }
    Coloring::from_colors(colors)
}
