//! Linear orderings, jumps, secant pairs and the 3-coloring of graphs that
//! admit an ordering without secant pairs.

use serde::{Deserialize, Serialize};

use crate::digraph::{Coloring, Graph};
use crate::error::{invalid, Error, Result};

/// An edge written with its earlier endpoint (w.r.t. some ordering) first.
pub type Edge = (usize, usize);

/// A pair of interleaving jumps.
pub type SecantPair = (Edge, Edge);

/// A permutation of the vertices together with its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "OrderingJson", into = "OrderingJson")]
pub struct VertexOrdering {
    order: Vec<usize>,
    position: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct OrderingJson {
    order: Vec<usize>,
}

impl TryFrom<OrderingJson> for VertexOrdering {
    type Error = Error;

    fn try_from(raw: OrderingJson) -> Result<Self> {
        VertexOrdering::new(raw.order)
    }
}

impl From<VertexOrdering> for OrderingJson {
    fn from(l: VertexOrdering) -> Self {
        OrderingJson { order: l.order }
    }
}

impl VertexOrdering {
    /// Fails unless `order` is a permutation of `0..order.len()`.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(invalid(format!("ordering is not a permutation of 0..{n}")));
            }
            position[v] = i;
        }
        Ok(VertexOrdering { order, position })
    }

    pub fn identity(n: usize) -> Self {
        VertexOrdering {
            order: (0..n).collect(),
            position: (0..n).collect(),
        }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

fn check_cover(g: &Graph, l: &VertexOrdering) -> Result<()> {
    if g.n() != l.len() {
        return Err(invalid(format!(
            "ordering has {} vertices, graph has {}",
            l.len(),
            g.n()
        )));
    }
    Ok(())
}

/// Edges whose endpoints are not consecutive in `l`, earlier endpoint first,
/// sorted by the endpoints' positions.
pub fn jumps(g: &Graph, l: &VertexOrdering) -> Result<Vec<Edge>> {
    check_cover(g, l)?;
    let mut out: Vec<Edge> = g
        .edges()
        .iter()
        .map(|&(u, v)| if l.position(u) < l.position(v) { (u, v) } else { (v, u) })
        .filter(|&(a, b)| l.position(b) - l.position(a) > 1)
        .collect();
    out.sort_by_key(|&(a, b)| (l.position(a), l.position(b)));
    Ok(out)
}

/// All interleaving pairs of jumps. Each pair is listed once, the jump with
/// the earlier lower end first.
pub fn secant_pairs(g: &Graph, l: &VertexOrdering) -> Result<Vec<SecantPair>> {
    let js = jumps(g, l)?;
    Ok(interleaving_pairs(&js, |v| l.position(v), false))
}

/// First secant pair found, if any.
pub fn find_secant_pair(g: &Graph, l: &VertexOrdering) -> Result<Option<SecantPair>> {
    let js = jumps(g, l)?;
    Ok(interleaving_pairs(&js, |v| l.position(v), true).into_iter().next())
}

/// Interleaving pairs among `js`, which must be sorted by lower-end position.
pub(crate) fn interleaving_pairs(
    js: &[Edge],
    pos: impl Fn(usize) -> usize,
    first_only: bool,
) -> Vec<SecantPair> {
    let mut out = Vec::new();
    for (i, &(a, b)) in js.iter().enumerate() {
        let (l, m) = (pos(a), pos(b));
        for &(c, d) in &js[i + 1..] {
            let (p, q) = (pos(c), pos(d));
            if p >= m {
                break;
            }
            if l < p && p < m && m < q {
                out.push(((a, b), (c, d)));
                if first_only {
                    return out;
                }
            }
        }
    }
    out
}

/// Degeneracy and the elimination order obtained by repeatedly removing a
/// vertex of minimum degree (lowest index on ties).
pub fn degeneracy(g: &Graph) -> (usize, VertexOrdering) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("a vertex remains");
        d = d.max(deg[v]);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    (d, VertexOrdering::new(order).expect("elimination order is a permutation"))
}

/// Proper coloring with at most 3 colors of a graph without secant pairs
/// w.r.t. `l`. The precondition is checked.
pub fn color_no_secant(g: &Graph, l: &VertexOrdering) -> Result<Coloring> {
    if let Some((first, second)) = find_secant_pair(g, l)? {
        return Err(Error::SecantPair { first, second });
    }
    color_no_secant_trusted(g, l)
}

/// Same as [`color_no_secant`] without the secant check. If the caller's
/// claim is wrong the elimination meets a vertex of degree above 2 and an
/// internal error is returned.
pub fn color_no_secant_trusted(g: &Graph, l: &VertexOrdering) -> Result<Coloring> {
    check_cover(g, l)?;
    let n = g.n();
    let mut seq: Vec<usize> = l.order().to_vec();
    let mut alive = vec![true; n];
    let mut idx = vec![0usize; n];
    let mut removal = Vec::with_capacity(n);
    while !seq.is_empty() {
        for (i, &v) in seq.iter().enumerate() {
            idx[v] = i;
        }
        // A shortest jump x_i x_j forces deg(x_{i+1}) <= 2 in the current graph.
        let mut best: Option<(usize, usize)> = None;
        for &v in &seq {
            for &w in g.neighbors(v) {
                if alive[w] && idx[w] > idx[v] + 1 {
                    let cand = (idx[w] - idx[v], idx[v]);
                    if best.is_none_or(|b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
        }
        let at = match best {
            Some((_, i)) => i + 1,
            None => 0,
        };
        let v = seq[at];
        let live_deg = g.neighbors(v).iter().filter(|&&w| alive[w]).count();
        if live_deg > 2 {
            return Err(Error::Internal(format!(
                "vertex {v} has degree {live_deg} during no-secant elimination"
            )));
        }
        alive[v] = false;
        seq.remove(at);
        removal.push(v);
    }
    let mut colors = vec![0usize; n];
    for &v in removal.iter().rev() {
        let used: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
        colors[v] = (1..).find(|c| !used.contains(c)).unwrap();
    }
    Coloring::from_colors(colors)
}
