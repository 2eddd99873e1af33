//! Digraphs, simple graphs and colorings.
//!
//! Vertices are dense indices `0..n`. A [`Digraph`] built with [`Digraph::new`]
//! is an orientation of a simple graph: no loops, no repeated arcs and no
//! digons. [`Digraph::new_permissive`] lifts the digon restriction.

use std::collections::BTreeSet;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DigraphJson", into = "DigraphJson")]
pub struct Digraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct DigraphJson {
    n: usize,
    arcs: Vec<[usize; 2]>,
}

impl TryFrom<DigraphJson> for Digraph {
    type Error = Error;

    fn try_from(raw: DigraphJson) -> Result<Self> {
        Digraph::new(raw.n, raw.arcs.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<Digraph> for DigraphJson {
    fn from(d: Digraph) -> Self {
        DigraphJson {
            n: d.n,
            arcs: d.arcs.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl Digraph {
    /// Builds an oriented graph. Loops, repeated arcs, out-of-range endpoints
    /// and digons are rejected.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::build(n, arcs, false)
    }

    /// Like [`Digraph::new`] but allows both `(u, v)` and `(v, u)`.
    pub fn new_permissive(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        Self::build(n, arcs, true)
    }

    pub fn empty(n: usize) -> Self {
        Self::build(n, std::iter::empty(), false).expect("edgeless digraph is valid")
    }

    fn build(
        n: usize,
        arcs: impl IntoIterator<Item = (usize, usize)>,
        allow_digons: bool,
    ) -> Result<Self> {
        let mut matrix = vec![false; n * n];
        let mut list = Vec::new();
        for (u, v) in arcs {
            if u >= n || v >= n {
                return Err(invalid(format!("arc ({u},{v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(invalid(format!("loop at vertex {u}")));
            }
            if matrix[u * n + v] {
                return Err(invalid(format!("duplicate arc ({u},{v})")));
            }
            if !allow_digons && matrix[v * n + u] {
                return Err(invalid(format!("digon between {u} and {v}")));
            }
            matrix[u * n + v] = true;
            list.push((u, v));
        }
        list.sort_unstable();
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in &list {
            out[u].push(v);
            inn[v].push(u);
        }
        for l in inn.iter_mut() {
            l.sort_unstable();
        }
        Ok(Digraph {
            n,
            arcs: list,
            out,
            inn,
            matrix,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.matrix[u * self.n + v]
    }

    /// True when `u` and `v` are joined by an arc in either direction.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn is_tournament(&self) -> bool {
        (0..self.n).all(|u| (u + 1..self.n).all(|v| self.has_arc(u, v) ^ self.has_arc(v, u)))
    }

    /// Kahn order, or `None` when a directed cycle exists.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.inn[v].len()).collect();
        let mut queue: VecDeque<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in &self.out[u] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Subdigraph induced by `vertices`; local index `i` stands for `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let arcs = self
            .arcs
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]));
        Digraph::new_permissive(vertices.len(), arcs).expect("induced subdigraph is valid")
    }

    /// Spanning subdigraph keeping only the arcs accepted by `keep`.
    pub fn filter_arcs(&self, mut keep: impl FnMut(usize, usize) -> bool) -> Digraph {
        let arcs: Vec<_> = self.arcs.iter().copied().filter(|&(u, v)| keep(u, v)).collect();
        Digraph::new_permissive(self.n, arcs).expect("arc subset is valid")
    }

    pub fn without_arc(&self, u: usize, v: usize) -> Digraph {
        self.filter_arcs(|a, b| (a, b) != (u, v))
    }

    fn reachable_from(&self, s: usize, forward: bool) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            let next = if forward { &self.out[u] } else { &self.inn[u] };
            for &w in next {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

/// Underlying simple graph: `{u, v}` is an edge iff `(u, v)` or `(v, u)` is an arc.
pub fn underlying_graph(d: &Digraph) -> Graph {
    Graph::new(d.n(), d.arcs().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect::<BTreeSet<_>>())
        .expect("underlying graph of a digraph is simple")
}

/// One strongly connected component covering every vertex.
pub fn is_strong(d: &Digraph) -> bool {
    if d.n() <= 1 {
        return true;
    }
    d.reachable_from(0, true).iter().all(|&b| b) && d.reachable_from(0, false).iter().all(|&b| b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    matrix: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        Graph::new(raw.n, raw.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut matrix = vec![false; n * n];
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(invalid(format!("edge {{{u},{v}}} out of range for n = {n}")));
            }
            if u == v {
                return Err(invalid(format!("loop at vertex {u}")));
            }
            if matrix[u * n + v] {
                return Err(invalid(format!("duplicate edge {{{u},{v}}}")));
            }
            matrix[u * n + v] = true;
            matrix[v * n + u] = true;
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
            matrix,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, std::iter::empty()).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("complete graph is valid")
    }

    pub fn cycle(n: usize) -> Self {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle needs n >= 3")
    }

    pub fn path(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path graph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.matrix[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Subgraph induced by `vertices`; local index `i` stands for `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]));
        Graph::new(vertices.len(), edges).expect("induced subgraph is valid")
    }

    /// Union of edge sets over the same vertex count.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(invalid("graph union needs equal vertex counts"));
        }
        let set: BTreeSet<_> = self.edges.iter().chain(other.edges.iter()).copied().collect();
        Graph::new(self.n, set)
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        Graph::new(self.n, self.edges.iter().copied().chain(std::iter::once((u, v))))
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }
}

/// A total map from vertices to colors `1..=palette`.
///
/// Properness is not part of the type; see [`is_proper`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ColoringJson", into = "ColoringJson")]
pub struct Coloring {
    palette: usize,
    colors: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    palette: usize,
    colors: Vec<usize>,
}

impl TryFrom<ColoringJson> for Coloring {
    type Error = Error;

    fn try_from(raw: ColoringJson) -> Result<Self> {
        Coloring::new(raw.palette, raw.colors)
    }
}

impl From<Coloring> for ColoringJson {
    fn from(c: Coloring) -> Self {
        ColoringJson {
            palette: c.palette,
            colors: c.colors,
        }
    }
}

impl Coloring {
    pub fn new(palette: usize, colors: Vec<usize>) -> Result<Self> {
        if let Some((v, &c)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > palette) {
            return Err(invalid(format!("vertex {v} has color {c} outside 1..={palette}")));
        }
        Ok(Coloring { palette, colors })
    }

    /// Palette equal to the largest color present.
    pub fn from_colors(colors: Vec<usize>) -> Result<Self> {
        let palette = colors.iter().copied().max().unwrap_or(0);
        Coloring::new(palette, colors)
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn colors_used(&self) -> usize {
        self.colors.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn restrict(&self, vertices: &[usize]) -> Coloring {
        let colors = vertices.iter().map(|&v| self.colors[v]).collect();
        Coloring {
            palette: self.palette,
            colors,
        }
    }
}

/// True iff no edge of `g` is monochromatic under `c`.
pub fn is_proper(g: &Graph, c: &Coloring) -> Result<bool> {
    if c.len() != g.n() {
        return Err(invalid(format!(
            "coloring covers {} vertices, graph has {}",
            c.len(),
            g.n()
        )));
    }
    Ok(g.edges().iter().all(|&(u, v)| c.color(u) != c.color(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digon_collapses_in_underlying_graph() {
        let d = Digraph::new_permissive(2, [(0, 1), (1, 0)]).unwrap();
        let g = underlying_graph(&d);
        assert_eq!(g.edges(), &[(0, 1)]);
        let single = Digraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(underlying_graph(&single).edges(), &[(0, 1)]);
    }

    #[test]
    fn default_constructor_rejects_bad_arcs() {
        assert!(Digraph::new(2, [(0, 1), (1, 0)]).is_err());
        assert!(Digraph::new(2, [(0, 0)]).is_err());
        assert!(Digraph::new(2, [(0, 2)]).is_err());
        assert!(Digraph::new(2, [(0, 1), (0, 1)]).is_err());
    }

    #[test]
    fn properness_examples() {
        let path = Graph::path(3);
        assert!(is_proper(&path, &Coloring::new(2, vec![1, 2, 1]).unwrap()).unwrap());
        let tri = Graph::complete(3);
        assert!(!is_proper(&tri, &Coloring::new(2, vec![1, 2, 1]).unwrap()).unwrap());
        assert!(is_proper(&tri, &Coloring::new(2, vec![1, 2]).unwrap()).is_err());
    }

    #[test]
    fn strong_connectivity_examples() {
        assert!(is_strong(&Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap()));
        assert!(!is_strong(&Digraph::new(2, [(0, 1)]).unwrap()));
        assert!(is_strong(&Digraph::empty(1)));
    }

    #[test]
    fn json_round_trip_and_rejection() {
        let d = Digraph::new(3, [(0, 1), (2, 1)]).unwrap();
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(text, r#"{"n":3,"arcs":[[0,1],[2,1]]}"#);
        assert_eq!(serde_json::from_str::<Digraph>(&text).unwrap(), d);
        assert!(serde_json::from_str::<Digraph>(r#"{"n":2,"arcs":[[0,1],[1,0]]}"#).is_err());
        let c: Coloring = serde_json::from_str(r#"{"palette":2,"colors":[1,2,1]}"#).unwrap();
        assert_eq!(c.colors(), &[1, 2, 1]);
        assert!(serde_json::from_str::<Coloring>(r#"{"palette":2,"colors":[3]}"#).is_err());
    }

    #[test]
    fn acyclicity() {
        let dag = Digraph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(dag.topological_order(), Some(vec![0, 1, 2]));
        let cyc = Digraph::new(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(!cyc.is_acyclic());
    }
}
