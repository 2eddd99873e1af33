//! Exhaustive oracles: chromatic number, k-colorability, independence
//! number and Hamiltonian dipaths/dicycles.

use crate::digraph::{Coloring, Digraph, Graph};
use crate::error::{Error, Result};

/// Default vertex bound for the exponential oracles.
pub const DEFAULT_ORACLE_LIMIT: usize = 20;

const MASK_BITS: usize = 64;

fn check_scale(n: usize, limit: usize) -> Result<()> {
    if n > limit || n > MASK_BITS {
        return Err(Error::ScaleExceeded {
            n,
            limit: limit.min(MASK_BITS),
        });
    }
    Ok(())
}

/// Exact chromatic number with a witness coloring using exactly that many colors.
///
/// Branch and bound over color classes; vertices are visited by descending
/// degree and a greedy coloring seeds the upper bound.
pub fn chromatic_number_exact(g: &Graph, limit: usize) -> Result<(usize, Coloring)> {
    let n = g.n();
    check_scale(n, limit)?;
    if n == 0 {
        return Ok((0, Coloring::new(0, Vec::new())?));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let adj: Vec<u64> = order
        .iter()
        .map(|&v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << pos[w]))
        .collect();

    // greedy upper bound
    let mut best: Vec<usize> = vec![0; n];
    for i in 0..n {
        let used: u64 = (0..i).filter(|&j| adj[i] >> j & 1 == 1).fold(0, |m, j| m | 1 << best[j]);
        best[i] = (!used).trailing_zeros() as usize;
    }
    let mut best_count = best.iter().max().unwrap() + 1;

    // greedy clique lower bound
    let mut clique = 0u64;
    for i in 0..n {
        if adj[i] & clique == clique {
            clique |= 1 << i;
        }
    }
    let lower = clique.count_ones() as usize;

    let mut search = ClassSearch {
        adj: &adj,
        classes: vec![0u64; n],
        assign: vec![0; n],
        best: &mut best,
        best_count: &mut best_count,
        lower,
    };
    search.run(0, 0);

    let mut colors = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        colors[v] = best[i] + 1;
    }
    let chi = best_count;
    Ok((chi, Coloring::new(chi, colors)?))
}

struct ClassSearch<'a> {
    adj: &'a [u64],
    classes: Vec<u64>,
    assign: Vec<usize>,
    best: &'a mut Vec<usize>,
    best_count: &'a mut usize,
    lower: usize,
}

impl ClassSearch<'_> {
    fn run(&mut self, i: usize, used: usize) -> bool {
        if used >= *self.best_count {
            return false;
        }
        if i == self.adj.len() {
            *self.best_count = used;
            self.best.copy_from_slice(&self.assign);
            return used <= self.lower;
        }
        let top = (used + 1).min(*self.best_count - 1);
        for c in 0..top {
            if self.adj[i] & self.classes[c] != 0 {
                continue;
            }
            self.classes[c] |= 1 << i;
            self.assign[i] = c;
            let done = self.run(i + 1, used.max(c + 1));
            self.classes[c] &= !(1 << i);
            if done {
                return true;
            }
        }
        false
    }
}

/// Result of a bounded k-coloring search.
#[derive(Clone, Debug)]
pub struct KColoringSearch {
    pub coloring: Option<Coloring>,
    pub nodes: u64,
    /// False when the node budget ran out before the search space was covered.
    pub complete: bool,
}

/// DSATUR backtracking for a proper coloring with at most `k` colors.
pub fn k_coloring(g: &Graph, k: usize, node_budget: Option<u64>) -> KColoringSearch {
    let n = g.n();
    let mut state = Dsatur {
        g,
        k,
        colors: vec![0; n],
        nodes: 0,
        budget: node_budget,
        out_of_budget: false,
    };
    let found = n == 0 || (k > 0 && state.run(0, 0));
    let coloring = found.then(|| {
        let palette = state.colors.iter().copied().max().unwrap_or(0);
        Coloring::new(palette, state.colors.clone()).expect("colors are within 1..=k")
    });
    KColoringSearch {
        coloring,
        nodes: state.nodes,
        complete: !state.out_of_budget,
    }
}

struct Dsatur<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<usize>,
    nodes: u64,
    budget: Option<u64>,
    out_of_budget: bool,
}

impl Dsatur<'_> {
    fn saturation(&self, v: usize) -> (usize, u64) {
        let mut mask = 0u64;
        for &w in self.g.neighbors(v) {
            if self.colors[w] != 0 {
                mask |= 1 << (self.colors[w] - 1).min(63);
            }
        }
        (mask.count_ones() as usize, mask)
    }

    fn run(&mut self, colored: usize, used: usize) -> bool {
        if colored == self.g.n() {
            return true;
        }
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                self.out_of_budget = true;
                return false;
            }
        }
        let mut pick = None;
        let mut key = (0, 0);
        for v in 0..self.g.n() {
            if self.colors[v] != 0 {
                continue;
            }
            let (sat, _) = self.saturation(v);
            let cand = (sat, self.g.degree(v));
            if pick.is_none() || cand > key {
                pick = Some(v);
                key = cand;
            }
        }
        let v = pick.expect("an uncolored vertex remains");
        let (_, forbidden) = self.saturation(v);
        let top = (used + 1).min(self.k);
        for c in 1..=top {
            if forbidden >> (c - 1) & 1 == 1 {
                continue;
            }
            self.colors[v] = c;
            if self.run(colored + 1, used.max(c)) {
                return true;
            }
            if self.out_of_budget {
                break;
            }
        }
        self.colors[v] = 0;
        false
    }
}

/// Size of a maximum independent set.
pub fn independence_number(g: &Graph, limit: usize) -> Result<usize> {
    let n = g.n();
    check_scale(n, limit)?;
    let adj: Vec<u64> =
        (0..n).map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    Ok(max_independent(&adj, all))
}

fn max_independent(adj: &[u64], cand: u64) -> usize {
    if cand == 0 {
        return 0;
    }
    let mut pick = cand.trailing_zeros() as usize;
    let mut pick_deg = (adj[pick] & cand).count_ones();
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (adj[v] & cand).count_ones();
        if d > pick_deg {
            pick = v;
            pick_deg = d;
        }
    }
    let without = cand & !(1 << pick);
    if pick_deg == 0 {
        return 1 + max_independent(adj, without);
    }
    let take = 1 + max_independent(adj, without & !adj[pick]);
    take.max(max_independent(adj, without))
}

/// Hamiltonian dipath, by insertion on tournaments and by backtracking otherwise.
pub fn find_hamiltonian_dipath(d: &Digraph, limit: usize) -> Result<Option<Vec<usize>>> {
    if d.is_tournament() {
        return Ok(Some(tournament_hamiltonian_path(d)));
    }
    check_scale(d.n(), limit)?;
    let n = d.n();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut path = Vec::with_capacity(n);
    let mut used = vec![false; n];
    for s in 0..n {
        path.push(s);
        used[s] = true;
        if extend_path(d, &mut path, &mut used, None) {
            return Ok(Some(path));
        }
        path.pop();
        used[s] = false;
    }
    Ok(None)
}

/// Hamiltonian dicycle through vertex 0, listed from 0.
pub fn find_hamiltonian_dicycle(d: &Digraph, limit: usize) -> Result<Option<Vec<usize>>> {
    check_scale(d.n(), limit)?;
    let n = d.n();
    if n < 2 {
        return Ok(None);
    }
    let mut path = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    Ok(extend_path(d, &mut path, &mut used, Some(0)).then_some(path))
}

fn extend_path(d: &Digraph, path: &mut Vec<usize>, used: &mut [bool], close: Option<usize>) -> bool {
    let n = d.n();
    let last = *path.last().unwrap();
    if path.len() == n {
        return close.is_none_or(|s| d.has_arc(last, s));
    }
    for &w in d.out_neighbors(last) {
        if used[w] {
            continue;
        }
        used[w] = true;
        path.push(w);
        if extend_path(d, path, used, close) {
            return true;
        }
        path.pop();
        used[w] = false;
    }
    false
}

/// Classical insertion construction; every tournament has a Hamiltonian dipath.
pub fn tournament_hamiltonian_path(t: &Digraph) -> Vec<usize> {
    let mut path: Vec<usize> = Vec::with_capacity(t.n());
    for v in 0..t.n() {
        if path.is_empty() || t.has_arc(v, path[0]) {
            path.insert(0, v);
        } else if t.has_arc(*path.last().unwrap(), v) {
            path.push(v);
        } else {
            // path[0] -> v and v -> last, so some consecutive pair brackets v
            let i = (0..path.len() - 1)
                .find(|&i| t.has_arc(path[i], v) && t.has_arc(v, path[i + 1]))
                .expect("tournament insertion point exists");
            path.insert(i + 1, v);
        }
    }
    path
}

/// Checks that `seq` visits every vertex once along arcs (and back to the
/// start when `cyclic`).
pub fn is_hamiltonian_sequence(d: &Digraph, seq: &[usize], cyclic: bool) -> bool {
    if seq.len() != d.n() {
        return false;
    }
    let mut seen = vec![false; d.n()];
    for &v in seq {
        if v >= d.n() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    let linear = seq.windows(2).all(|w| d.has_arc(w[0], w[1]));
    linear && (!cyclic || seq.len() < 2 || d.has_arc(seq[seq.len() - 1], seq[0]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::is_proper;

    #[test]
    fn small_chromatic_numbers() {
        assert_eq!(chromatic_number_exact(&Graph::complete(4), 20).unwrap().0, 4);
        let (chi, w) = chromatic_number_exact(&Graph::cycle(5), 20).unwrap();
        assert_eq!(chi, 3);
        assert!(is_proper(&Graph::cycle(5), &w).unwrap());
        assert_eq!(w.colors_used(), 3);
        assert_eq!(chromatic_number_exact(&Graph::empty(3), 20).unwrap().0, 1);
        assert!(matches!(
            chromatic_number_exact(&Graph::empty(21), 20),
            Err(Error::ScaleExceeded { .. })
        ));
    }

    #[test]
    fn independence_examples() {
        assert_eq!(independence_number(&Graph::complete(5), 20).unwrap(), 1);
        assert_eq!(independence_number(&Graph::empty(7), 20).unwrap(), 7);
        assert_eq!(independence_number(&Graph::cycle(5), 20).unwrap(), 2);
    }

    #[test]
    fn k_coloring_on_small_graphs() {
        assert!(k_coloring(&Graph::complete(4), 3, None).coloring.is_none());
        let c = k_coloring(&Graph::complete(4), 4, None).coloring.unwrap();
        assert!(is_proper(&Graph::complete(4), &c).unwrap());
        let tree = Graph::new(5, [(0, 1), (0, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(k_coloring(&tree, 4, None).coloring.unwrap().palette(), 2);
    }

    #[test]
    fn hamiltonian_dipaths() {
        let trans = Digraph::new(5, (0..5).flat_map(|i| (0..i).map(move |j| (i, j)))).unwrap();
        assert_eq!(find_hamiltonian_dipath(&trans, 20).unwrap(), Some(vec![4, 3, 2, 1, 0]));
        let path = Digraph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(find_hamiltonian_dipath(&path, 20).unwrap(), Some(vec![2, 0, 3, 1]));
        let star = Digraph::new(3, [(0, 1), (0, 2)]).unwrap();
        assert_eq!(find_hamiltonian_dipath(&star, 20).unwrap(), None);
    }

    #[test]
    fn hamiltonian_dicycles() {
        let cyc = Digraph::new(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let c = find_hamiltonian_dicycle(&cyc, 20).unwrap().unwrap();
        assert!(is_hamiltonian_sequence(&cyc, &c, true));
        let trans = Digraph::new(5, (0..5).flat_map(|i| (0..i).map(move |j| (i, j)))).unwrap();
        assert_eq!(find_hamiltonian_dicycle(&trans, 20).unwrap(), None);
    }
}
