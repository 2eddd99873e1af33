//! Cycle subdivisions with few dilated blocks inside tournaments.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::digraph::Digraph;
use crate::error::{invalid, precondition, Error, Result};
use crate::subdivision::{check_certificate, dilation_report, DilationReport, PatternSpec, SubdivisionCertificate};

fn exact_paths(d: &Digraph, len: usize, used: &mut [bool], path: &mut Vec<usize>, found: &mut dyn FnMut(&[usize], &mut [bool]) -> bool) -> bool {
    if path.len() == len + 1 {
        return found(path, used);
    }
    let v = *path.last().unwrap();
    for &w in d.out_neighbors(v) {
        if !used[w] {
            used[w] = true;
            path.push(w);
            if exact_paths(d, len, used, path, found) {
                return true;
            }
            path.pop();
            used[w] = false;
        }
    }
    false
}

/// Two dipaths of exactly `k1` and `k2` arcs leaving a common source and
/// otherwise disjoint, inside the tournament `t`. Sources are tried by
/// decreasing out-degree.
pub fn find_two_blocks_path(t: &Digraph, k1: usize, k2: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if !t.is_tournament() {
        return Err(invalid("digraph is not a tournament"));
    }
    if k1 == 0 || k2 == 0 || k1 + k2 < 3 {
        return Err(precondition("two-blocks paths need positive lengths with k1 + k2 ≥ 3"));
    }
    if t.n() < k1 + k2 + 1 {
        return Err(precondition(format!("tournament order {} is below {}", t.n(), k1 + k2 + 1)));
    }
    let mut sources: Vec<usize> = (0..t.n()).collect();
    sources.sort_by_key(|&v| (std::cmp::Reverse(t.out_neighbors(v).len()), v));
    let mut used = vec![false; t.n()];
    for s in sources {
        used[s] = true;
        let mut result = None;
        let mut first = vec![s];
        exact_paths(t, k1, &mut used, &mut first, &mut |q1, used| {
            let mut second = vec![s];
            let q1 = q1.to_vec();
            exact_paths(t, k2, used, &mut second, &mut |q2, _| {
                result = Some((q1.clone(), q2.to_vec()));
                true
            })
        });
        used[s] = false;
        if let Some(r) = result {
            return Ok(r);
        }
    }
    Err(Error::SearchExhausted(format!("no two-blocks path ({k1}, {k2}) in a tournament of order {}", t.n())))
}

/// Cycle subdivision with blocks in traversal order and its dilation report.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CycleBuild {
    pub certificate: SubdivisionCertificate,
    pub spec: PatternSpec,
    pub report: DilationReport,
    /// Vertex groups, one per source, in block-pair order.
    pub groups: Vec<Vec<usize>>,
}

/// Builds a subdivision of `C(k_0, …, k_{2m−1})` (block 0 forward) inside
/// the tournament `t` with at least `m` non-dilated blocks. Blocks `2j − 1`
/// and `2j` (indices mod `2m`) share a source and are found in a group of
/// `k_{2j−1} + k_{2j} + 1` vertices, taken first-fit by vertex index.
pub fn build_cycle_subdivision(t: &Digraph, ks: &[usize]) -> Result<CycleBuild> {
    let order: Vec<usize> = (0..t.n()).collect();
    build_from_order(t, ks, &order)
}

/// [`build_cycle_subdivision`] with groups drawn from a shuffled vertex order.
pub fn build_cycle_subdivision_shuffled<R: Rng + ?Sized>(t: &Digraph, ks: &[usize], rng: &mut R) -> Result<CycleBuild> {
    let mut order: Vec<usize> = (0..t.n()).collect();
    order.shuffle(rng);
    build_from_order(t, ks, &order)
}

fn build_from_order(t: &Digraph, ks: &[usize], order: &[usize]) -> Result<CycleBuild> {
    let spec = PatternSpec::multi_block(ks.to_vec())?;
    let b = ks.len();
    let m = b / 2;
    if m < 2 {
        return Err(precondition("the cycle needs at least four blocks"));
    }
    if !t.is_tournament() {
        return Err(invalid("digraph is not a tournament"));
    }
    let pair = |j: usize| ((2 * j + b - 1) % b, 2 * j);
    for j in 0..m {
        let (a, c) = pair(j);
        if ks[a] + ks[c] < 3 {
            return Err(precondition(format!("blocks {a} and {c} sharing a source have total length below 3")));
        }
    }
    let need = m + ks.iter().sum::<usize>();
    if t.n() < need {
        return Err(precondition(format!("tournament order {} is below {need}", t.n())));
    }
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); b];
    let mut groups = Vec::new();
    let mut next = 0;
    for j in 0..m {
        let (a, c) = pair(j);
        let group = order[next..next + ks[a] + ks[c] + 1].to_vec();
        next += group.len();
        let sub = t.induced(&group);
        let (qa, qc) = find_two_blocks_path(&sub, ks[a], ks[c])?;
        // stored from source to end; backward blocks are reversed below
        blocks[a] = qa.iter().map(|&v| group[v]).collect();
        blocks[c] = qc.iter().map(|&v| group[v]).collect();
        groups.push(group);
    }
    // join the end of forward block 2j to the end of backward block 2j + 1
    for j in 0..m {
        let (f, r) = (2 * j, 2 * j + 1);
        let (ef, er) = (*blocks[f].last().unwrap(), *blocks[r].last().unwrap());
        if t.has_arc(ef, er) {
            blocks[f].push(er);
        } else {
            blocks[r].push(ef);
        }
    }
    for (i, block) in blocks.iter_mut().enumerate() {
        if i % 2 == 1 {
            block.reverse();
        }
    }
    let certificate = SubdivisionCertificate::multi_block(blocks);
    check_certificate(t, &certificate, &spec).map_err(|e| Error::Internal(format!("built cycle is invalid: {e}")))?;
    let report = dilation_report(&certificate, &spec)?;
    if report.non_dilated < m {
        return Err(Error::Internal(format!("only {} non-dilated blocks", report.non_dilated)));
    }
    Ok(CycleBuild {
        certificate,
        spec,
        report,
        groups,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn transitive(n: usize) -> Digraph {
        Digraph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn two_blocks_path_in_transitive_tournament() {
        let (q1, q2) = find_two_blocks_path(&transitive(4), 2, 1).unwrap();
        assert_eq!((q1.len(), q2.len()), (3, 2));
        assert_eq!(q1[0], q2[0]);
        assert!(find_two_blocks_path(&transitive(3), 2, 1).is_err());
    }

    #[test]
    fn four_block_cycle_in_transitive_tournament() {
        let build = build_cycle_subdivision(&transitive(8), &[1, 2, 1, 2]).unwrap();
        assert!(build.report.non_dilated >= 2);
        assert!(build_cycle_subdivision(&transitive(7), &[1, 2, 1, 2]).is_err());
    }
}
