//! Buying one more round than the greedy guarantee.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::factor::{find_factor, Block, Round, ShapeKind};
use crate::graph::Graph;
use crate::tournament::Tournament;

/// Exact Hamiltonian cycle search. Returns the cycle as a vertex sequence
/// starting at 0.
pub fn hamiltonian_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    if g.min_degree() < 2 || g.components().len() != 1 {
        return None;
    }
    let mut path = vec![0usize];
    let mut visited = VertexSet::empty();
    visited.insert(0);
    extend_path(g, &mut path, &mut visited).then_some(path)
}

fn extend_path(g: &Graph, path: &mut Vec<usize>, visited: &mut VertexSet) -> bool {
    let n = g.n();
    let last = *path.last().expect("path starts at 0");
    if path.len() == n {
        return g.has_edge(last, 0);
    }
    let unvisited = VertexSet::full(n).difference(visited);
    // Every unvisited vertex needs two ways in: from the path end, from 0, or
    // from another unvisited vertex.
    let mut ends = unvisited;
    ends.insert(last);
    ends.insert(0);
    for v in unvisited.iter() {
        if g.neighbors(v).intersection_len(&ends) < 2 {
            return false;
        }
    }
    if g.neighbors(0).is_disjoint(&unvisited) {
        return false;
    }
    let mut cand: Vec<usize> = g.neighbors(last).intersection(&unvisited).iter().collect();
    cand.sort_by_key(|&v| (g.neighbors(v).intersection_len(&unvisited), v));
    for v in cand {
        path.push(v);
        visited.insert(v);
        if extend_path(g, path, visited) {
            return true;
        }
        visited.remove(v);
        path.pop();
    }
    false
}

/// After `n/2 - 1` matching rounds, splits a Hamiltonian cycle of the
/// feasibility graph into its even and odd edges.
pub fn extend_via_hamiltonian(t: &Tournament) -> Result<(Round, Round)> {
    let shape = t.shape();
    if shape.kind != ShapeKind::Clique || shape.k != 2 {
        return Err(Error::WrongShape(format!(
            "expected clique(2), got {shape}"
        )));
    }
    let n = t.n();
    if t.len() + 1 != n / 2 {
        return Err(Error::WrongRoundCount {
            expected: n / 2 - 1,
            found: t.len(),
        });
    }
    let cycle = hamiltonian_cycle(&t.feasibility_graph()).ok_or(Error::NoHamiltonianCycle)?;
    let pairs = |start: usize| -> Vec<Vec<usize>> {
        (start..n)
            .step_by(2)
            .map(|i| vec![cycle[i], cycle[(i + 1) % n]])
            .collect()
    };
    Ok((
        Round::from_vertex_lists(shape, n, pairs(0))?,
        Round::from_vertex_lists(shape, n, pairs(1))?,
    ))
}

/// Rebuilds the last round of a stuck clique tournament so that one more round
/// fits.
///
/// The complement components equal to `K_{n/k+1}` are found, one vertex of
/// each is swapped cyclically into the last-round block of a vertex from the
/// next such component (or, with a single component, with a vertex outside
/// it), and the result is extended by exact search. Vertex choices are tried
/// in index order until an extension exists.
pub fn repair_plus_one(t: &Tournament) -> Result<Tournament> {
    let shape = t.shape();
    let (n, k) = (t.n(), shape.k);
    if shape.kind != ShapeKind::Clique || k < 3 {
        return Err(Error::WrongShape(format!(
            "expected clique(k) with k >= 3, got {shape}"
        )));
    }
    let expected = n / (k * (k - 1));
    if t.len() != expected {
        return Err(Error::WrongRoundCount {
            expected,
            found: t.len(),
        });
    }
    if n <= k * (k - 1) {
        return Err(Error::Precondition(format!(
            "n = {n} must exceed k(k-1) = {}",
            k * (k - 1)
        )));
    }
    let g = t.feasibility_graph();
    if let Some(next) = find_factor(&g, shape)? {
        return t.extend(next);
    }
    let complement = g.complement();
    let big = n / k + 1;
    let comps: Vec<VertexSet> = complement
        .components()
        .into_iter()
        .filter(|c| c.len() == big && complement.is_clique(c))
        .collect();
    if comps.is_empty() {
        return Err(Error::StructureMismatch(format!(
            "stuck but no complement component is K_{big}; equitable Delta-coloring counterexample candidate"
        )));
    }
    let last = t
        .rounds()
        .last()
        .expect("at least one round since n > k(k-1)");
    let shortened = t.truncated(t.len() - 1);
    let covered = comps.iter().fold(VertexSet::empty(), |acc, c| acc.union(c));

    let mut choices: Vec<Vec<usize>> = Vec::new();
    if comps.len() == 1 {
        for v1 in comps[0].iter() {
            for v2 in VertexSet::full(n).difference(&covered).iter() {
                choices.push(vec![v1, v2]);
            }
        }
    } else {
        let lists: Vec<Vec<usize>> = comps.iter().map(|c| c.iter().collect()).collect();
        for offset in 0..big {
            choices.push(lists.iter().map(|l| l[offset % l.len()]).collect());
        }
    }
    for cyc in choices {
        let Some(round) = exchange(last, &cyc)? else {
            continue;
        };
        // Re-checked against the shortened tournament rather than trusted.
        let Ok(extended) = shortened.extend(round) else {
            continue;
        };
        if let Some(next) = find_factor(&extended.feasibility_graph(), shape)? {
            return extended.extend(next);
        }
    }
    Err(Error::StructureMismatch(
        "no vertex exchange admits a further round".into(),
    ))
}

/// Each `cyc[i]` moves into the old block of `cyc[i+1]`.
fn exchange(round: &Round, cyc: &[usize]) -> Result<Option<Round>> {
    let idx: Vec<usize> = cyc
        .iter()
        .map(|&v| round.block_of(v).expect("round covers every vertex"))
        .collect();
    let mut distinct = idx.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != idx.len() {
        return Ok(None);
    }
    let mut lists = round.as_lists();
    let c = cyc.len();
    for i in 0..c {
        let target = idx[(i + 1) % c];
        let old = cyc[(i + 1) % c];
        let slot = round.blocks()[target]
            .vertices()
            .iter()
            .position(|&v| v == old)
            .expect("vertex in its block");
        lists[target][slot] = cyc[i];
    }
    let blocks = lists
        .into_iter()
        .map(|l| Block::new(round.shape().kind, l))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(Round::new(round.shape(), round.n(), blocks)?))
}
