//! Complete factorizations used as sub-designs: resolvable `(v, k, 1)` designs,
//! Oberwolfach solutions with equal cycle lengths, and cycle factorizations of
//! balanced complete bipartite graphs.

use std::fmt;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{for_each_factor, Block, FactorShape, Round, SearchOptions};
use crate::graph::Graph;
use crate::tournament::Tournament;

/// Default work limit of a design search, counted in factor-search nodes plus
/// candidate rounds.
pub const DEFAULT_DESIGN_BUDGET: u64 = 2_000_000;

/// Where a sub-design came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignSource {
    /// A single round: `v = k`, or the lone class of a trivial design.
    Trivial,
    /// Parallel classes of lines of the affine space `AG(m, p)`.
    AffineGeometry { m: u32, p: usize },
    /// Walecki's Hamiltonian decomposition of `K_v`, `v` odd.
    Walecki,
    /// Product of `K_{2,2}` blocks along the matchings of `K_{p,p}`.
    BipartiteBlowup,
    /// A verified design bundled with the crate.
    Cached(String),
    /// Base factor developed over `Z_(v-1)` with one fixed point.
    OneRotational { nodes: u64 },
    /// Backtracking search; `tried` units of work.
    Search { tried: u64 },
}

impl fmt::Display for DesignSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DesignSource::Trivial => f.write_str("trivial"),
            DesignSource::AffineGeometry { m, p } => write!(f, "AG({m},{p})"),
            DesignSource::Walecki => f.write_str("Walecki"),
            DesignSource::BipartiteBlowup => f.write_str("K_(2,2) blow-up"),
            DesignSource::Cached(name) => write!(f, "cached {name}"),
            DesignSource::OneRotational { nodes } => {
                write!(f, "1-rotational search ({nodes} nodes)")
            }
            DesignSource::Search { tried } => write!(f, "search ({tried} steps)"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DesignOptions {
    /// Search nodes plus candidate rounds before giving up with
    /// [`Error::BudgetExceeded`]. Nested searches are charged when they
    /// finish, so the limit can be overshot by a small factor.
    pub budget: Option<u64>,
    /// Played as the first round without search.
    pub first_round: Option<Round>,
}

impl DesignOptions {
    pub fn with_budget(budget: u64) -> Self {
        DesignOptions {
            budget: Some(budget),
            first_round: None,
        }
    }
}

/// Searches for `H`-factors of `g` that use every edge exactly once.
///
/// Rounds are produced in a canonical order: each round uses the edge from the
/// lowest non-isolated vertex to its lowest remaining neighbour. Returns the
/// rounds and the work spent, or `None` if the space is
/// exhausted.
pub fn complete_factorization(
    g: &Graph,
    shape: FactorShape,
    opts: &DesignOptions,
) -> Result<Option<(Vec<Round>, u64)>> {
    shape.check_divides(g.n())?;
    let per = shape.degree_per_round();
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::InvalidParameter("graph is not regular".into()))?;
    if d % per != 0 {
        return Ok(None);
    }
    let mut rounds = Vec::new();
    let mut start = g.clone();
    if let Some(first) = &opts.first_round {
        start = start.remove_round(first)?;
        rounds.push(first.clone());
    }
    let mut tried = 0u64;
    let found = factor_dfs(&start, shape, &mut rounds, &mut tried, opts.budget)?;
    Ok(found.then_some((rounds, tried)))
}

fn coverable(g: &Graph, shape: FactorShape) -> bool {
    if shape.k <= 2 || shape.kind == crate::factor::ShapeKind::Cycle && shape.k > 3 {
        return true;
    }
    g.edges()
        .into_iter()
        .all(|(u, v)| g.neighbors(u).intersection_len(g.neighbors(v)) >= shape.k - 2)
}

fn factor_dfs(
    g: &Graph,
    shape: FactorShape,
    rounds: &mut Vec<Round>,
    work: &mut u64,
    budget: Option<u64>,
) -> Result<bool> {
    let Some(v) = (0..g.n()).find(|&v| g.degree(v) > 0) else {
        return Ok(true);
    };
    let u = g.neighbors(v).first().expect("v has a neighbour");
    let mut opts = SearchOptions::default().requiring_edge(v, u);
    if let Some(b) = budget {
        if *work >= b {
            return Err(Error::BudgetExceeded { budget: b });
        }
        opts.budget = Some(b - *work);
    }
    let mut outcome: Result<bool> = Ok(false);
    let stats = for_each_factor(g, shape, opts, |r| {
        *work += 1;
        if let Some(b) = budget {
            if *work > b {
                outcome = Err(Error::BudgetExceeded { budget: b });
                return ControlFlow::Break(());
            }
        }
        let rest = g.remove_round(r).expect("factor of g");
        if !coverable(&rest, shape) {
            return ControlFlow::Continue(());
        }
        rounds.push(r.clone());
        match factor_dfs(&rest, shape, rounds, work, budget) {
            Ok(true) => {
                outcome = Ok(true);
                ControlFlow::Break(())
            }
            Ok(false) => {
                rounds.pop();
                ControlFlow::Continue(())
            }
            Err(e) => {
                outcome = Err(e);
                ControlFlow::Break(())
            }
        }
    })
    .map_err(|e| match (e, budget) {
        (Error::BudgetExceeded { .. }, Some(b)) => Error::BudgetExceeded { budget: b },
        (e, _) => e,
    })?;
    *work += stats.nodes;
    outcome
}

/// Consecutive blocks `{0..k-1}, {k..2k-1}, ..`.
fn consecutive_round(shape: FactorShape, v: usize) -> Result<Round> {
    Round::from_vertex_lists(
        shape,
        v,
        (0..v / shape.k)
            .map(|b| (b * shape.k..(b + 1) * shape.k).collect())
            .collect(),
    )
}

fn check_design_params(v: usize, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("block size {k} < 2")));
    }
    if v == 0 || !v.is_multiple_of(k) || !(v - 1).is_multiple_of(k - 1) {
        return Err(Error::Divisibility { n: v, k });
    }
    Ok(())
}

/// Backtracking search for a resolvable `(v, k, 1)` design, returned as a
/// complete clique tournament with `(v-1)/(k-1)` rounds.
pub fn resolvable_design_search(v: usize, k: usize) -> Result<Option<Tournament>> {
    resolvable_design_search_with(v, k, Some(DEFAULT_DESIGN_BUDGET)).map(|r| r.map(|(t, _)| t))
}

pub fn resolvable_design_search_with(
    v: usize,
    k: usize,
    budget: Option<u64>,
) -> Result<Option<(Tournament, u64)>> {
    check_design_params(v, k)?;
    let shape = FactorShape::clique(k)?;
    let opts = DesignOptions {
        budget,
        first_round: Some(consecutive_round(shape, v)?),
    };
    match complete_factorization(&Graph::complete(v)?, shape, &opts)? {
        Some((rounds, tried)) => Ok(Some((Tournament::from_rounds(shape, v, rounds)?, tried))),
        None => Ok(None),
    }
}

fn check_oberwolfach_params(v: usize, k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("cycle length {k} < 3")));
    }
    if v.is_multiple_of(2) {
        return Err(Error::Parity(format!(
            "Oberwolfach solutions need an odd number of vertices, got {v}"
        )));
    }
    if !v.is_multiple_of(k) {
        return Err(Error::Divisibility { n: v, k });
    }
    Ok(())
}

/// Backtracking search for a complete `C_k`-factorization of `K_v`, `v` odd.
pub fn oberwolfach_solution_search(v: usize, k: usize) -> Result<Option<Tournament>> {
    oberwolfach_solution_search_with(v, k, Some(DEFAULT_DESIGN_BUDGET)).map(|r| r.map(|(t, _)| t))
}

/// Tries a 1-rotational solution first, then the plain search. The budget
/// applies to each stage separately.
pub fn oberwolfach_solution_search_with(
    v: usize,
    k: usize,
    budget: Option<u64>,
) -> Result<Option<(Tournament, u64)>> {
    oberwolfach_search_sourced(v, k, budget).map(|r| {
        r.map(|(t, src)| match src {
            DesignSource::OneRotational { nodes } => (t, nodes),
            DesignSource::Search { tried } => (t, tried),
            _ => (t, 0),
        })
    })
}

fn oberwolfach_search_sourced(
    v: usize,
    k: usize,
    budget: Option<u64>,
) -> Result<Option<(Tournament, DesignSource)>> {
    check_oberwolfach_params(v, k)?;
    let shape = FactorShape::cycle(k)?;
    match rotational_oberwolfach(v, k, budget) {
        Ok(Some((rounds, nodes))) => {
            return Ok(Some((
                Tournament::from_rounds(shape, v, rounds)?,
                DesignSource::OneRotational { nodes },
            )))
        }
        Ok(None) | Err(Error::BudgetExceeded { .. }) => {}
        Err(e) => return Err(e),
    }
    let opts = DesignOptions {
        budget,
        first_round: Some(consecutive_round(shape, v)?),
    };
    match complete_factorization(&Graph::complete(v)?, shape, &opts)? {
        Some((rounds, tried)) => Ok(Some((
            Tournament::from_rounds(shape, v, rounds)?,
            DesignSource::Search { tried },
        ))),
        None => Ok(None),
    }
}

/// 1-rotational search for an Oberwolfach solution `(v, k)` with `v = 2m + 1`.
///
/// Points are `Z_2m` plus a fixed point `2m`. A base 2-factor `F` is built so
/// that its translates `F + i`, `i < m`, use every edge exactly once: the
/// fixed point sees `0` and `m`, difference `m` occurs once, and every other
/// difference `d` occurs twice, as `{s, s+d}` and `{s+m, s+m+d}`.
pub fn rotational_oberwolfach(
    v: usize,
    k: usize,
    budget: Option<u64>,
) -> Result<Option<(Vec<Round>, u64)>> {
    check_oberwolfach_params(v, k)?;
    let shape = FactorShape::cycle(k)?;
    let m = (v - 1) / 2;
    if k == 3 && m == 1 {
        return Ok(Some((
            vec![Round::from_vertex_lists(shape, 3, vec![vec![0, 1, 2]])?],
            0,
        )));
    }
    let mut st = Rotational {
        m,
        k,
        used: vec![false; 2 * m],
        diff: vec![DiffSlot::Free; m],
        nodes: 0,
        budget,
        cycles: Vec::new(),
    };
    st.used[0] = true;
    st.used[m] = true;
    let mut path = vec![0, 2 * m, m];
    if !st.extend(&mut path)? {
        return Ok(None);
    }
    let rounds = (0..m)
        .map(|i| {
            let shift = |x: usize| if x == 2 * m { x } else { (x + i) % (2 * m) };
            let blocks = st
                .cycles
                .iter()
                .map(|c| c.iter().map(|&x| shift(x)).collect())
                .collect();
            Round::from_vertex_lists(shape, v, blocks)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Some((rounds, st.nodes)))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum DiffSlot {
    Free,
    Half(usize),
    Full,
}

struct Rotational {
    m: usize,
    k: usize,
    used: Vec<bool>,
    diff: Vec<DiffSlot>,
    nodes: u64,
    budget: Option<u64>,
    cycles: Vec<Vec<usize>>,
}

impl Rotational {
    /// Claims the difference of the finite edge `{u, w}`; returns the previous
    /// slot for undoing.
    fn claim(&mut self, u: usize, w: usize) -> Option<(usize, DiffSlot)> {
        let (m, q) = (self.m, 2 * self.m);
        let fwd = (w + q - u) % q;
        let (d, start) = if fwd <= m { (fwd, u) } else { (q - fwd, w) };
        let old = self.diff[d % m];
        let new = match (old, d == m) {
            (DiffSlot::Free, true) => DiffSlot::Full,
            (DiffSlot::Free, false) => DiffSlot::Half(start),
            (DiffSlot::Half(s), false) if (s + m) % q == start => DiffSlot::Full,
            _ => return None,
        };
        self.diff[d % m] = new;
        Some((d % m, old))
    }

    fn extend(&mut self, path: &mut Vec<usize>) -> Result<bool> {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                return Err(Error::BudgetExceeded { budget: b });
            }
        }
        let last = *path.last().expect("non-empty path");
        let first = path[0];
        if path.len() == self.k {
            // The fixed point is in the first cycle only; elsewhere a reversal
            // gives the same cycle.
            if first != 0 && path[1] > last {
                return Ok(false);
            }
            let Some(undo) = self.claim(last, first) else {
                return Ok(false);
            };
            self.cycles.push(path.clone());
            let ok = match self.used.iter().position(|&u| !u) {
                None => true,
                Some(next) => {
                    self.used[next] = true;
                    let ok = self.extend(&mut vec![next])?;
                    self.used[next] = false;
                    ok
                }
            };
            if !ok {
                self.cycles.pop();
                self.diff[undo.0] = undo.1;
            }
            return Ok(ok);
        }
        for w in first + 1..2 * self.m {
            if self.used[w] {
                continue;
            }
            let Some(undo) = self.claim(last, w) else {
                continue;
            };
            self.used[w] = true;
            path.push(w);
            let ok = self.extend(path)?;
            path.pop();
            self.used[w] = false;
            self.diff[undo.0] = undo.1;
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// The lines of `AG(m, p)`, `p` prime, grouped by direction: a resolvable
/// `(p^m, p, 1)` design.
pub fn affine_resolvable_design(m: u32, p: usize) -> Result<Tournament> {
    if !is_prime(p) || m == 0 {
        return Err(Error::InvalidParameter(format!(
            "AG({m},{p}) needs a prime p and m >= 1"
        )));
    }
    let v = p.pow(m);
    let digits = |x: usize| -> Vec<usize> { (0..m).map(|i| (x / p.pow(i)) % p).collect() };
    let index = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &x| acc * p + x) };
    let shape = FactorShape::clique(p)?;
    let mut rounds = Vec::new();
    for dir in 1..v {
        let dd = digits(dir);
        // One representative per direction: the last non-zero coordinate is 1.
        if dd.iter().rev().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let mut seen = vec![false; v];
        let mut blocks = Vec::new();
        for start in 0..v {
            if seen[start] {
                continue;
            }
            let sd = digits(start);
            let line: Vec<usize> = (0..p)
                .map(|t| {
                    let pt: Vec<usize> =
                        sd.iter().zip(&dd).map(|(&a, &b)| (a + t * b) % p).collect();
                    index(&pt)
                })
                .collect();
            for &x in &line {
                seen[x] = true;
            }
            blocks.push(line);
        }
        rounds.push(Round::from_vertex_lists(shape, v, blocks)?);
    }
    Tournament::from_rounds(shape, v, rounds)
}

/// Walecki's decomposition of `K_v`, `v` odd, into `(v-1)/2` Hamiltonian cycles.
pub fn walecki(v: usize) -> Result<Tournament> {
    if v < 3 || v.is_multiple_of(2) {
        return Err(Error::Parity(format!(
            "Walecki needs an odd v >= 3, got {v}"
        )));
    }
    let m = v - 1;
    let shape = FactorShape::cycle(v)?;
    let mut rounds = Vec::new();
    for r in 0..m / 2 {
        let mut cyc = vec![m];
        for i in 0..m {
            let j = i.div_ceil(2);
            let x = if i % 2 == 1 { r + j } else { r + m - j };
            cyc.push(x % m);
        }
        rounds.push(Round::from_vertex_lists(shape, v, vec![cyc])?);
    }
    Tournament::from_rounds(shape, v, rounds)
}

/// `C_4`-factorization of `K_{h,h}` (`h` even) with sides `0..h` and `h..2h`.
///
/// Both sides are cut into consecutive pairs; round `r` joins pair `s` of the
/// first side with pair `s + r` of the second by a 4-cycle.
pub fn bipartite_c4_factorization(h: usize) -> Result<Vec<Round>> {
    if h == 0 || !h.is_multiple_of(2) {
        return Err(Error::Parity(format!(
            "K_(h,h) with h = {h} has no C_4-factorization"
        )));
    }
    let p = h / 2;
    let shape = FactorShape::cycle(4)?;
    (0..p)
        .map(|r| {
            let blocks = (0..p)
                .map(|s| {
                    let t = (s + r) % p;
                    vec![2 * s, h + 2 * t, 2 * s + 1, h + 2 * t + 1]
                })
                .collect();
            Round::from_vertex_lists(shape, 2 * h, blocks)
        })
        .collect()
}

pub fn complete_bipartite(h: usize) -> Result<Graph> {
    Graph::from_edges(2 * h, (0..h).flat_map(|a| (h..2 * h).map(move |b| (a, b))))
}

/// Complete `C_k`-factorization of `K_{h,h}`: explicit for `k = 4`, search otherwise.
pub fn bipartite_cycle_factorization(
    h: usize,
    k: usize,
    budget: Option<u64>,
) -> Result<(Vec<Round>, DesignSource)> {
    if k == 4 {
        return Ok((
            bipartite_c4_factorization(h)?,
            DesignSource::BipartiteBlowup,
        ));
    }
    if !k.is_multiple_of(2) || !(2 * h).is_multiple_of(k) || !h.is_multiple_of(2) {
        return Err(Error::Divisibility { n: 2 * h, k });
    }
    let shape = FactorShape::cycle(k)?;
    let opts = DesignOptions {
        budget,
        first_round: None,
    };
    match complete_factorization(&complete_bipartite(h)?, shape, &opts) {
        Ok(Some((rounds, tried))) => Ok((rounds, DesignSource::Search { tried })),
        Ok(None) => Err(Error::SubDesignUnavailable(format!(
            "no C_{k}-factorization of K_({h},{h})"
        ))),
        Err(Error::BudgetExceeded { budget }) => Err(Error::SubDesignUnavailable(format!(
            "C_{k}-factorization of K_({h},{h}) not found within {budget} search steps"
        ))),
        Err(e) => Err(e),
    }
}

/// Resolvable `(v, k, 1)` design from the cheapest available source.
pub fn resolvable_design(
    v: usize,
    k: usize,
    budget: Option<u64>,
) -> Result<(Tournament, DesignSource)> {
    check_design_params(v, k)?;
    let shape = FactorShape::clique(k)?;
    if v == k {
        return Ok((
            Tournament::from_rounds(shape, v, vec![consecutive_round(shape, v)?])?,
            DesignSource::Trivial,
        ));
    }
    if let Some(t) = cached_design(v, k)? {
        return Ok((t, DesignSource::Cached(format!("KTS({v})"))));
    }
    if is_prime(k) {
        let mut m = 1u32;
        while k.pow(m) < v {
            m += 1;
        }
        if k.pow(m) == v {
            return Ok((
                affine_resolvable_design(m, k)?,
                DesignSource::AffineGeometry { m, p: k },
            ));
        }
    }
    match resolvable_design_search_with(v, k, budget) {
        Ok(Some((t, tried))) => Ok((t, DesignSource::Search { tried })),
        Ok(None) => Err(Error::SubDesignUnavailable(format!(
            "no resolvable ({v},{k},1) design exists"
        ))),
        Err(Error::BudgetExceeded { budget }) => Err(Error::SubDesignUnavailable(format!(
            "resolvable ({v},{k},1) design not found within {budget} search steps"
        ))),
        Err(e) => Err(e),
    }
}

/// Oberwolfach solution `(v, k)` from the cheapest available source.
pub fn oberwolfach_solution(
    v: usize,
    k: usize,
    budget: Option<u64>,
) -> Result<(Tournament, DesignSource)> {
    check_oberwolfach_params(v, k)?;
    let shape = FactorShape::cycle(k)?;
    if v == k {
        return Ok((
            walecki(v)?,
            if v == 3 {
                DesignSource::Trivial
            } else {
                DesignSource::Walecki
            },
        ));
    }
    if k == 3 {
        let (t, src) = resolvable_design(v, 3, budget)?;
        return Ok((as_cycles(&t, shape)?, src));
    }
    match oberwolfach_search_sourced(v, k, budget) {
        Ok(Some(found)) => Ok(found),
        Ok(None) => Err(Error::SubDesignUnavailable(format!(
            "no Oberwolfach solution for ({v},{k})"
        ))),
        Err(Error::BudgetExceeded { budget }) => Err(Error::SubDesignUnavailable(format!(
            "Oberwolfach solution ({v},{k}) not found within {budget} search steps"
        ))),
        Err(e) => Err(e),
    }
}

/// Reinterprets a triangle tournament with cycle blocks.
fn as_cycles(t: &Tournament, shape: FactorShape) -> Result<Tournament> {
    let rounds = t
        .rounds()
        .iter()
        .map(|r| {
            let blocks = r
                .blocks()
                .iter()
                .map(|b| Block::cycle(b.vertices().to_vec()))
                .collect::<Result<Vec<_>>>()?;
            Round::new(shape, t.n(), blocks)
        })
        .collect::<Result<Vec<_>>>()?;
    Tournament::from_rounds(shape, t.n(), rounds)
}

/// Kirkman's fifteen schoolgirls: seven parallel classes on `0..15`.
const KTS15: [[[usize; 3]; 5]; 7] = [
    [[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11], [12, 13, 14]],
    [[0, 3, 6], [1, 4, 9], [2, 5, 12], [7, 10, 13], [8, 11, 14]],
    [[0, 4, 7], [1, 11, 12], [2, 8, 10], [3, 9, 13], [5, 6, 14]],
    [[0, 5, 10], [1, 7, 14], [2, 3, 11], [4, 8, 13], [6, 9, 12]],
    [[0, 8, 12], [1, 5, 13], [2, 7, 9], [3, 10, 14], [4, 6, 11]],
    [[0, 9, 14], [1, 3, 8], [2, 6, 13], [4, 10, 12], [5, 7, 11]],
    [[0, 11, 13], [1, 6, 10], [2, 4, 14], [3, 7, 12], [5, 8, 9]],
];

fn cached_design(v: usize, k: usize) -> Result<Option<Tournament>> {
    if (v, k) != (15, 3) {
        return Ok(None);
    }
    let shape = FactorShape::clique(3)?;
    let rounds = KTS15
        .iter()
        .map(|r| r.iter().map(|b| b.to_vec()).collect())
        .collect();
    Tournament::from_vertex_lists(shape, 15, rounds).map(Some)
}

/// Places blocks of a design on `0..m` onto the given vertex labels.
pub fn embed_round(r: &Round, labels: &[usize]) -> Vec<Vec<usize>> {
    r.blocks()
        .iter()
        .map(|b| b.vertices().iter().map(|&x| labels[x]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::verify_tournament;

    fn assert_complete(t: &Tournament, rounds: usize) {
        let rep = verify_tournament(t);
        assert!(rep.valid && rep.complete, "{rep:?}");
        assert_eq!(t.len(), rounds);
    }

    #[test]
    fn affine_designs() {
        assert_complete(&affine_resolvable_design(2, 3).unwrap(), 4);
        assert_complete(&affine_resolvable_design(3, 3).unwrap(), 13);
        assert_complete(&affine_resolvable_design(2, 5).unwrap(), 6);
        assert_complete(&affine_resolvable_design(3, 2).unwrap(), 7);
        assert!(affine_resolvable_design(2, 4).is_err());
    }

    #[test]
    fn walecki_decompositions() {
        for v in [3, 5, 7, 9, 11] {
            assert_complete(&walecki(v).unwrap(), (v - 1) / 2);
        }
        assert!(walecki(8).is_err());
    }

    #[test]
    fn bipartite_blowups() {
        for h in [2, 4, 6, 10] {
            let rounds = bipartite_c4_factorization(h).unwrap();
            let mut g = complete_bipartite(h).unwrap();
            for r in &rounds {
                g = g.remove_round(r).unwrap();
            }
            assert_eq!(g.edge_count(), 0);
            assert_eq!(rounds.len(), h / 2);
        }
    }

    #[test]
    fn cached_kts15_is_complete() {
        assert_complete(&cached_design(15, 3).unwrap().unwrap(), 7);
    }

    #[test]
    fn small_searches() {
        assert_complete(&resolvable_design_search(9, 3).unwrap().unwrap(), 4);
        assert_complete(&resolvable_design_search(6, 2).unwrap().unwrap(), 5);
        assert_complete(&oberwolfach_solution_search(9, 3).unwrap().unwrap(), 4);
        assert_complete(&oberwolfach_solution_search(9, 9).unwrap().unwrap(), 4);
        assert!(matches!(
            resolvable_design_search(10, 3),
            Err(Error::Divisibility { .. })
        ));
        assert!(matches!(
            oberwolfach_solution_search(10, 5),
            Err(Error::Parity(_))
        ));
    }

    #[test]
    fn no_resolvable_design_on_six_with_triples() {
        // 6 - 1 is not divisible by 2.
        assert!(resolvable_design_search(6, 3).is_err());
    }

    #[test]
    fn rotational_solutions() {
        for (v, k) in [(9, 3), (15, 5), (21, 7), (15, 15)] {
            let (rounds, _) = rotational_oberwolfach(v, k, Some(DEFAULT_DESIGN_BUDGET))
                .unwrap()
                .unwrap();
            assert_complete(
                &Tournament::from_rounds(FactorShape::cycle(k).unwrap(), v, rounds).unwrap(),
                (v - 1) / 2,
            );
        }
        // Exhausted: no base factor of this form for Kirkman triples on 21 points.
        assert_eq!(rotational_oberwolfach(21, 3, None).unwrap(), None);
        let (t, src) = oberwolfach_solution(15, 5, None).unwrap();
        assert_complete(&t, 7);
        assert!(matches!(src, DesignSource::OneRotational { .. }));
    }

    #[test]
    fn bipartite_searches() {
        // Two Hamiltonian cycles of K_(4,4).
        let (rounds, _) = bipartite_cycle_factorization(4, 8, Some(100_000)).unwrap();
        assert_eq!(rounds.len(), 2);
        // K_(6,6) has no C_6-factorization; the search space is exhausted.
        assert!(matches!(
            bipartite_cycle_factorization(6, 6, None),
            Err(Error::SubDesignUnavailable(_))
        ));
    }
}
