//! Brute-force ground truth for tiny instances: the shortest maximal greedy
//! tournament, the longest tournament, and exhaustive checks of the stuck-state
//! characterizations.
//!
//! Every search explores all rounds from every reachable feasibility graph,
//! memoized on the graph's edge set. The first round is fixed to consecutive
//! blocks by default; all first rounds are equivalent under relabeling.

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{characterize_matching_stuck, check_clique_stuck_characterization};
use crate::error::{Error, Result};
use crate::factor::{for_each_factor, FactorShape, Round, SearchOptions, ShapeKind};
use crate::graph::Graph;
use crate::tournament::Tournament;

/// Largest `n` any oracle accepts: edge sets are keyed as 128-bit masks.
pub const HARD_LIMIT: usize = 16;

/// Largest `n` per shape family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScaleLimits {
    pub matching: usize,
    /// `K_3` and `C_3`.
    pub triangle: usize,
    /// `K_4` and `C_4`.
    pub four: usize,
    pub other: usize,
}

impl Default for ScaleLimits {
    fn default() -> Self {
        ScaleLimits {
            matching: 10,
            triangle: 9,
            four: 8,
            other: 10,
        }
    }
}

impl ScaleLimits {
    pub fn limit(&self, shape: FactorShape) -> usize {
        let l = match shape.k {
            2 => self.matching,
            3 => self.triangle,
            4 => self.four,
            _ => self.other,
        };
        l.min(HARD_LIMIT)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub limits: ScaleLimits,
    /// Key the memo on a canonical relabeling instead of the raw edge set.
    /// Costs `n!` per state, so only allowed for `n <= 8`.
    pub canonical_keys: bool,
    /// Visit factors in reverse enumeration order.
    pub reverse_order: bool,
    pub fix_first_round: bool,
    /// Explore the children of the start state on the rayon pool.
    pub parallel: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            limits: ScaleLimits::default(),
            canonical_keys: false,
            reverse_order: false,
            fix_first_round: true,
            parallel: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub n: usize,
    pub shape: FactorShape,
    pub min_greedy_depth: Option<usize>,
    pub max_depth: Option<usize>,
    /// A maximal tournament attaining the computed depth.
    #[serde(serialize_with = "serialize_tournament")]
    pub witness: Tournament,
    pub nodes_explored: u64,
}

fn serialize_tournament<S: serde::Serializer>(
    t: &Tournament,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let lists: Vec<Vec<Vec<usize>>> = t.rounds().iter().map(|r| r.as_lists()).collect();
    serde::Serialize::serialize(&lists, s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Goal {
    Min,
    Max,
}

/// Minimum number of rounds over all maximal greedy runs.
pub fn min_greedy_depth(n: usize, shape: FactorShape) -> Result<OracleResult> {
    min_greedy_depth_with(n, shape, &OracleConfig::default())
}

pub fn min_greedy_depth_with(
    n: usize,
    shape: FactorShape,
    cfg: &OracleConfig,
) -> Result<OracleResult> {
    Explorer::new(n, shape, cfg)?.solve(Goal::Min)
}

/// Maximum length of any tournament.
pub fn max_tournament_depth(n: usize, shape: FactorShape) -> Result<OracleResult> {
    max_tournament_depth_with(n, shape, &OracleConfig::default())
}

pub fn max_tournament_depth_with(
    n: usize,
    shape: FactorShape,
    cfg: &OracleConfig,
) -> Result<OracleResult> {
    Explorer::new(n, shape, cfg)?.solve(Goal::Max)
}

fn check_scale(n: usize, shape: FactorShape, cfg: &OracleConfig) -> Result<()> {
    shape.check_divides(n)?;
    let limit = cfg.limits.limit(shape);
    if n > limit {
        return Err(Error::ScaleLimitExceeded { n, limit });
    }
    if cfg.canonical_keys && n > 8 {
        return Err(Error::ScaleLimitExceeded { n, limit: 8 });
    }
    Ok(())
}

fn pair_index(n: usize) -> Vec<Vec<u32>> {
    let mut idx = vec![vec![0u32; n]; n];
    let mut next = 0;
    for u in 0..n {
        for v in u + 1..n {
            idx[u][v] = next;
            idx[v][u] = next;
            next += 1;
        }
    }
    idx
}

struct Explorer<'a> {
    n: usize,
    shape: FactorShape,
    cfg: &'a OracleConfig,
    pairs: Vec<Vec<u32>>,
    perms: Vec<Vec<usize>>,
    memo: Mutex<HashMap<u128, usize>>,
    nodes: AtomicU64,
}

impl<'a> Explorer<'a> {
    fn new(n: usize, shape: FactorShape, cfg: &'a OracleConfig) -> Result<Self> {
        check_scale(n, shape, cfg)?;
        let perms = if cfg.canonical_keys {
            permutations(n)
        } else {
            Vec::new()
        };
        Ok(Explorer {
            n,
            shape,
            cfg,
            pairs: pair_index(n),
            perms,
            memo: Mutex::new(HashMap::new()),
            nodes: AtomicU64::new(0),
        })
    }

    fn raw_key(&self, g: &Graph, perm: Option<&[usize]>) -> u128 {
        let mut key = 0u128;
        for (u, v) in g.edges() {
            let (a, b) = match perm {
                Some(p) => (p[u], p[v]),
                None => (u, v),
            };
            key |= 1u128 << self.pairs[a][b];
        }
        key
    }

    fn key(&self, g: &Graph) -> u128 {
        if self.perms.is_empty() {
            return self.raw_key(g, None);
        }
        self.perms
            .iter()
            .map(|p| self.raw_key(g, Some(p)))
            .min()
            .expect("at least one permutation")
    }

    fn factors(&self, g: &Graph) -> Result<Vec<Round>> {
        let mut out = Vec::new();
        for_each_factor(g, self.shape, SearchOptions::default(), |r| {
            out.push(r.clone());
            ControlFlow::Continue(())
        })?;
        if self.cfg.reverse_order {
            out.reverse();
        }
        Ok(out)
    }

    fn lookup(&self, key: u128) -> Option<usize> {
        self.memo.lock().expect("memo lock").get(&key).copied()
    }

    fn value(&self, g: &Graph, goal: Goal) -> Result<usize> {
        let key = self.key(g);
        if let Some(v) = self.lookup(key) {
            return Ok(v);
        }
        self.nodes.fetch_add(1, Ordering::Relaxed);
        let mut best: Option<usize> = None;
        for r in self.factors(g)? {
            let child = 1 + self.value(&g.remove_round(&r)?, goal)?;
            best = Some(match (best, goal) {
                (None, _) => child,
                (Some(b), Goal::Min) => b.min(child),
                (Some(b), Goal::Max) => b.max(child),
            });
        }
        let v = best.unwrap_or(0);
        self.memo.lock().expect("memo lock").insert(key, v);
        Ok(v)
    }

    fn start(&self) -> Result<(Graph, Vec<Round>)> {
        let g = Graph::complete(self.n)?;
        if !self.cfg.fix_first_round {
            return Ok((g, Vec::new()));
        }
        let k = self.shape.k;
        let first = Round::from_vertex_lists(
            self.shape,
            self.n,
            (0..self.n / k)
                .map(|b| (b * k..(b + 1) * k).collect())
                .collect(),
        )?;
        Ok((g.remove_round(&first)?, vec![first]))
    }

    fn solve(&self, goal: Goal) -> Result<OracleResult> {
        let (g, prefix) = self.start()?;
        let depth = if self.cfg.parallel {
            let children = self.factors(&g)?;
            let values = children
                .par_iter()
                .map(|r| {
                    g.remove_round(r)
                        .and_then(|c| self.value(&c, goal))
                        .map(|v| v + 1)
                })
                .collect::<Result<Vec<_>>>()?;
            let v = match goal {
                Goal::Min => values.iter().min(),
                Goal::Max => values.iter().max(),
            };
            let v = v.copied().unwrap_or(0);
            self.memo.lock().expect("memo lock").insert(self.key(&g), v);
            v
        } else {
            self.value(&g, goal)?
        } + prefix.len();
        let witness = self.witness(g, prefix, goal)?;
        debug_assert_eq!(witness.len(), depth);
        Ok(OracleResult {
            n: self.n,
            shape: self.shape,
            min_greedy_depth: (goal == Goal::Min).then_some(depth),
            max_depth: (goal == Goal::Max).then_some(depth),
            witness,
            nodes_explored: self.nodes.load(Ordering::Relaxed),
        })
    }

    /// Follows the memo down an optimal path.
    fn witness(&self, mut g: Graph, mut rounds: Vec<Round>, goal: Goal) -> Result<Tournament> {
        loop {
            let target = self.value(&g, goal)?;
            if target == 0 {
                break;
            }
            let mut next = None;
            for r in self.factors(&g)? {
                let child = g.remove_round(&r)?;
                if self.value(&child, goal)? + 1 == target {
                    next = Some((r, child));
                    break;
                }
            }
            let (r, child) = next.expect("memoized value is attained by some child");
            rounds.push(r);
            g = child;
        }
        Tournament::from_rounds(self.shape, self.n, rounds)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterizationReport {
    pub n: usize,
    pub shape: FactorShape,
    pub critical_rounds: usize,
    /// Distinct feasibility graphs reached after `critical_rounds` rounds.
    pub states_checked: usize,
    pub stuck_states: usize,
    /// States where the characterization fails.
    #[serde(serialize_with = "serialize_tournaments")]
    pub counterexamples: Vec<Tournament>,
    /// Tournaments stuck before `critical_rounds`.
    #[serde(serialize_with = "serialize_tournaments")]
    pub early_stuck: Vec<Tournament>,
    pub holds: bool,
}

fn serialize_tournaments<S: serde::Serializer>(
    ts: &[Tournament],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let lists: Vec<Vec<Vec<Vec<usize>>>> = ts
        .iter()
        .map(|t| t.rounds().iter().map(|r| r.as_lists()).collect())
        .collect();
    serde::Serialize::serialize(&lists, s)
}

pub fn exhaustive_characterization_check(
    n: usize,
    shape: FactorShape,
) -> Result<CharacterizationReport> {
    exhaustive_characterization_check_with(n, shape, &OracleConfig::default())
}

/// Enumerates every tournament of the critical length (up to the choice of
/// the first round) and checks the stuck-state characterization on each:
/// `K_{n/2,n/2}` complement with `n/2` odd for matchings, a `K_{n/k+1}` in the
/// complement for `k >= 3`.
pub fn exhaustive_characterization_check_with(
    n: usize,
    shape: FactorShape,
    cfg: &OracleConfig,
) -> Result<CharacterizationReport> {
    if shape.kind != ShapeKind::Clique {
        return Err(Error::WrongShape(format!(
            "characterizations exist for clique shapes only, got {shape}"
        )));
    }
    let ex = Explorer::new(n, shape, cfg)?;
    let k = shape.k;
    let critical = if k == 2 { n / 2 } else { n / (k * (k - 1)) };
    let mut report = CharacterizationReport {
        n,
        shape,
        critical_rounds: critical,
        states_checked: 0,
        stuck_states: 0,
        counterexamples: Vec::new(),
        early_stuck: Vec::new(),
        holds: true,
    };
    let (g, mut prefix) = if critical == 0 {
        (Graph::complete(n)?, Vec::new())
    } else {
        ex.start()?
    };
    let mut seen = HashSet::new();
    enumerate_critical(&ex, g, &mut prefix, critical, &mut seen, &mut report)?;
    report.holds = report.counterexamples.is_empty() && report.early_stuck.is_empty();
    Ok(report)
}

fn enumerate_critical(
    ex: &Explorer<'_>,
    g: Graph,
    rounds: &mut Vec<Round>,
    critical: usize,
    seen: &mut HashSet<u128>,
    report: &mut CharacterizationReport,
) -> Result<()> {
    if !seen.insert(ex.key(&g)) {
        return Ok(());
    }
    if rounds.len() == critical {
        report.states_checked += 1;
        let t = Tournament::from_rounds(ex.shape, ex.n, rounds.clone())?;
        let (stuck, holds) = if ex.shape.k == 2 {
            let v = characterize_matching_stuck(&t)?;
            (v.is_stuck, v.biconditional)
        } else {
            let v = check_clique_stuck_characterization(&t)?;
            (v.is_stuck, v.holds())
        };
        if stuck {
            report.stuck_states += 1;
        }
        if !holds {
            report.counterexamples.push(t);
        }
        return Ok(());
    }
    let children = ex.factors(&g)?;
    if children.is_empty() {
        report
            .early_stuck
            .push(Tournament::from_rounds(ex.shape, ex.n, rounds.clone())?);
    }
    for r in children {
        let child = g.remove_round(&r)?;
        rounds.push(r);
        enumerate_critical(ex, child, rounds, critical, seen, report)?;
        rounds.pop();
    }
    Ok(())
}
