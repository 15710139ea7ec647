//! The greedy tournament loop: keep deleting an `H`-factor of the feasibility
//! graph until none is left.

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::bounds::guarantee_rounds;
use crate::error::{Error, Result};
use crate::factor::{enumerate_factors, find_factor, FactorShape, Round};
use crate::graph::Graph;
use crate::tournament::Tournament;

/// Default number of enumerated factors a random or callback strategy picks from.
pub const DEFAULT_POOL: usize = 1000;

pub type Chooser = Box<dyn FnMut(&Graph, &[Round]) -> usize>;

/// How the next round is picked among the factors of the feasibility graph.
pub enum Strategy {
    /// The first factor the deterministic search finds.
    FirstFound,
    /// Uniform choice among the first `pool` factors of a randomly relabelled
    /// feasibility graph.
    Random { seed: u64, pool: usize },
    /// Play these rounds in order, then stop.
    Scripted(Vec<Round>),
    /// The caller picks an index into the first [`DEFAULT_POOL`] factors.
    Callback(Chooser),
}

impl Strategy {
    pub fn random(seed: u64) -> Self {
        Strategy::Random {
            seed,
            pool: DEFAULT_POOL,
        }
    }

    fn name(&self) -> String {
        match self {
            Strategy::FirstFound => "first-found".into(),
            Strategy::Random { seed, pool } => format!("random(seed={seed}, pool={pool})"),
            Strategy::Scripted(r) => format!("scripted({} rounds)", r.len()),
            Strategy::Callback(_) => "callback".into(),
        }
    }
}

impl fmt::Debug for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GreedyReport {
    pub strategy: String,
    pub tournament: Tournament,
    /// No factor remained when the loop stopped.
    pub stuck: bool,
    pub rounds_played: usize,
    pub guarantee: usize,
    /// Common degree of the feasibility graph after each round.
    pub degree_trace: Vec<usize>,
    #[serde(serialize_with = "crate::graph::serialize_edges")]
    pub final_feasibility_graph: Graph,
}

pub fn run_greedy(n: usize, shape: FactorShape, strategy: Strategy) -> Result<GreedyReport> {
    let guarantee = guarantee_rounds(n, shape)?;
    let name = strategy.name();
    let mut t = Tournament::empty(shape, n)?;
    let mut g = t.feasibility_graph();
    let mut trace = Vec::new();
    let mut strategy = strategy;
    let mut rng = match &strategy {
        Strategy::Random { seed, .. } => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let stuck;
    loop {
        let next = match &mut strategy {
            Strategy::FirstFound => find_factor(&g, shape)?,
            Strategy::Random { pool, .. } => {
                let rng = rng.as_mut().expect("seeded above");
                random_factor(&g, shape, *pool, rng)?
            }
            Strategy::Scripted(script) => {
                let i = t.len();
                if i >= script.len() {
                    stuck = find_factor(&g, shape)?.is_none();
                    break;
                }
                let r = script[i].clone();
                if r.n() != n || r.shape().k != shape.k {
                    return Err(Error::ScriptedRoundInvalid {
                        index: i,
                        reason: "shape or size mismatch".into(),
                    });
                }
                if let Some((u, v)) = r.edges().into_iter().find(|&(u, v)| !g.has_edge(u, v)) {
                    return Err(Error::ScriptedRoundInvalid {
                        index: i,
                        reason: format!("edge {{{u}, {v}}} already played"),
                    });
                }
                Some(r)
            }
            Strategy::Callback(choose) => {
                let pool = enumerate_factors(&g, shape, DEFAULT_POOL)?;
                if pool.is_empty() {
                    None
                } else {
                    let idx = choose(&g, &pool);
                    Some(pool.get(idx).cloned().ok_or_else(|| {
                        Error::InvalidParameter(format!(
                            "callback chose {idx} of {} factors",
                            pool.len()
                        ))
                    })?)
                }
            }
        };
        let Some(round) = next else {
            stuck = true;
            break;
        };
        g = g.remove_round(&round)?;
        t = t.extend(round)?;
        let expected = n - 1 - t.len() * shape.degree_per_round();
        debug_assert_eq!(g.regular_degree(), Some(expected));
        trace.push(expected);
    }
    Ok(GreedyReport {
        strategy: name,
        rounds_played: t.len(),
        tournament: t,
        stuck,
        guarantee,
        degree_trace: trace,
        final_feasibility_graph: g,
    })
}

fn random_factor(
    g: &Graph,
    shape: FactorShape,
    pool: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Round>> {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let relabelled = g.relabel(&perm);
    let found = enumerate_factors(&relabelled, shape, pool.max(1))?;
    if found.is_empty() {
        return Ok(None);
    }
    let pick = &found[rng.gen_range(0..found.len())];
    let mut inverse = vec![0; n];
    for (old, &new) in perm.iter().enumerate() {
        inverse[new] = old;
    }
    Ok(Some(pick.relabel(&inverse)))
}
