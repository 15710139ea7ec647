//! Exact backtracking search for clique- and cycle-factors.
//!
//! The search picks the uncovered vertex with the fewest uncovered neighbours
//! (lowest index on ties) and tries every block through it. Every node checks
//! three necessary conditions on the uncovered part `U`:
//!
//! * each vertex of `U` keeps enough neighbours inside `U`,
//! * each connected component of `G[U]` has size divisible by `k`,
//! * a greedy independent set of `G[U]` fits in the blocks still to be placed
//!   (one vertex per clique, `floor(k/2)` per cycle).
//!
//! Before the first node the graph is reduced: edges lying in no `K_k`
//! (cliques) or on no cycle at all (cycles) are removed until nothing changes.

use std::ops::ControlFlow;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::factor::{Block, FactorShape, Round, ShapeKind};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of search nodes before giving up with
    /// [`Error::BudgetExceeded`]. `None` searches to completion.
    pub budget: Option<u64>,
    /// Only factors whose blocks use the edge `{a, b}`; the block through it
    /// is built first, starting `a, b`.
    pub required_edge: Option<(usize, usize)>,
}

impl SearchOptions {
    pub fn with_budget(budget: u64) -> Self {
        SearchOptions {
            budget: Some(budget),
            ..Default::default()
        }
    }

    pub fn requiring_edge(mut self, a: usize, b: usize) -> Self {
        self.required_edge = Some((a, b));
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub found: usize,
}

/// Returns some `H`-factor of `g`, or `None` if none exists.
pub fn find_factor(g: &Graph, shape: FactorShape) -> Result<Option<Round>> {
    find_factor_with(g, shape, SearchOptions::default())
}

pub fn find_factor_with(
    g: &Graph,
    shape: FactorShape,
    opts: SearchOptions,
) -> Result<Option<Round>> {
    let mut out = None;
    for_each_factor(g, shape, opts, |r| {
        out = Some(r.clone());
        ControlFlow::Break(())
    })?;
    Ok(out)
}

/// Up to `limit` distinct factors, in search order.
pub fn enumerate_factors(g: &Graph, shape: FactorShape, limit: usize) -> Result<Vec<Round>> {
    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    for_each_factor(g, shape, SearchOptions::default(), |r| {
        out.push(r.clone());
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(out)
}

/// Calls `visit` on every factor of `g` exactly once until it breaks.
pub fn for_each_factor<F>(
    g: &Graph,
    shape: FactorShape,
    opts: SearchOptions,
    mut visit: F,
) -> Result<SearchStats>
where
    F: FnMut(&Round) -> ControlFlow<()>,
{
    let n = g.n();
    shape.check_divides(n)?;
    let mut s = Searcher::new(g, shape, opts);
    if !s.reduce_root() {
        return Ok(s.stats());
    }
    if let Some((a, b)) = s.required {
        if a == b || a >= n || b >= n || !s.g.has_edge(a, b) {
            return Ok(s.stats());
        }
    }
    let mut emit = |blocks: &[Vec<usize>]| -> ControlFlow<()> {
        let blocks = blocks
            .iter()
            .map(|b| Block::new(shape.kind, b.clone()).expect("search builds distinct blocks"))
            .collect();
        let round = Round::new(shape, n, blocks).expect("search builds valid rounds");
        visit(&round)
    };
    let _ = s.node(VertexSet::full(n), &mut emit)?;
    Ok(s.stats())
}

struct Searcher {
    g: Graph,
    k: usize,
    kind: ShapeKind,
    need: usize,
    per_block_independent: usize,
    blocks: Vec<Vec<usize>>,
    nodes: u64,
    found: usize,
    budget: Option<u64>,
    required: Option<(usize, usize)>,
}

type Emit<'a> = dyn FnMut(&[Vec<usize>]) -> ControlFlow<()> + 'a;

impl Searcher {
    fn new(g: &Graph, shape: FactorShape, opts: SearchOptions) -> Self {
        // Triangles are searched as cliques whatever the declared kind.
        let kind = if shape.k == 3 {
            ShapeKind::Clique
        } else {
            shape.kind
        };
        let (need, per_block_independent) = match kind {
            ShapeKind::Clique => (shape.k - 1, 1),
            ShapeKind::Cycle => (2, shape.k / 2),
        };
        Searcher {
            g: g.clone(),
            k: shape.k,
            kind,
            need,
            per_block_independent,
            blocks: Vec::new(),
            nodes: 0,
            found: 0,
            budget: opts.budget,
            required: opts.required_edge,
        }
    }

    fn stats(&self) -> SearchStats {
        SearchStats {
            nodes: self.nodes,
            found: self.found,
        }
    }

    /// Removes edges that cannot appear in any block. Returns `false` when the
    /// reduced graph certainly has no factor.
    fn reduce_root(&mut self) -> bool {
        loop {
            let mut changed = false;
            if self.g.min_degree() < self.need {
                return false;
            }
            match self.kind {
                ShapeKind::Clique if self.k > 2 => {
                    for (u, v) in self.g.edges() {
                        let common = self.g.neighbors(u).intersection_len(self.g.neighbors(v));
                        if common < self.k - 2 {
                            self.g.clear_edge(u, v);
                            changed = true;
                        }
                    }
                }
                ShapeKind::Cycle => {
                    for (u, v) in self.g.bridges() {
                        self.g.clear_edge(u, v);
                        changed = true;
                    }
                }
                _ => {}
            }
            if !changed {
                break;
            }
        }
        let all = self.g.vertices();
        if !self.feasible(&all) {
            return false;
        }
        // Independent sets grown from every start vertex.
        let cap = (self.g.n() / self.k) * self.per_block_independent;
        let order = self.degree_order(&all);
        for s in 0..self.g.n() {
            let mut indep = VertexSet::empty();
            indep.insert(s);
            let mut blocked = *self.g.neighbors(s);
            blocked.insert(s);
            for &v in &order {
                if !blocked.contains(v) {
                    indep.insert(v);
                    blocked = blocked.union(self.g.neighbors(v));
                    blocked.insert(v);
                }
            }
            if indep.len() > cap {
                return false;
            }
        }
        true
    }

    fn degree_order(&self, within: &VertexSet) -> Vec<usize> {
        let mut order: Vec<usize> = within.iter().collect();
        order.sort_by_key(|&v| (self.g.neighbors(v).intersection_len(within), v));
        order
    }

    /// Component and independence checks on `G[U]`.
    fn feasible(&self, uncovered: &VertexSet) -> bool {
        for comp in self.g.components_within(uncovered) {
            if comp.len() % self.k != 0 {
                return false;
            }
        }
        let cap = (uncovered.len() / self.k) * self.per_block_independent;
        let mut indep = 0usize;
        let mut blocked = VertexSet::empty();
        for v in self.degree_order(uncovered) {
            if !blocked.contains(v) {
                indep += 1;
                blocked = blocked.union(self.g.neighbors(v));
                blocked.insert(v);
            }
        }
        indep <= cap
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                return Err(Error::BudgetExceeded { budget: b });
            }
        }
        Ok(())
    }

    fn node(&mut self, uncovered: VertexSet, emit: &mut Emit<'_>) -> Result<ControlFlow<()>> {
        if uncovered.is_empty() {
            self.found += 1;
            return Ok(emit(&self.blocks));
        }
        self.tick()?;
        let mut pick = None;
        let mut best = usize::MAX;
        for u in uncovered.iter() {
            let d = self.g.neighbors(u).intersection_len(&uncovered);
            if d < best {
                best = d;
                pick = Some(u);
            }
        }
        if best < self.need || !self.feasible(&uncovered) {
            return Ok(ControlFlow::Continue(()));
        }
        let mut block = Vec::with_capacity(self.k);
        if let Some((a, b)) = self.required.filter(|&(a, _)| uncovered.contains(a)) {
            let mut rest = uncovered;
            rest.remove(a);
            rest.remove(b);
            block.push(a);
            block.push(b);
            return match self.kind {
                ShapeKind::Clique => {
                    let cand = rest
                        .intersection(self.g.neighbors(a))
                        .intersection(self.g.neighbors(b));
                    rest.insert(b);
                    self.grow_clique(rest, &mut block, cand, emit)
                }
                ShapeKind::Cycle => {
                    let cand = rest.intersection(self.g.neighbors(b));
                    rest.insert(b);
                    self.grow_cycle(rest, &mut block, cand, emit)
                }
            };
        }
        let v = pick.expect("uncovered is non-empty");
        let mut rest = uncovered;
        rest.remove(v);
        let cand = self.g.neighbors(v).intersection(&rest);
        block.push(v);
        match self.kind {
            ShapeKind::Clique => self.grow_clique(rest, &mut block, cand, emit),
            ShapeKind::Cycle => self.grow_cycle(rest, &mut block, cand, emit),
        }
    }

    fn close_block(
        &mut self,
        rest: VertexSet,
        block: &[usize],
        emit: &mut Emit<'_>,
    ) -> Result<ControlFlow<()>> {
        let mut next = rest;
        for &u in block {
            next.remove(u);
        }
        self.blocks.push(block.to_vec());
        let r = self.node(next, emit);
        self.blocks.pop();
        r
    }

    fn grow_clique(
        &mut self,
        rest: VertexSet,
        block: &mut Vec<usize>,
        cand: VertexSet,
        emit: &mut Emit<'_>,
    ) -> Result<ControlFlow<()>> {
        if block.len() == self.k {
            return self.close_block(rest, block, emit);
        }
        if block.len() + cand.len() < self.k {
            return Ok(ControlFlow::Continue(()));
        }
        for u in cand.iter() {
            block.push(u);
            let next = cand.intersection(self.g.neighbors(u)).above(u);
            let r = self.grow_clique(rest, block, next, emit)?;
            block.pop();
            if r.is_break() {
                return Ok(r);
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    /// Paths `v = p0, p1, .., p_{k-1}` closed by the edge `p_{k-1} p0`, with
    /// `p1 < p_{k-1}` so that each cycle is produced in one orientation only.
    fn grow_cycle(
        &mut self,
        rest: VertexSet,
        path: &mut Vec<usize>,
        cand: VertexSet,
        emit: &mut Emit<'_>,
    ) -> Result<ControlFlow<()>> {
        if path.len() == self.k {
            return self.close_block(rest, path, emit);
        }
        self.tick()?;
        let start = path[0];
        let mut options = cand;
        if path.len() == self.k - 1 {
            options = options.intersection(self.g.neighbors(start));
            // A forced first edge already fixes the orientation.
            if self.required != Some((path[0], path[1])) {
                options = options.above(path[1]);
            }
        }
        for u in options.iter() {
            path.push(u);
            let mut avail = rest;
            for &p in path.iter() {
                avail.remove(p);
            }
            let next = self.g.neighbors(u).intersection(&avail);
            let r = self.grow_cycle(rest, path, next, emit)?;
            path.pop();
            if r.is_break() {
                return Ok(r);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::complete_graph;

    fn clique(k: usize) -> FactorShape {
        FactorShape::clique(k).unwrap()
    }

    fn cycle(k: usize) -> FactorShape {
        FactorShape::cycle(k).unwrap()
    }

    #[test]
    fn complete_graph_has_triangle_factor() {
        let r = find_factor(&complete_graph(6).unwrap(), clique(3))
            .unwrap()
            .unwrap();
        assert_eq!(r.blocks().len(), 2);
    }

    #[test]
    fn two_triangles_have_no_perfect_matching() {
        assert_eq!(
            find_factor(&fixtures::figure1_feasibility(), clique(2)).unwrap(),
            None
        );
    }

    #[test]
    fn four_cycle_is_its_own_factor() {
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let r = find_factor(&c4, cycle(4)).unwrap().unwrap();
        assert_eq!(r.blocks()[0].vertices(), &[0, 1, 2, 3]);
    }

    #[test]
    fn divisibility_is_checked() {
        let g = complete_graph(7).unwrap();
        assert_eq!(
            find_factor(&g, clique(2)),
            Err(Error::Divisibility { n: 7, k: 2 })
        );
        assert!(enumerate_factors(&g, cycle(3), 5).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(
            enumerate_factors(&complete_graph(4).unwrap(), clique(2), 10)
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            enumerate_factors(&complete_graph(6).unwrap(), clique(2), 100)
                .unwrap()
                .len(),
            15
        );
        assert_eq!(
            enumerate_factors(&complete_graph(6).unwrap(), cycle(3), 100)
                .unwrap()
                .len(),
            10
        );
        assert_eq!(
            enumerate_factors(&complete_graph(6).unwrap(), clique(2), 4)
                .unwrap()
                .len(),
            4
        );
    }

    #[test]
    fn budget_is_reported_separately() {
        let g = complete_graph(24).unwrap();
        let r = find_factor_with(&g, clique(3), SearchOptions::with_budget(2));
        assert_eq!(r, Err(Error::BudgetExceeded { budget: 2 }));
    }

    #[test]
    fn bridge_removal_splits_components() {
        // two K_5 joined by one edge; no C_5-factor can use the bridge
        let mut edges = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                edges.push((a, b));
                edges.push((a + 5, b + 5));
            }
        }
        edges.push((4, 5));
        let g = Graph::from_edges(10, edges).unwrap();
        let all = enumerate_factors(&g, cycle(5), 1000).unwrap();
        assert_eq!(all.len(), 12 * 12);
        assert!(all.iter().all(|r| !r.edges().contains(&(4, 5))));
    }

    fn count_with(g: &Graph, shape: FactorShape, opts: SearchOptions) -> usize {
        for_each_factor(g, shape, opts, |_| ControlFlow::Continue(()))
            .unwrap()
            .found
    }

    #[test]
    fn required_edge_filters_exactly() {
        for (n, shape) in [
            (6, clique(2)),
            (6, clique(3)),
            (8, cycle(4)),
            (10, cycle(5)),
            (8, clique(4)),
        ] {
            let g = complete_graph(n).unwrap();
            let all = enumerate_factors(&g, shape, usize::MAX).unwrap();
            for (a, b) in [(0, 1), (0, 3), (2, 1)] {
                let expect = all
                    .iter()
                    .filter(|r| r.edges().contains(&(a.min(b), a.max(b))))
                    .count();
                let got = count_with(&g, shape, SearchOptions::default().requiring_edge(a, b));
                assert_eq!(got, expect, "n = {n}, {shape}, edge {a}-{b}");
            }
        }
        let g = fixtures::figure1_feasibility();
        assert_eq!(
            count_with(&g, clique(2), SearchOptions::default().requiring_edge(0, 3)),
            0
        );
    }
}
