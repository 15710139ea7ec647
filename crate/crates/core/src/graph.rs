//! Dense undirected graphs on vertices `0..n`.
//!
//! Adjacency is stored as one [`VertexSet`] row per vertex. Public operations
//! never mutate a graph in place; they return a new value.

use std::fmt::Write as _;

use crate::bitset::{VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::factor::Round;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "graph needs at least one vertex".into(),
            ));
        }
        if n > MAX_VERTICES {
            return Err(Error::InvalidParameter(format!(
                "at most {MAX_VERTICES} vertices are supported, got {n}"
            )));
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::empty(); n],
        })
    }

    /// `K_n`.
    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let all = VertexSet::full(n);
        for (v, row) in g.adj.iter_mut().enumerate() {
            *row = all;
            row.remove(v);
        }
        Ok(g)
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidParameter(format!(
                    "bad edge {{{u}, {v}}} for n = {n}"
                )));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].above(u).iter() {
                out.push((u, v));
            }
        }
        out
    }

    pub fn complement(&self) -> Graph {
        let all = VertexSet::full(self.n);
        let adj = self
            .adj
            .iter()
            .enumerate()
            .map(|(v, row)| {
                let mut c = all.difference(row);
                c.remove(v);
                c
            })
            .collect();
        Graph { n: self.n, adj }
    }

    /// Removes every edge induced by the blocks of `round`.
    pub fn remove_round(&self, round: &Round) -> Result<Graph> {
        let mut g = self.clone();
        for block in round.blocks() {
            for (u, v) in block.edges() {
                if !g.has_edge(u, v) {
                    return Err(Error::MissingEdge {
                        u: u.min(v),
                        v: u.max(v),
                    });
                }
                g.clear_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn with_edge_removed(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.clear_edge(u, v);
        g
    }

    /// Subgraph induced on `keep`, relabelled to `0..keep.len()` in increasing order.
    pub fn induced(&self, keep: &[usize]) -> Result<Graph> {
        let mut g = Self::empty(keep.len())?;
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Applies `perm` (old id -> new id) to the vertex labels.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph {
            n: self.n,
            adj: vec![VertexSet::empty(); self.n],
        };
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        g
    }

    /// Connected components restricted to `within`, each as a vertex set.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut rest = *within;
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let mut comp = VertexSet::empty();
            comp.insert(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::empty();
                for v in frontier.iter() {
                    next = next.union(&self.adj[v]);
                }
                next = next.intersection(within).difference(&comp);
                comp = comp.union(&next);
                frontier = next;
            }
            rest = rest.difference(&comp);
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertices())
    }

    /// Edges that lie on no cycle.
    pub fn bridges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut out = Vec::new();
        let mut timer = 0usize;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            // (vertex, parent, remaining neighbours)
            let mut stack: Vec<(usize, usize, crate::bitset::Iter)> = Vec::new();
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, usize::MAX, self.adj[root].iter()));
            while let Some(top) = stack.last_mut() {
                let (v, parent) = (top.0, top.1);
                if let Some(w) = top.2.next() {
                    if w == parent {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, v, self.adj[w].iter()));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(p) = stack.last() {
                        let p = p.0;
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            out.push((p.min(v), p.max(v)));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Two-colouring of the whole graph if it is bipartite.
    pub fn bipartition(&self) -> Option<(VertexSet, VertexSet)> {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = vec![s];
            while let Some(v) = queue.pop() {
                for w in self.adj[v].iter() {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[v];
                        queue.push(w);
                    } else if side[w] == side[v] {
                        return None;
                    }
                }
            }
        }
        let a = (0..self.n).filter(|&v| side[v] == 0).collect();
        let b = (0..self.n).filter(|&v| side[v] == 1).collect();
        Some((a, b))
    }

    /// Whether this graph is `K_{n/2,n/2}`.
    pub fn is_balanced_complete_bipartite(&self) -> bool {
        if !self.n.is_multiple_of(2) {
            return false;
        }
        let half = self.n / 2;
        match self.bipartition() {
            Some((a, b)) if a.len() == half && b.len() == half => {
                a.iter().all(|v| self.adj[v] == b) && b.iter().all(|v| self.adj[v] == a)
            }
            _ => false,
        }
    }

    /// Whether `set` induces a complete subgraph.
    pub fn is_clique(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| {
            let mut others = *set;
            others.remove(v);
            others.is_subset(&self.adj[v])
        })
    }

    /// Whether `set` induces an edgeless subgraph.
    pub fn is_independent(&self, set: &VertexSet) -> bool {
        set.iter().all(|v| self.adj[v].is_disjoint(set))
    }

    /// Finds a clique of exactly `size` vertices, if one exists.
    pub fn find_clique(&self, size: usize) -> Option<VertexSet> {
        fn grow(g: &Graph, chosen: &mut Vec<usize>, cand: VertexSet, size: usize) -> bool {
            if chosen.len() == size {
                return true;
            }
            if chosen.len() + cand.len() < size {
                return false;
            }
            for v in cand.iter() {
                chosen.push(v);
                let next = cand.intersection(&g.adj[v]).above(v);
                if grow(g, chosen, next, size) {
                    return true;
                }
                chosen.pop();
            }
            false
        }
        if size == 0 {
            return Some(VertexSet::empty());
        }
        let mut chosen = Vec::with_capacity(size);
        // Vertices of degree < size-1 cannot be in such a clique.
        let cand: VertexSet = (0..self.n)
            .filter(|&v| self.degree(v) + 1 >= size)
            .collect();
        grow(self, &mut chosen, cand, size).then(|| chosen.into_iter().collect())
    }

    /// Text edge list: `n m` followed by `m` lines `u v` with `u < v`.
    pub fn to_edge_list(&self) -> String {
        let edges = self.edges();
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n, edges.len());
        for (u, v) in edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let (n, m) = parse_pair(hl, header)?;
        let mut g = Self::empty(n).map_err(|e| Error::Parse {
            line: hl,
            msg: e.to_string(),
        })?;
        let mut count = 0;
        for (ln, line) in lines {
            let (u, v) = parse_pair(ln, line)?;
            if !(u < v && v < n) {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("expected 0 <= u < v < {n}"),
                });
            }
            if g.has_edge(u, v) {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("duplicate edge {u} {v}"),
                });
            }
            g.set_edge(u, v);
            count += 1;
        }
        if count != m {
            return Err(Error::Parse {
                line: hl,
                msg: format!("header announces {m} edges, found {count}"),
            });
        }
        Ok(g)
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    #[inline]
    pub(crate) fn clear_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize)> {
    let mut it = s.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(Error::Parse {
            line,
            msg: format!("expected two integers, got {s:?}"),
        }),
    }
}

/// Serializes a graph as `{"n": .., "edges": [[u, v], ..]}`.
pub fn serialize_edges<S: serde::Serializer>(
    g: &Graph,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Graph", 2)?;
    st.serialize_field("n", &g.n)?;
    st.serialize_field("edges", &g.edges())?;
    st.end()
}

impl serde::Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serialize_edges(self, s)
    }
}

/// `K_n` as a free function, rejecting `n = 0`.
pub fn complete_graph(n: usize) -> Result<Graph> {
    Graph::complete(n)
}
