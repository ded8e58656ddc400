//! Weighted graphs, vertex sets and the cost evaluators.
//!
//! Vertices are addressed by 0-based index internally; the text formats in
//! [`crate::format`] use 1-based ids.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub c: Rational,
}

impl Edge {
    pub fn new(u: usize, v: usize, c: Rational) -> Self {
        Edge { u, v, c }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A simple graph with positive vertex weights `omega`, nonnegative ground
/// flows `gamma` and positive edge weights.
#[derive(Clone)]
pub struct WeightedGraph {
    omega: Vec<Rational>,
    gamma: Vec<Rational>,
    edges: Vec<Edge>,
    is_tree: bool,
    // (neighbour, edge index)
    adj: Vec<Vec<(usize, usize)>>,
}

impl PartialEq for WeightedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.omega == other.omega
            && self.gamma == other.gamma
            && self.edges == other.edges
            && self.is_tree == other.is_tree
    }
}

impl Eq for WeightedGraph {}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedGraph")
            .field("n", &self.n())
            .field("is_tree", &self.is_tree)
            .field("omega", &self.omega.iter().map(|r| r.to_string()).collect::<Vec<_>>())
            .field("gamma", &self.gamma.iter().map(|r| r.to_string()).collect::<Vec<_>>())
            .field(
                "edges",
                &self
                    .edges
                    .iter()
                    .map(|e| format!("{}-{}:{}", e.u, e.v, e.c))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl WeightedGraph {
    /// Validates and builds a graph. `gamma` may be empty, meaning all zero.
    /// When `tree` is set the edges must form a spanning tree.
    pub fn new(omega: Vec<Rational>, gamma: Vec<Rational>, edges: Vec<Edge>, tree: bool) -> Result<Self> {
        let n = omega.len();
        if n == 0 {
            return Err(Error::InvalidSet("graph has no vertices".into()));
        }
        let gamma = if gamma.is_empty() {
            vec![Rational::zero(); n]
        } else {
            gamma
        };
        if gamma.len() != n {
            return Err(Error::InvalidSet(format!(
                "gamma has {} entries for {n} vertices",
                gamma.len()
            )));
        }
        for (v, w) in omega.iter().enumerate() {
            if !w.is_positive() {
                return Err(Error::NonPositiveWeight {
                    what: format!("weight of vertex {}", v + 1),
                    value: w.to_string(),
                });
            }
        }
        for (v, g) in gamma.iter().enumerate() {
            if g.is_negative() {
                return Err(Error::NonPositiveWeight {
                    what: format!("ground flow of vertex {} (must be >= 0)", v + 1),
                    value: g.to_string(),
                });
            }
        }
        let mut adj = vec![Vec::new(); n];
        let mut seen = HashSet::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { id: x + 1, n });
                }
            }
            if e.u == e.v {
                return Err(Error::SelfLoop(e.u + 1));
            }
            if !e.c.is_positive() {
                return Err(Error::NonPositiveWeight {
                    what: format!("weight of edge {}-{}", e.u + 1, e.v + 1),
                    value: e.c.to_string(),
                });
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(Error::DuplicateEdge { u: e.u + 1, v: e.v + 1 });
            }
            adj[e.u].push((e.v, i));
            adj[e.v].push((e.u, i));
        }
        let g = WeightedGraph {
            omega,
            gamma,
            edges,
            is_tree: tree,
            adj,
        };
        if tree {
            if g.edges.len() != n - 1 {
                return Err(Error::NotATree(format!("{} edges on {n} vertices", g.edges.len())));
            }
            if !g.is_connected() {
                return Err(Error::NotATree("edges do not connect all vertices".into()));
            }
        }
        Ok(g)
    }

    pub fn tree(omega: Vec<Rational>, edges: Vec<Edge>) -> Result<Self> {
        Self::new(omega, Vec::new(), edges, true)
    }

    pub fn graph(omega: Vec<Rational>, edges: Vec<Edge>) -> Result<Self> {
        Self::new(omega, Vec::new(), edges, false)
    }

    /// Same graph with the tree flag recomputed from the edge set.
    pub fn detect_tree(self) -> Self {
        let is_tree = self.edges.len() + 1 == self.n() && self.is_connected();
        WeightedGraph { is_tree, ..self }
    }

    pub fn n(&self) -> usize {
        self.omega.len()
    }

    pub fn omega(&self) -> &[Rational] {
        &self.omega
    }

    pub fn gamma(&self) -> &[Rational] {
        &self.gamma
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_tree(&self) -> bool {
        self.is_tree
    }

    /// `(neighbour, edge index)` pairs incident to `v`.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn has_ground_flow(&self) -> bool {
        self.gamma.iter().any(|g| !g.is_zero())
    }

    pub fn total_omega(&self) -> Rational {
        self.omega.iter().sum()
    }

    pub fn total_edge_weight(&self) -> Rational {
        self.edges.iter().map(|e| &e.c).sum()
    }

    pub fn min_edge_weight(&self) -> Option<Rational> {
        self.edges.iter().map(|e| &e.c).min().cloned()
    }

    pub fn min_omega(&self) -> Rational {
        self.omega.iter().min().cloned().expect("graph is nonempty")
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == self.n()
    }

    /// Requires the tree flag, as every tree-only solver does.
    pub(crate) fn require_tree(&self) -> Result<()> {
        if self.is_tree {
            Ok(())
        } else {
            Err(Error::NotATree("instance is not flagged as a tree".into()))
        }
    }

    pub(crate) fn require_k(&self, k: usize) -> Result<()> {
        if k < 2 || k > self.n() {
            Err(Error::pre(format!("k = {k} must satisfy 2 <= k <= n = {}", self.n())))
        } else {
            Ok(())
        }
    }

    fn check_set(&self, a: &VertexSet) -> Result<()> {
        if a.is_empty() {
            return Err(Error::InvalidSet("empty vertex set".into()));
        }
        if let Some(&x) = a.ids().last() {
            if x >= self.n() {
                return Err(Error::VertexOutOfRange { id: x + 1, n: self.n() });
            }
        }
        Ok(())
    }

    /// `c(A)`: weight of edges with exactly one endpoint in `A` plus the ground
    /// flow of `A`.
    pub fn cut_weight(&self, a: &VertexSet) -> Result<Rational> {
        self.check_set(a)?;
        let mut inside = vec![false; self.n()];
        for &x in a.ids() {
            inside[x] = true;
        }
        let mut cut = Rational::zero();
        for &x in a.ids() {
            cut += &self.gamma[x];
            for &(y, e) in &self.adj[x] {
                if !inside[y] {
                    cut += &self.edges[e].c;
                }
            }
        }
        Ok(cut)
    }

    pub fn set_weight(&self, a: &VertexSet) -> Result<Rational> {
        self.check_set(a)?;
        Ok(a.ids().iter().map(|&x| &self.omega[x]).sum())
    }

    /// Normalized outgoing flow `c(A) / ω(A)`.
    pub fn normalized_flow(&self, a: &VertexSet) -> Result<Rational> {
        Ok(self.cut_weight(a)? / self.set_weight(a)?)
    }

    pub fn subpartition_cost(&self, parts: &Subpartition, variant: Variant) -> Result<Rational> {
        if parts
            .parts()
            .iter()
            .any(|p| p.ids().last().is_some_and(|&x| x >= self.n()))
        {
            return Err(Error::InvalidSet("part refers to a vertex outside the graph".into()));
        }
        let flows = parts
            .parts()
            .iter()
            .map(|p| self.normalized_flow(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(match variant {
            Variant::Max => flows.into_iter().max().expect("k >= 1"),
            Variant::Mean => {
                let k = Rational::from_integer(flows.len().into());
                flows.into_iter().sum::<Rational>() / k
            }
        })
    }

    /// Connected components of the tree after deleting the edges `removed`
    /// (edge indices), ordered by smallest vertex.
    pub fn components_after_removal(&self, removed: &[usize]) -> Result<Vec<VertexSet>> {
        self.require_tree()?;
        let mut cut = vec![false; self.edges.len()];
        for &e in removed {
            if e >= self.edges.len() {
                return Err(Error::InvalidSet(format!("edge index {e} is not in the tree")));
            }
            cut[e] = true;
        }
        Ok(self.components_where(|e| !cut[e], |_| true))
    }

    /// Components of the subgraph keeping edges for which `keep_edge` holds,
    /// restricted to vertices with `keep_vertex`. Ordered by smallest vertex.
    pub(crate) fn components_where(
        &self,
        keep_edge: impl Fn(usize) -> bool,
        keep_vertex: impl Fn(usize) -> bool,
    ) -> Vec<VertexSet> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX || !keep_vertex(s) {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            stack.push(s);
            let mut members = Vec::new();
            while let Some(x) = stack.pop() {
                members.push(x);
                for &(y, e) in &self.adj[x] {
                    if comp[y] == usize::MAX && keep_edge(e) && keep_vertex(y) {
                        comp[y] = id;
                        stack.push(y);
                    }
                }
            }
            out.push(VertexSet::new(members));
        }
        out
    }

    /// Contracts every connected component of every part of `pi`.
    ///
    /// Quotient vertices are ordered by the smallest original vertex they
    /// contain. Returns the quotient and the map original → quotient vertex.
    pub fn quotient(&self, pi: &Partition) -> Result<(WeightedGraph, Vec<usize>)> {
        pi.check_against(self.n())?;
        let mut part_of = vec![0usize; self.n()];
        for (i, p) in pi.parts().iter().enumerate() {
            for &x in p.ids() {
                part_of[x] = i;
            }
        }
        let comps = self.components_where(|e| part_of[self.edges[e].u] == part_of[self.edges[e].v], |_| true);
        let mut map = vec![0usize; self.n()];
        for (q, c) in comps.iter().enumerate() {
            for &x in c.ids() {
                map[x] = q;
            }
        }
        let omega = comps
            .iter()
            .map(|c| c.ids().iter().map(|&x| &self.omega[x]).sum())
            .collect();
        let gamma = comps
            .iter()
            .map(|c| c.ids().iter().map(|&x| &self.gamma[x]).sum())
            .collect();
        let mut merged: std::collections::BTreeMap<(usize, usize), Rational> = Default::default();
        for e in &self.edges {
            let (a, b) = (map[e.u], map[e.v]);
            if a != b {
                *merged.entry((a.min(b), a.max(b))).or_insert_with(Rational::zero) += &e.c;
            }
        }
        let edges = merged.into_iter().map(|((a, b), c)| Edge::new(a, b, c)).collect();
        let q = WeightedGraph::new(omega, gamma, edges, false)?.detect_tree();
        Ok((q, map))
    }
}

/// Sorted, duplicate-free list of vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet(ids)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(vec![v])
    }

    pub fn ids(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.0.iter().chain(other.0.iter()).copied().collect())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// `k >= 1` pairwise disjoint nonempty vertex sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subpartition(Vec<VertexSet>);

impl Subpartition {
    pub fn new(parts: Vec<VertexSet>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidSet("a subpartition needs at least one part".into()));
        }
        let mut seen = HashSet::new();
        for p in &parts {
            if p.is_empty() {
                return Err(Error::InvalidSet("empty part".into()));
            }
            for &x in p.ids() {
                if !seen.insert(x) {
                    return Err(Error::InvalidSet(format!("vertex {} in two parts", x + 1)));
                }
            }
        }
        Ok(Subpartition(parts))
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn into_parts(self) -> Vec<VertexSet> {
        self.0
    }

    pub fn covered(&self) -> usize {
        self.0.iter().map(VertexSet::len).sum()
    }

    /// Parts reordered by smallest vertex.
    pub fn canonical(&self) -> Subpartition {
        let mut parts = self.0.clone();
        parts.sort_by_key(|p| p.min());
        Subpartition(parts)
    }

    pub fn is_partition_of(&self, n: usize) -> bool {
        self.covered() == n && self.0.iter().all(|p| p.ids().last().is_some_and(|&x| x < n))
    }

    pub(crate) fn check_against(&self, n: usize) -> Result<()> {
        for p in &self.0 {
            if let Some(&x) = p.ids().last() {
                if x >= n {
                    return Err(Error::VertexOutOfRange { id: x + 1, n });
                }
            }
        }
        Ok(())
    }
}

/// A subpartition whose parts cover every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition(Subpartition);

impl Partition {
    pub fn new(parts: Vec<VertexSet>, n: usize) -> Result<Self> {
        Self::from_subpartition(Subpartition::new(parts)?, n)
    }

    pub fn from_subpartition(s: Subpartition, n: usize) -> Result<Self> {
        s.check_against(n)?;
        if s.covered() != n {
            return Err(Error::InvalidSet(format!(
                "parts cover {} of {n} vertices",
                s.covered()
            )));
        }
        Ok(Partition(s))
    }

    pub fn parts(&self) -> &[VertexSet] {
        self.0.parts()
    }

    pub fn as_subpartition(&self) -> &Subpartition {
        &self.0
    }

    pub fn into_subpartition(self) -> Subpartition {
        self.0
    }

    fn check_against(&self, n: usize) -> Result<()> {
        if self.0.is_partition_of(n) {
            Ok(())
        } else {
            Err(Error::InvalidSet(format!("not a partition of {n} vertices")))
        }
    }
}

/// Max or mean aggregation of the parts' normalized flows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Max,
    Mean,
}

/// The four parameters: subpartitions (IPP) or partitions (NCP), max or mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    IppMax,
    IppMean,
    NcpMax,
    NcpMean,
}

impl Problem {
    pub const ALL: [Problem; 4] = [Problem::IppMax, Problem::IppMean, Problem::NcpMax, Problem::NcpMean];

    pub fn variant(self) -> Variant {
        match self {
            Problem::IppMax | Problem::NcpMax => Variant::Max,
            Problem::IppMean | Problem::NcpMean => Variant::Mean,
        }
    }

    /// Whether parts must cover all vertices.
    pub fn is_partition(self) -> bool {
        matches!(self, Problem::NcpMax | Problem::NcpMean)
    }

    pub fn name(self) -> &'static str {
        match self {
            Problem::IppMax => "ipp-max",
            Problem::IppMean => "ipp-mean",
            Problem::NcpMax => "ncp-max",
            Problem::NcpMean => "ncp-mean",
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::pre(format!("unknown problem {s:?}")))
    }
}
