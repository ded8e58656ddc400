//! Linear-time decision procedure for the max isoperimetric problem on
//! weighted trees with ground flows.
//!
//! The tree is peeled from the leaves up (reverse breadth-first order from
//! the root). For the current leaf `v` with pendant edge `e` to its parent `u`:
//!
//! 1. `γ(v) + c(e) <= N ω(v)`: `v`'s accumulated set becomes a part and
//!    `c(e)` is pushed onto `γ(u)`;
//! 2. otherwise, if `γ(v) - c(e) < N ω(v)`: `v` is contracted into `u`;
//! 3. otherwise `v` is dropped and `c(e)` is pushed onto `γ(u)`.
//!
//! The root uses `c(e) = 0`. The scan stops as soon as `k` parts exist.

use std::collections::VecDeque;

use num_traits::Signed;

use crate::arith::{exact_dispatch, Exact, Frac, Scaled};
use crate::error::{Error, Result};
use crate::graph::{Subpartition, VertexSet, WeightedGraph};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecideStats {
    /// Vertices taken off the tree before the scan stopped.
    pub processed: usize,
    /// Elementary arithmetic operations performed by the scan.
    pub arith_ops: usize,
}

#[derive(Debug, Clone)]
pub struct Decision {
    pub answer: Answer,
    /// Present iff the answer is YES: `k` disjoint parts with max flow `<= N`.
    pub witness: Option<Subpartition>,
    /// Max normalized flow of the witness. An upper bound on the optimum,
    /// not a claim of optimality.
    pub witness_value: Option<Rational>,
    pub stats: DecideStats,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }
}

/// Decides whether the `k`-th max isoperimetric number of `t` is at most
/// `threshold`, rooting the tree at the last vertex.
pub fn decide_ipp_max(t: &WeightedGraph, k: usize, threshold: &Rational) -> Result<Decision> {
    decide_ipp_max_rooted(t, k, threshold, t.n() - 1)
}

/// [`decide_ipp_max`] with an explicit root. The answer does not depend on
/// the root; the witness may.
pub fn decide_ipp_max_rooted(t: &WeightedGraph, k: usize, threshold: &Rational, root: usize) -> Result<Decision> {
    t.require_tree()?;
    t.require_k(k)?;
    if !threshold.is_positive() {
        return Err(Error::pre(format!("threshold must be positive, got {threshold}")));
    }
    if root >= t.n() {
        return Err(Error::VertexOutOfRange { id: root + 1, n: t.n() });
    }
    let order = LeafOrder::new(t, root);
    let out = exact_dispatch!(scan(t, &order, k, threshold));
    Ok(out)
}

/// Vertices in reverse breadth-first order with their parent links.
struct LeafOrder {
    order: Vec<usize>,
    parent: Vec<Option<(usize, usize)>>,
}

impl LeafOrder {
    fn new(t: &WeightedGraph, root: usize) -> Self {
        let n = t.n();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &(y, e) in t.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, e));
                    queue.push_back(y);
                }
            }
        }
        order.reverse();
        LeafOrder { order, parent }
    }
}

const NIL: usize = usize::MAX;

fn scan<T: Exact>(t: &WeightedGraph, lo: &LeafOrder, k: usize, threshold: &Rational) -> Option<Decision> {
    let s = Scaled::<T>::new(t)?;
    let Frac { num: p, den: q } = s.scale_threshold(threshold)?;
    let n = t.n();
    let mut omega = s.omega.clone();
    let mut gamma = s.gamma.clone();
    // η(v) as intrusive linked lists headed by v.
    let mut next = vec![NIL; n];
    let mut tail: Vec<usize> = (0..n).collect();
    let mut parts: Vec<(usize, Frac<T>)> = Vec::with_capacity(k);
    let mut stats = DecideStats::default();
    let zero = T::zero();

    for &v in &lo.order {
        if parts.len() == k {
            break;
        }
        stats.processed += 1;
        let (ce, up) = match lo.parent[v] {
            Some((u, e)) => (&s.cost[e], Some(u)),
            None => (&zero, None),
        };
        let out = gamma[v].add_(ce)?;
        let budget = p.mul_(&omega[v])?;
        stats.arith_ops += 3;
        if q.mul_(&out)? <= budget {
            parts.push((v, Frac::new(out, omega[v].clone())));
            if let Some(u) = up {
                gamma[u] = gamma[u].add_(ce)?;
                stats.arith_ops += 1;
            }
            continue;
        }
        stats.arith_ops += 2;
        let merge = q.mul_(&gamma[v].sub_(ce)?)? < budget;
        match up {
            Some(u) if merge => {
                next[tail[u]] = v;
                tail[u] = tail[v];
                omega[u] = omega[u].add_(&omega[v])?;
                gamma[u] = gamma[u].add_(&gamma[v])?;
                stats.arith_ops += 2;
            }
            Some(u) => {
                gamma[u] = gamma[u].add_(ce)?;
                stats.arith_ops += 1;
            }
            // Unreachable for the root: with c(e) = 0 the merge test
            // contradicts the failed part test.
            None => {}
        }
    }

    if parts.len() < k {
        return Some(Decision {
            answer: Answer::No,
            witness: None,
            witness_value: None,
            stats,
        });
    }
    let mut best = &parts[0].1;
    for (_, f) in &parts[1..] {
        best = best.max(f)?;
    }
    let witness_value = s.unscale(best);
    let sets = parts
        .iter()
        .map(|&(head, _)| {
            let mut members = Vec::new();
            let mut x = head;
            while x != NIL {
                members.push(x);
                x = next[x];
            }
            VertexSet::new(members)
        })
        .collect();
    let witness = Subpartition::new(sets).expect("parts are disjoint and nonempty");
    Some(Decision {
        answer: Answer::Yes,
        witness: Some(witness),
        witness_value: Some(witness_value),
        stats,
    })
}
