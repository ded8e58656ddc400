//! Exact max/mean isoperimetric numbers and max normalized cut of weighted
//! trees for a fixed number of parts, by enumerating bounded edge subsets.
//!
//! Removing `|F|` edges from a tree leaves `|F| + 1` components. Some optimal
//! (sub)partition is a union of the components of a small cut set, so it is
//! enough to sweep every `F` with `|F|` in [`enumeration_bounds`]:
//!
//! * subpartitions: take the `k` components with the smallest normalized
//!   flows;
//! * partitions: group the components into exactly `k` blocks in every
//!   possible way (restricted growth strings, one per unordered grouping).
//!
//! Subsets are independent, so the sweep runs on a rayon pool. Ties are
//! broken by enumeration order (size, then lexicographic), which keeps the
//! witness independent of the worker count.

use std::cmp::Ordering;
use std::ops::RangeInclusive;

use itertools::Itertools;
use rayon::prelude::*;

use crate::arith::{exact_dispatch, Exact, Frac, Scaled};
use crate::error::{Error, Result};
use crate::graph::{Problem, Subpartition, VertexSet, WeightedGraph};
use crate::rational::Rational;

/// Largest `k` accepted by [`exact_ncp_max_fixed_k`]; the subset range grows
/// like `2k²`.
pub const MAX_NCP_K: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub problem: Problem,
    pub value: Rational,
    pub witness: Subpartition,
}

#[derive(Debug, Clone, Default)]
pub struct ExactOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
    /// Overrides the removed-edge count range (still capped at `n - 1`).
    pub removed: Option<RangeInclusive<usize>>,
}

/// Range of removed-edge counts `|F|` swept for `problem` at `k` parts.
pub fn enumeration_bounds(k: usize, problem: Problem) -> Result<(usize, usize)> {
    if k < 2 {
        return Err(Error::pre(format!("k = {k} must be at least 2")));
    }
    match problem {
        Problem::IppMax | Problem::IppMean => Ok((k - 1, (3 * k - 3) / 2)),
        Problem::NcpMax => {
            let quad = (2 * k * k).saturating_sub(6 * k + 3);
            Ok((k - 1, quad.max(k - 1)))
        }
        Problem::NcpMean => Err(Error::pre("no fixed-k enumeration exists for ncp-mean")),
    }
}

/// Computes the `k`-th max and mean isoperimetric numbers of a tree.
pub fn exact_ipp_fixed_k(t: &WeightedGraph, k: usize) -> Result<(SolveResult, SolveResult)> {
    exact_ipp_fixed_k_with(t, k, &ExactOptions::default())
}

pub fn exact_ipp_fixed_k_with(t: &WeightedGraph, k: usize, opts: &ExactOptions) -> Result<(SolveResult, SolveResult)> {
    let subsets = prepare(t, k, Problem::IppMax, opts)?;
    let (max, mean) = run_pool(opts.jobs, || exact_dispatch!(ipp_kernel(t, k, &subsets)))?;
    Ok((
        finish(t, Problem::IppMax, max, &subsets),
        finish(t, Problem::IppMean, mean, &subsets),
    ))
}

/// Computes the `k`-th max normalized cut of a tree.
pub fn exact_ncp_max_fixed_k(t: &WeightedGraph, k: usize) -> Result<SolveResult> {
    exact_ncp_max_fixed_k_with(t, k, &ExactOptions::default())
}

pub fn exact_ncp_max_fixed_k_with(t: &WeightedGraph, k: usize, opts: &ExactOptions) -> Result<SolveResult> {
    if k > MAX_NCP_K {
        return Err(Error::pre(format!(
            "k = {k} exceeds the supported maximum {MAX_NCP_K} for ncp-max"
        )));
    }
    let subsets = prepare(t, k, Problem::NcpMax, opts)?;
    let best = run_pool(opts.jobs, || exact_dispatch!(ncp_kernel(t, k, &subsets)))?;
    Ok(finish(t, Problem::NcpMax, best, &subsets))
}

fn prepare(t: &WeightedGraph, k: usize, problem: Problem, opts: &ExactOptions) -> Result<Vec<Vec<usize>>> {
    t.require_tree()?;
    t.require_k(k)?;
    if t.has_ground_flow() {
        return Err(Error::pre("fixed-k solvers require zero ground flows"));
    }
    let (lo, hi) = match &opts.removed {
        Some(r) => (*r.start(), *r.end()),
        None => enumeration_bounds(k, problem)?,
    };
    let m = t.edges().len();
    let hi = hi.min(m);
    let lo = lo.max(k - 1);
    Ok((lo..=hi).flat_map(|s| (0..m).combinations(s)).collect())
}

fn run_pool<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::pre(format!("cannot build worker pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Best choice found for one objective: the subset index and, per component
/// of `T \ F`, the part it joins (`None` = left out).
#[derive(Debug, Clone)]
struct Best {
    value: Rational,
    subset: usize,
    labels: Vec<Option<usize>>,
}

struct Cand<T> {
    value: Frac<T>,
    subset: usize,
    labels: Vec<Option<usize>>,
}

impl<T: Exact> Cand<T> {
    fn better(self, other: Self) -> Option<Self> {
        Some(match self.value.cmp(&other.value)? {
            Ordering::Less => self,
            Ordering::Greater => other,
            Ordering::Equal if self.subset <= other.subset => self,
            Ordering::Equal => other,
        })
    }
}

/// Component index per vertex plus scaled cut and weight per component.
struct Pieces<T> {
    comp: Vec<usize>,
    cut: Vec<T>,
    weight: Vec<T>,
}

fn pieces<T: Exact>(t: &WeightedGraph, s: &Scaled<T>, removed: &[usize]) -> Option<Pieces<T>> {
    let n = t.n();
    let mut is_cut = vec![false; s.cost.len()];
    for &e in removed {
        is_cut[e] = true;
    }
    let mut comp = vec![usize::MAX; n];
    let mut cut = Vec::with_capacity(removed.len() + 1);
    let mut weight = Vec::with_capacity(removed.len() + 1);
    let mut stack = Vec::new();
    for root in 0..n {
        if comp[root] != usize::MAX {
            continue;
        }
        let id = weight.len();
        let mut w = T::zero();
        let mut g = T::zero();
        comp[root] = id;
        stack.push(root);
        while let Some(x) = stack.pop() {
            w = w.add_(&s.omega[x])?;
            g = g.add_(&s.gamma[x])?;
            for &(y, e) in t.neighbors(x) {
                if !is_cut[e] && comp[y] == usize::MAX {
                    comp[y] = id;
                    stack.push(y);
                }
            }
        }
        weight.push(w);
        cut.push(g);
    }
    for &e in removed {
        let (u, v) = s.ends[e];
        cut[comp[u]] = cut[comp[u]].add_(&s.cost[e])?;
        cut[comp[v]] = cut[comp[v]].add_(&s.cost[e])?;
    }
    Some(Pieces { comp, cut, weight })
}

fn ipp_kernel<T: Exact>(t: &WeightedGraph, k: usize, subsets: &[Vec<usize>]) -> Option<(Best, Best)> {
    let s = Scaled::<T>::new(t)?;
    let per_subset = |(i, f): (usize, &Vec<usize>)| -> Option<(Cand<T>, Cand<T>)> {
        let p = pieces(t, &s, f)?;
        let flows: Vec<Frac<T>> = p
            .cut
            .iter()
            .zip(&p.weight)
            .map(|(c, w)| Frac::new(c.clone(), w.clone()))
            .collect();
        // Stable insertion sort: ties keep component order.
        let mut idx: Vec<usize> = (0..flows.len()).collect();
        for a in 1..idx.len() {
            let mut b = a;
            while b > 0 && flows[idx[b]].lt(&flows[idx[b - 1]])? {
                idx.swap(b, b - 1);
                b -= 1;
            }
        }
        let mut labels = vec![None; flows.len()];
        let mut sum = Frac::zero();
        for &c in &idx[..k] {
            labels[c] = Some(0);
            sum = sum.add(&flows[c])?;
        }
        let max = Cand {
            value: flows[idx[k - 1]].clone(),
            subset: i,
            labels: labels.clone(),
        };
        let mean = Cand {
            value: sum,
            subset: i,
            labels,
        };
        Some((max, mean))
    };
    let (max, mean) = subsets
        .par_iter()
        .enumerate()
        .map(per_subset)
        .try_reduce_with(|(a1, b1), (a2, b2)| Some((a1.better(a2)?, b1.better(b2)?)))??;
    let kk = Rational::from_integer(k.into());
    Some((
        Best {
            value: s.unscale(&max.value),
            subset: max.subset,
            labels: max.labels,
        },
        Best {
            value: s.unscale(&mean.value) / kk,
            subset: mean.subset,
            labels: mean.labels,
        },
    ))
}

fn ncp_kernel<T: Exact>(t: &WeightedGraph, k: usize, subsets: &[Vec<usize>]) -> Option<Best> {
    let s = Scaled::<T>::new(t)?;
    let per_subset = |(i, f): (usize, &Vec<usize>)| -> Option<Option<Cand<T>>> {
        let p = pieces(t, &s, f)?;
        let parts = p.weight.len();
        let inner: Vec<(usize, usize, &T)> = f
            .iter()
            .map(|&e| {
                let (u, v) = s.ends[e];
                (p.comp[u], p.comp[v], &s.cost[e])
            })
            .collect();
        let mut best: Option<Cand<T>> = None;
        let mut overflow = false;
        for_each_grouping(parts, k, |blocks| {
            let eval = || -> Option<Frac<T>> {
                let mut cut = vec![T::zero(); k];
                let mut weight = vec![T::zero(); k];
                for c in 0..parts {
                    cut[blocks[c]] = cut[blocks[c]].add_(&p.cut[c])?;
                    weight[blocks[c]] = weight[blocks[c]].add_(&p.weight[c])?;
                }
                for &(a, b, c) in &inner {
                    if blocks[a] == blocks[b] {
                        let twice = c.add_(c)?;
                        cut[blocks[a]] = cut[blocks[a]].sub_(&twice)?;
                    }
                }
                let mut worst = Frac::new(cut[0].clone(), weight[0].clone());
                for j in 1..k {
                    let f = Frac::new(cut[j].clone(), weight[j].clone());
                    if worst.lt(&f)? {
                        worst = f;
                    }
                }
                Some(worst)
            };
            let Some(value) = eval() else {
                overflow = true;
                return false;
            };
            let improves = match &best {
                None => Some(true),
                Some(b) => value.lt(&b.value),
            };
            match improves {
                None => {
                    overflow = true;
                    return false;
                }
                Some(true) => {
                    best = Some(Cand {
                        value,
                        subset: i,
                        labels: blocks.iter().map(|&b| Some(b)).collect(),
                    })
                }
                Some(false) => {}
            }
            true
        });
        if overflow {
            None
        } else {
            Some(best)
        }
    };
    let best = subsets
        .par_iter()
        .enumerate()
        .map(per_subset)
        .try_reduce_with(|a, b| match (a, b) {
            (Some(a), Some(b)) => Some(Some(a.better(b)?)),
            (a, b) => Some(a.or(b)),
        })??
        .expect("at least one grouping exists since |F| + 1 >= k");
    Some(Best {
        value: s.unscale(&best.value),
        subset: best.subset,
        labels: best.labels,
    })
}

/// Calls `visit` with every restricted growth string of length `n` using
/// exactly `k` block labels, in lexicographic order. Stops early when
/// `visit` returns false.
pub(crate) fn for_each_grouping(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    fn rec(a: &mut Vec<usize>, n: usize, k: usize, used: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
        let i = a.len();
        if i == n {
            return used < k || visit(a);
        }
        // Labels still to introduce must fit in the remaining slots.
        if k - used > n - i {
            return true;
        }
        for label in 0..=used.min(k - 1) {
            a.push(label);
            let go = rec(a, n, k, used.max(label + 1), visit);
            a.pop();
            if !go {
                return false;
            }
        }
        true
    }
    if k == 0 || k > n {
        return;
    }
    let mut a = Vec::with_capacity(n);
    rec(&mut a, n, k, 0, &mut visit);
}

fn finish(t: &WeightedGraph, problem: Problem, best: Best, subsets: &[Vec<usize>]) -> SolveResult {
    let comps = t
        .components_after_removal(&subsets[best.subset])
        .expect("subset edges belong to the tree");
    let groups = best.labels.iter().filter_map(|l| *l).max().map_or(0, |m| m + 1);
    let parts: Vec<VertexSet> = if problem.is_partition() {
        (0..groups)
            .map(|g| {
                comps
                    .iter()
                    .zip(&best.labels)
                    .filter(|(_, l)| **l == Some(g))
                    .flat_map(|(c, _)| c.ids().iter().copied())
                    .collect()
            })
            .collect()
    } else {
        comps
            .into_iter()
            .zip(&best.labels)
            .filter(|(_, l)| l.is_some())
            .map(|(c, _)| c)
            .collect()
    };
    let witness = Subpartition::new(parts).expect("components are disjoint").canonical();
    SolveResult {
        problem,
        value: best.value,
        witness,
    }
}
