//! Brute-force ground truth: evaluates the defining minimum over every
//! `k`-subpartition (or `k`-partition) of a small graph.
//!
//! Each vertex gets a label in `0..=k`, `0` meaning "outside every part"
//! (forbidden for partitions). Labels `1..=k` must first appear in
//! increasing order, so every unordered (sub)partition is visited exactly
//! once. No pruning beyond that symmetry reduction is done.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::arith::{exact_dispatch, Exact, Frac, Scaled};
use crate::error::{Error, Result};
use crate::exact::SolveResult;
use crate::graph::{Problem, Subpartition, Variant, VertexSet, WeightedGraph};
use crate::rational::Rational;

/// Default vertex cap: 16 for `k = 2`, 12 otherwise.
pub fn default_cap(k: usize) -> usize {
    if k == 2 {
        16
    } else {
        12
    }
}

#[derive(Debug, Clone, Default)]
pub struct OracleOptions {
    /// Only count parts that induce connected subgraphs.
    pub connected_only: bool,
    /// Overrides [`default_cap`].
    pub cap: Option<usize>,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

pub fn oracle_value(g: &WeightedGraph, k: usize, problem: Problem, connected_only: bool) -> Result<SolveResult> {
    oracle_value_with(
        g,
        k,
        problem,
        &OracleOptions {
            connected_only,
            ..Default::default()
        },
    )
}

pub fn oracle_value_with(g: &WeightedGraph, k: usize, problem: Problem, opts: &OracleOptions) -> Result<SolveResult> {
    g.require_k(k)?;
    let cap = opts.cap.unwrap_or_else(|| default_cap(k));
    if g.n() > cap {
        return Err(Error::pre(format!(
            "oracle is limited to {cap} vertices at k = {k}, got {}",
            g.n()
        )));
    }
    let run = || exact_dispatch!(search(g, k, problem, opts.connected_only));
    let found = match opts.jobs {
        None => run(),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::pre(format!("cannot build worker pool: {e}")))?
            .install(run),
    };
    let (value, labels) =
        found.ok_or_else(|| Error::pre("no admissible (sub)partition exists (connected parts impossible)"))?;
    let parts = (1..=k)
        .map(|l| {
            labels
                .iter()
                .enumerate()
                .filter(|(_, &x)| x as usize == l)
                .map(|(v, _)| v)
                .collect::<VertexSet>()
        })
        .collect();
    Ok(SolveResult {
        problem,
        value,
        witness: Subpartition::new(parts).expect("every label is used"),
    })
}

const PREFIX_DEPTH: usize = 5;

struct Ctx<'a, T> {
    g: &'a WeightedGraph,
    s: &'a Scaled<T>,
    k: usize,
    variant: Variant,
    lowest: u8,
    connected_only: bool,
}

type Found<T> = Option<(Frac<T>, Vec<u8>)>;

/// Returns `None` on arithmetic overflow; `Some(None)` when nothing is
/// admissible.
fn search<T: Exact>(
    g: &WeightedGraph,
    k: usize,
    problem: Problem,
    connected_only: bool,
) -> Option<Option<(Rational, Vec<u8>)>> {
    let s = Scaled::<T>::new(g)?;
    let ctx = Ctx {
        g,
        s: &s,
        k,
        variant: problem.variant(),
        lowest: u8::from(problem.is_partition()),
        connected_only,
    };
    let n = g.n();
    let depth = PREFIX_DEPTH.min(n);
    let mut prefixes = Vec::new();
    collect_prefixes(&ctx, &mut Vec::new(), 0, depth, &mut prefixes);

    let best = prefixes
        .par_iter()
        .enumerate()
        .map(|(i, (prefix, used))| {
            let mut labels = prefix.clone();
            let mut best: Found<T> = None;
            let mut scratch = Scratch::new(k);
            extend(&ctx, &mut labels, *used, &mut best, &mut scratch).then_some(())?;
            Some(best.map(|b| (b, i)))
        })
        .try_reduce_with(|a, b| match (a, b) {
            (Some((x, i)), Some((y, j))) => Some(Some(match x.0.cmp(&y.0)? {
                Ordering::Less => (x, i),
                Ordering::Greater => (y, j),
                Ordering::Equal if i < j => (x, i),
                Ordering::Equal => (y, j),
            })),
            (a, b) => Some(a.or(b)),
        })?;
    let Some(Some(((value, labels), _))) = best else {
        return Some(None);
    };
    let mut value = s.unscale(&value);
    if ctx.variant == Variant::Mean {
        value /= Rational::from_integer(k.into());
    }
    Some(Some((value, labels)))
}

fn label_range<T>(ctx: &Ctx<'_, T>, pos: usize, used: usize) -> Option<std::ops::RangeInclusive<u8>> {
    let n = ctx.g.n();
    if ctx.k - used > n - pos {
        return None;
    }
    Some(ctx.lowest..=(used + 1).min(ctx.k) as u8)
}

fn collect_prefixes<T>(
    ctx: &Ctx<'_, T>,
    labels: &mut Vec<u8>,
    used: usize,
    depth: usize,
    out: &mut Vec<(Vec<u8>, usize)>,
) {
    if labels.len() == depth {
        out.push((labels.clone(), used));
        return;
    }
    let Some(range) = label_range(ctx, labels.len(), used) else {
        return;
    };
    for l in range {
        labels.push(l);
        collect_prefixes(ctx, labels, used.max(l as usize), depth, out);
        labels.pop();
    }
}

struct Scratch<T> {
    cut: Vec<T>,
    weight: Vec<T>,
    seen: Vec<bool>,
    stack: Vec<usize>,
}

impl<T: Exact> Scratch<T> {
    fn new(k: usize) -> Self {
        Scratch {
            cut: vec![T::zero(); k + 1],
            weight: vec![T::zero(); k + 1],
            seen: Vec::new(),
            stack: Vec::new(),
        }
    }
}

/// Depth-first completion of `labels`; returns false on overflow.
fn extend<T: Exact>(
    ctx: &Ctx<'_, T>,
    labels: &mut Vec<u8>,
    used: usize,
    best: &mut Found<T>,
    scratch: &mut Scratch<T>,
) -> bool {
    if labels.len() == ctx.g.n() {
        if used < ctx.k {
            return true;
        }
        return visit(ctx, labels, best, scratch).is_some();
    }
    let Some(range) = label_range(ctx, labels.len(), used) else {
        return true;
    };
    for l in range {
        labels.push(l);
        let ok = extend(ctx, labels, used.max(l as usize), best, scratch);
        labels.pop();
        if !ok {
            return false;
        }
    }
    true
}

fn visit<T: Exact>(ctx: &Ctx<'_, T>, labels: &[u8], best: &mut Found<T>, scratch: &mut Scratch<T>) -> Option<()> {
    let s = ctx.s;
    for l in 1..=ctx.k {
        scratch.cut[l] = T::zero();
        scratch.weight[l] = T::zero();
    }
    for (v, &l) in labels.iter().enumerate() {
        if l > 0 {
            let l = l as usize;
            scratch.weight[l] = scratch.weight[l].add_(&s.omega[v])?;
            scratch.cut[l] = scratch.cut[l].add_(&s.gamma[v])?;
        }
    }
    for (e, &(u, v)) in s.ends.iter().enumerate() {
        let (a, b) = (labels[u] as usize, labels[v] as usize);
        if a != b {
            if a > 0 {
                scratch.cut[a] = scratch.cut[a].add_(&s.cost[e])?;
            }
            if b > 0 {
                scratch.cut[b] = scratch.cut[b].add_(&s.cost[e])?;
            }
        }
    }
    let flow = |l: usize| Frac::new(scratch.cut[l].clone(), scratch.weight[l].clone());
    let mut value = flow(1);
    for l in 2..=ctx.k {
        let f = flow(l);
        value = match ctx.variant {
            Variant::Max => {
                if value.lt(&f)? {
                    f
                } else {
                    value
                }
            }
            Variant::Mean => value.add(&f)?,
        };
    }
    let improves = match best {
        None => true,
        Some((b, _)) => value.lt(b)?,
    };
    if improves && (!ctx.connected_only || parts_connected(ctx, labels, scratch)) {
        *best = Some((value, labels.to_vec()));
    }
    Some(())
}

fn parts_connected<T>(ctx: &Ctx<'_, T>, labels: &[u8], scratch: &mut Scratch<T>) -> bool {
    let n = labels.len();
    scratch.seen.clear();
    scratch.seen.resize(n, false);
    let mut roots = 0;
    for start in 0..n {
        if labels[start] == 0 || scratch.seen[start] {
            continue;
        }
        roots += 1;
        scratch.seen[start] = true;
        scratch.stack.push(start);
        while let Some(x) = scratch.stack.pop() {
            for &(y, _) in ctx.g.neighbors(x) {
                if !scratch.seen[y] && labels[y] == labels[x] {
                    scratch.seen[y] = true;
                    scratch.stack.push(y);
                }
            }
        }
    }
    // One traversal per part means every part is connected.
    roots == ctx.k
}
