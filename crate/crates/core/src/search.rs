//! Bisection FPTAS for the max isoperimetric number of a tree, partition
//! completion, and the approximation wrappers built on them.

use num_traits::{One, Signed, Zero};

use crate::decide::decide_ipp_max;
use crate::error::{Error, Result};
use crate::graph::{Partition, Problem, Subpartition, Variant, VertexSet, WeightedGraph};
use crate::rational::{ceil_log2, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BisectionTrace {
    /// Calls to the decision procedure, including the one at the upper end.
    pub steps: usize,
    /// Maximum number of calls allowed: the iteration count plus one.
    pub budget: usize,
    /// Final bracket `(a, b)`: the optimum is at least `a`, and `b` was accepted.
    pub bracket: (Rational, Rational),
}

#[derive(Debug, Clone)]
pub struct ApproxResult {
    pub problem: Problem,
    /// Exact cost of `witness`.
    pub value: Rational,
    pub witness: Subpartition,
    /// Certified ratio `value / optimum` upper bound.
    pub factor: Rational,
    /// Certified lower bound on the optimum.
    pub lower_bound: Rational,
    pub trace: Option<BisectionTrace>,
}

/// Iteration count for the bisection: the smallest `t >= 1` with
/// `2^t >= (CW/(c0 w0) - 2) / (2 eps)`.
pub fn bisection_iterations(t: &WeightedGraph, eps: &Rational) -> Result<usize> {
    t.require_tree()?;
    let (lo, hi) = initial_bracket(t)?;
    let ratio_ = (hi - &lo) / (lo * eps);
    Ok(ceil_log2(&ratio_).unwrap_or(0).max(1) as usize)
}

/// `[2 c0 / W, C / w0]`.
fn initial_bracket(t: &WeightedGraph) -> Result<(Rational, Rational)> {
    let c0 = t.min_edge_weight().ok_or_else(|| Error::pre("the tree has no edges"))?;
    let lo = Rational::from_integer(2.into()) * c0 / t.total_omega();
    let hi = t.total_edge_weight() / t.min_omega();
    Ok((lo, hi))
}

/// A `(1 + eps)`-approximation of the max isoperimetric number of a tree.
pub fn fptas_ipp_max(t: &WeightedGraph, k: usize, eps: &Rational) -> Result<ApproxResult> {
    t.require_tree()?;
    t.require_k(k)?;
    if !eps.is_positive() {
        return Err(Error::pre(format!("eps must be positive, got {eps}")));
    }
    if t.has_ground_flow() {
        return Err(Error::pre("the FPTAS requires zero ground flows"));
    }
    let (mut a, mut b) = initial_bracket(t)?;
    let iterations = bisection_iterations(t, eps)?;

    // Every vertex is a part of flow at most C/w0, so this is always YES.
    let top = decide_ipp_max(t, k, &b)?;
    let mut witness = top.witness.expect("upper end of the bracket is feasible");
    let mut steps = 1;
    let two = Rational::from_integer(2.into());
    while steps <= iterations && &b - &a > eps * &a {
        let mid = (&a + &b) / &two;
        let d = decide_ipp_max(t, k, &mid)?;
        steps += 1;
        match d.witness {
            Some(w) => {
                witness = w;
                b = mid;
            }
            None => a = mid,
        }
    }
    let witness = witness.canonical();
    let value = t.subpartition_cost(&witness, Variant::Max)?;
    Ok(ApproxResult {
        problem: Problem::IppMax,
        value,
        witness,
        factor: Rational::one() + eps,
        lower_bound: a.clone(),
        trace: Some(BisectionTrace {
            steps,
            budget: iterations + 1,
            bracket: (a, b),
        }),
    })
}

/// Extends a subpartition to a partition by merging the uncovered vertices
/// into one part.
///
/// `Max` merges into the part with the largest cut. `Mean` merges into the
/// part `j` minimizing `(C - c_j)/(w_j + w(rest)) + sum_{i != j} c_i/w_i`
/// with `C` the sum of all part cuts. Ties go to the smallest index.
pub fn complete_partition(g: &WeightedGraph, parts: &Subpartition, variant: Variant) -> Result<Partition> {
    parts.check_against(g.n())?;
    let n = g.n();
    if parts.is_partition_of(n) {
        return Partition::from_subpartition(parts.clone(), n);
    }
    let rest: VertexSet = {
        let mut covered = vec![false; n];
        for p in parts.parts() {
            for &v in p.ids() {
                covered[v] = true;
            }
        }
        (0..n).filter(|&v| !covered[v]).collect()
    };
    let cuts = parts
        .parts()
        .iter()
        .map(|p| g.cut_weight(p))
        .collect::<Result<Vec<_>>>()?;
    let weights = parts
        .parts()
        .iter()
        .map(|p| g.set_weight(p))
        .collect::<Result<Vec<_>>>()?;

    let j = match variant {
        Variant::Max => first_best(cuts.iter(), |x, y| x > y),
        Variant::Mean => {
            let total: Rational = cuts.iter().sum();
            let flows: Vec<Rational> = cuts.iter().zip(&weights).map(|(c, w)| c / w).collect();
            let flow_sum: Rational = flows.iter().sum();
            let rest_w = g.set_weight(&rest)?;
            let scores: Vec<Rational> = (0..cuts.len())
                .map(|j| (&total - &cuts[j]) / (&weights[j] + &rest_w) + &flow_sum - &flows[j])
                .collect();
            first_best(scores.iter(), |x, y| x < y)
        }
    };
    let mut merged = parts.clone().into_parts();
    merged[j] = merged[j].union(&rest);
    Partition::new(merged, n)
}

/// Index of the first element that no later element beats.
fn first_best<'a>(xs: impl Iterator<Item = &'a Rational>, beats: impl Fn(&Rational, &Rational) -> bool) -> usize {
    let mut best: Option<(usize, &Rational)> = None;
    for (i, x) in xs.enumerate() {
        if best.is_none_or(|(_, b)| beats(x, b)) {
            best = Some((i, x));
        }
    }
    best.expect("at least one part").0
}

/// Approximates one of the three NP-hard parameters through the FPTAS.
///
/// Factors: `k - 1 + eps` for `NcpMax`, `k + eps` for `IppMean`,
/// `2k - 2 + eps` for `NcpMean`. The internal FPTAS accuracy is `eps`
/// divided by the factor without `eps`, so that `(1 + eps') * base` equals
/// `base + eps` exactly.
pub fn approximate(t: &WeightedGraph, k: usize, eps: &Rational, problem: Problem) -> Result<ApproxResult> {
    t.require_tree()?;
    t.require_k(k)?;
    if !eps.is_positive() {
        return Err(Error::pre(format!("eps must be positive, got {eps}")));
    }
    let kk = Rational::from_integer(k.into());
    let base = match problem {
        Problem::IppMax => return Err(Error::pre("use fptas_ipp_max for the max isoperimetric number")),
        Problem::NcpMax => &kk - Rational::one(),
        Problem::IppMean => kk.clone(),
        Problem::NcpMean => (&kk - Rational::one()) * Rational::from_integer(2.into()),
    };
    let inner = fptas_ipp_max(t, k, &(eps / &base))?;
    let (witness, lower_bound) = match problem {
        Problem::NcpMax => (
            complete_partition(t, &inner.witness, Variant::Max)?.into_subpartition(),
            inner.lower_bound,
        ),
        Problem::IppMean => (inner.witness, inner.lower_bound / &kk),
        Problem::NcpMean => (
            complete_partition(t, &inner.witness, Variant::Mean)?.into_subpartition(),
            inner.lower_bound / &kk,
        ),
        Problem::IppMax => unreachable!(),
    };
    let value = t.subpartition_cost(&witness, problem.variant())?;
    Ok(ApproxResult {
        problem,
        value,
        witness,
        factor: base + eps,
        lower_bound,
        trace: inner.trace,
    })
}

/// Both sides of the mean-bound inequality
/// `sum a_i b_i <= max_j (lambda a_j b_j + (1 - lambda/k) b_j)`.
pub fn mean_bound_sides(k: usize, lambda: &Rational, a: &[Rational], b: &[Rational]) -> Result<(Rational, Rational)> {
    let kk = Rational::from_integer(k.into());
    if k == 0 || a.len() != k || b.len() != k {
        return Err(Error::pre(format!(
            "need |a| = |b| = k, got {}, {}, {k}",
            a.len(),
            b.len()
        )));
    }
    if !lambda.is_positive() || lambda >= &kk {
        return Err(Error::pre(format!("lambda must lie in (0, {k}), got {lambda}")));
    }
    if a.iter().chain(b).any(|x| x.is_negative()) {
        return Err(Error::pre("entries of a and b must be nonnegative"));
    }
    if a.iter().sum::<Rational>() != Rational::one() {
        return Err(Error::pre("entries of a must sum to 1"));
    }
    let lhs: Rational = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let slack = Rational::one() - lambda / &kk;
    let rhs = a
        .iter()
        .zip(b)
        .map(|(x, y)| lambda * x * y + &slack * y)
        .max()
        .unwrap_or_else(Rational::zero);
    Ok((lhs, rhs))
}

pub fn mean_bound_inequality_holds(k: usize, lambda: &Rational, a: &[Rational], b: &[Rational]) -> Result<bool> {
    let (lhs, rhs) = mean_bound_sides(k, lambda, a, b)?;
    Ok(lhs <= rhs)
}
