//! Shared fixtures for the integration tests: a seeded random-tree corpus,
//! tiny random graphs, and brute-force solvers for the number problems the
//! reductions start from.
#![allow(dead_code)]

use isoperim::rational::int;
use isoperim::{Edge, Rational, WeightedGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random labelled tree: each vertex attaches to a uniform earlier vertex,
/// then ids are shuffled. Weights are uniform integers in `1..=max_w`.
pub fn random_tree(rng: &mut impl Rng, n: usize, max_w: i64) -> WeightedGraph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let omega = (0..n).map(|_| int(rng.gen_range(1..=max_w))).collect();
    let edges = (1..n)
        .map(|i| {
            let p = rng.gen_range(0..i);
            Edge::new(perm[p], perm[i], int(rng.gen_range(1..=max_w)))
        })
        .collect();
    WeightedGraph::tree(omega, edges).unwrap()
}

/// `(tree, k)` pairs: `trees` trees with `n` in `3..=9`, weights in `1..=9`,
/// each paired with every `k` in `{2, 3, 4}` that fits.
pub fn corpus(trees: usize) -> Vec<(WeightedGraph, usize)> {
    let mut r = rng(0x150_7e5);
    let mut out = Vec::new();
    for _ in 0..trees {
        let n = r.gen_range(3..=9);
        let t = random_tree(&mut r, n, 9);
        for k in 2..=4 {
            if k <= n {
                out.push((t.clone(), k));
            }
        }
    }
    out
}

/// Random simple graph on `n` vertices with at least one edge.
pub fn random_graph(rng: &mut impl Rng, n: usize, max_w: i64, unit_omega: bool) -> WeightedGraph {
    loop {
        let omega = (0..n)
            .map(|_| {
                if unit_omega {
                    int(1)
                } else {
                    int(rng.gen_range(1..=max_w))
                }
            })
            .collect();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.5) {
                    edges.push(Edge::new(u, v, int(rng.gen_range(1..=max_w))));
                }
            }
        }
        if !edges.is_empty() {
            return WeightedGraph::graph(omega, edges).unwrap().detect_tree();
        }
    }
}

/// Smallest `t` with `2^t >= x`, or `None` for `x <= 0`. Independent of the
/// library's helper.
pub fn log2_ceil(x: &Rational) -> Option<i64> {
    if *x <= int(0) {
        return None;
    }
    let mut t = -200i64;
    let mut p = Rational::new(1.into(), num_bigint::BigInt::from(2).pow(200));
    while &p < x {
        p *= int(2);
        t += 1;
    }
    Some(t)
}

/// Set partitions of `0..n` into exactly `k` blocks, as label vectors.
pub fn set_partitions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, k: usize, used: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            if used == k {
                out.push(cur.clone());
            }
            return;
        }
        for l in 0..=used.min(k - 1) {
            if k - used.max(l + 1) > n - i - 1 {
                continue;
            }
            cur.push(l);
            go(i + 1, n, k, used.max(l + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && k <= n {
        go(0, n, k, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// 3-PARTITION by exhaustive search over `m`-block set partitions.
pub fn three_partition_yes(x: &[u64], m: usize, b: u64) -> bool {
    set_partitions(x.len(), m).iter().any(|labels| {
        (0..m).all(|j| {
            labels
                .iter()
                .zip(x)
                .filter(|(&l, _)| l == j)
                .map(|(_, &v)| v)
                .sum::<u64>()
                == b
        })
    })
}

/// SUBSET AVERAGE: some `m`-block partition with every block averaging `alpha`.
pub fn subset_average_blocks(y: &[u64], m: usize) -> Option<Vec<Vec<usize>>> {
    let n = y.len() as u64;
    let total: u64 = y.iter().sum();
    if !total.is_multiple_of(n) {
        return None;
    }
    let alpha = total / n;
    set_partitions(y.len(), m).into_iter().find_map(|labels| {
        let blocks: Vec<Vec<usize>> = (0..m)
            .map(|j| (0..y.len()).filter(|&i| labels[i] == j).collect())
            .collect();
        blocks
            .iter()
            .all(|b| b.iter().map(|&i| y[i]).sum::<u64>() == alpha * b.len() as u64)
            .then_some(blocks)
    })
}

/// PARTITION: some subset sums to half the total.
pub fn partition_yes(x: &[u64]) -> bool {
    let total: u64 = x.iter().sum();
    total.is_multiple_of(2)
        && (0u32..1 << x.len()).any(|mask| {
            x.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &v)| v)
                .sum::<u64>()
                * 2
                == total
        })
}
