//! Instance generators: the star family separating the four parameters,
//! hardness reductions from number problems, and unitarization.
//!
//! Number-problem inputs are plain `u64`s. Generated graphs use vertex 0
//! for the distinguished vertex (star center, `u`, `v0`, `u1`).

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{Edge, Problem, VertexSet, WeightedGraph};
use crate::rational::{ceil, denominator_lcm, Rational};

/// Generators refuse to build graphs larger than this.
pub const MAX_GENERATED_VERTICES: usize = 5_000_000;

#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub graph: WeightedGraph,
    pub k: usize,
    /// The `N` of the decision question "is the parameter at most `N`".
    pub threshold: Rational,
    /// Source parameters and derived constants, in insertion order.
    pub provenance: Vec<(String, String)>,
    pub closed_forms: Vec<(Problem, Rational)>,
}

impl GeneratedInstance {
    pub fn provenance_value(&self, key: &str) -> Option<&str> {
        self.provenance.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn closed_form(&self, p: Problem) -> Option<&Rational> {
        self.closed_forms.iter().find(|(q, _)| *q == p).map(|(_, v)| v)
    }
}

fn r(x: u64) -> Rational {
    Rational::from_integer(x.into())
}

fn big(x: &Rational) -> String {
    x.to_string()
}

fn check_size(n: u128) -> Result<usize> {
    if n > MAX_GENERATED_VERTICES as u128 {
        return Err(Error::pre(format!(
            "generated graph would have {n} vertices (limit {MAX_GENERATED_VERTICES})"
        )));
    }
    Ok(n as usize)
}

fn list(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Star with center weight `k`, `k` leaves of weight `t` and unit edges.
pub fn star_family(k: usize, t: u64) -> Result<GeneratedInstance> {
    if k < 3 {
        return Err(Error::pre(format!("star family needs k >= 3, got {k}")));
    }
    if t < k as u64 {
        return Err(Error::pre(format!("star family needs t >= k, got t = {t}, k = {k}")));
    }
    let kk = r(k as u64);
    let tt = r(t);
    let mut omega = vec![kk.clone()];
    omega.extend(std::iter::repeat_n(tt.clone(), k));
    let edges = (1..=k).map(|i| Edge::new(0, i, Rational::one())).collect();
    let graph = WeightedGraph::tree(omega, edges)?;
    let inv_t = Rational::one() / &tt;
    let inv_tk = Rational::one() / (&tt + &kk);
    let closed_forms = vec![
        (Problem::IppMax, inv_t.clone()),
        (Problem::NcpMax, (&kk - Rational::one()) * &inv_tk),
        (Problem::IppMean, inv_t.clone()),
        (
            Problem::NcpMean,
            (Rational::one() - Rational::one() / &kk) * (&inv_tk + &inv_t),
        ),
    ];
    Ok(GeneratedInstance {
        graph,
        k,
        threshold: inv_t,
        provenance: vec![
            ("family".into(), "star".into()),
            ("k".into(), k.to_string()),
            ("t".into(), t.to_string()),
        ],
        closed_forms,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetAverage {
    pub y: Vec<u64>,
    pub m: usize,
    pub alpha: u64,
}

/// `y_i = x_i + B + 1` for the `3m` inputs followed by `m` ones; the
/// average is `B + 1`.
pub fn three_partition_to_subset_average(x: &[u64], m: usize, b: u64) -> Result<SubsetAverage> {
    if m == 0 || x.len() != 3 * m {
        return Err(Error::pre(format!("need 3m = {} numbers, got {}", 3 * m, x.len())));
    }
    let sum: u128 = x.iter().map(|&v| v as u128).sum();
    if sum != m as u128 * b as u128 {
        return Err(Error::pre(format!(
            "numbers sum to {sum}, expected mB = {}",
            m as u128 * b as u128
        )));
    }
    if let Some(v) = x
        .iter()
        .find(|&&v| !(4 * v as u128 > b as u128 && (2 * v as u128) < b as u128))
    {
        return Err(Error::pre(format!(
            "{v} is not strictly between B/4 and B/2 for B = {b}"
        )));
    }
    let shift = b.checked_add(1).ok_or_else(|| Error::pre("B too large"))?;
    let mut y = x
        .iter()
        .map(|&v| v.checked_add(shift).ok_or_else(|| Error::pre("value too large")))
        .collect::<Result<Vec<_>>>()?;
    y.extend(std::iter::repeat_n(1, m));
    Ok(SubsetAverage { y, m, alpha: shift })
}

/// The `l` the backward direction of the subset-average reduction is proved
/// for: `alpha^3 n^2 (3n - 2m - 1)`, raised to 2 when that is smaller.
pub fn default_subset_average_l(n: usize, m: usize, alpha: u64) -> Option<u64> {
    let n = n as u64;
    let m = m as u64;
    let inner = (3 * n).saturating_sub(2 * m + 1);
    alpha
        .checked_pow(3)?
        .checked_mul(n.checked_mul(n)?)?
        .checked_mul(inner)
        .map(|l| l.max(2))
}

/// Tree with center `u` (weight `n alpha`), children `u_i` (weight `l y_i`),
/// and `l - 1` leaves of weight `alpha` under each `u_i`; unit edges,
/// `k = n(l-1) + m + 1`, `N = 1/alpha`.
///
/// Vertex order: `u`, then `u_1..u_n`, then the leaves of `u_1`, of `u_2`, ...
pub fn subset_average_to_tree(y: &[u64], m: usize, l: Option<u64>) -> Result<GeneratedInstance> {
    let n = y.len();
    if n == 0 || y.contains(&0) {
        return Err(Error::pre("need a nonempty list of positive integers"));
    }
    if m == 0 || m > n {
        return Err(Error::pre(format!("need 1 <= m <= n = {n}, got m = {m}")));
    }
    let sum: u128 = y.iter().map(|&v| v as u128).sum();
    if !sum.is_multiple_of(n as u128) {
        return Err(Error::pre(format!("average {sum}/{n} is not an integer")));
    }
    let alpha = u64::try_from(sum / n as u128).map_err(|_| Error::pre("average too large"))?;
    let (l, certificate) = match l {
        Some(l) if l < 2 => return Err(Error::pre(format!("l must be at least 2, got {l}"))),
        Some(l) => (l, "forward-only"),
        None => (
            default_subset_average_l(n, m, alpha).ok_or_else(|| Error::pre("default l overflows"))?,
            "full",
        ),
    };
    let total = check_size(n as u128 * l as u128 + 1)?;
    let leaves = (l - 1) as usize;
    let aa = r(alpha);
    let ll = r(l);
    let mut omega = Vec::with_capacity(total);
    omega.push(r(n as u64) * &aa);
    omega.extend(y.iter().map(|&v| &ll * r(v)));
    omega.resize(total, aa.clone());
    let mut edges = Vec::with_capacity(total - 1);
    for i in 0..n {
        edges.push(Edge::new(0, 1 + i, Rational::one()));
    }
    for i in 0..n {
        for j in 0..leaves {
            edges.push(Edge::new(1 + i, 1 + n + i * leaves + j, Rational::one()));
        }
    }
    let graph = WeightedGraph::tree(omega, edges)?;
    Ok(GeneratedInstance {
        graph,
        k: n * leaves + m + 1,
        threshold: Rational::one() / &aa,
        provenance: vec![
            ("reduction".into(), "subset-average".into()),
            ("y".into(), list(y)),
            ("m".into(), m.to_string()),
            ("alpha".into(), alpha.to_string()),
            ("l".into(), l.to_string()),
            ("certificate".into(), certificate.into()),
        ],
        closed_forms: Vec::new(),
    })
}

/// The partition the forward direction of [`subset_average_to_tree`] builds
/// from a solution `blocks` (a partition of `0..n` into average-`alpha`
/// blocks): `{u}`, one part of `u_i` per block, every leaf alone.
pub fn subset_average_witness(inst: &GeneratedInstance, n: usize, blocks: &[Vec<usize>]) -> Vec<VertexSet> {
    let mut parts = vec![VertexSet::singleton(0)];
    parts.extend(blocks.iter().map(|b| b.iter().map(|&i| 1 + i).collect::<VertexSet>()));
    parts.extend((1 + n..inst.graph.n()).map(VertexSet::singleton));
    parts
}

/// Spider with center `v0`, legs `v0 - u_i - v_i`; both edges of leg `i`
/// weigh `c_i = x_i((d+1)^2 B^2 + Q - B x_i)`. Weights `2dB`, `2x_i`, `2D`;
/// `k = 3n + 1` for `2n` inputs; threshold `N/k` with
/// `N = n(d+1)^2 B^2 + nQ + dB^2 + (d+1)^2 B^3 / D`.
///
/// Vertex order: `v0`, `u_1..u_2n`, `v_1..v_2n`.
///
/// The `sufficient` provenance flag is `yes` when every `v` vertex weighs at
/// least [`separation_bound`] of `{v0, v_1, .., v_2n}` and
/// `D >= d B^3 * separation_bound`.
pub fn equipartition_to_tree(x: &[u64], d: u64, big_d: u64) -> Result<GeneratedInstance> {
    if x.is_empty() || !x.len().is_multiple_of(2) {
        return Err(Error::pre(format!(
            "need an even, nonzero count of numbers, got {}",
            x.len()
        )));
    }
    if x.contains(&0) {
        return Err(Error::pre("numbers must be positive"));
    }
    if d == 0 || big_d == 0 {
        return Err(Error::pre("d and D must be positive"));
    }
    let sum: u64 = x.iter().sum();
    if !sum.is_multiple_of(2) {
        return Err(Error::pre(format!("numbers sum to {sum}, which is odd")));
    }
    let half = x.len() / 2;
    let nn = r(half as u64);
    let b = r(sum / 2);
    let q = x.iter().map(|&v| r(v) * r(v)).sum::<Rational>() / r(2);
    let dd = r(d);
    let d1sq = (&dd + Rational::one()) * (&dd + Rational::one());
    let base = &d1sq * &b * &b + &q;
    let c: Vec<Rational> = x.iter().map(|&v| r(v) * (&base - &b * r(v))).collect();

    let len = x.len();
    let mut omega = vec![r(2) * &dd * &b];
    omega.extend(x.iter().map(|&v| r(2 * v)));
    omega.extend(std::iter::repeat_n(r(2) * r(big_d), len));
    let mut edges = Vec::with_capacity(2 * len);
    for (i, ci) in c.iter().enumerate() {
        edges.push(Edge::new(0, 1 + i, ci.clone()));
        edges.push(Edge::new(1 + i, 1 + len + i, ci.clone()));
    }
    let graph = WeightedGraph::tree(omega, edges)?;
    let k = 3 * half + 1;
    let big_n = &nn * &d1sq * &b * &b + &nn * &q + &dd * &b * &b + &d1sq * &b * &b * &b / r(big_d);

    let heavy: VertexSet = std::iter::once(0).chain(1 + len..1 + 2 * len).collect();
    let sep = separation_bound(&graph, &heavy)?;
    let sufficient = heavy.ids().iter().all(|&v| graph.omega()[v] >= sep) && r(big_d) >= &dd * &b * &b * &b * &sep;
    Ok(GeneratedInstance {
        graph,
        k,
        threshold: &big_n / r(k as u64),
        provenance: vec![
            ("reduction".into(), "equipartition".into()),
            ("x".into(), list(x)),
            ("B".into(), big(&b)),
            ("Q".into(), big(&q)),
            ("d".into(), d.to_string()),
            ("D".into(), big_d.to_string()),
            ("N".into(), big(&big_n)),
            ("separation_bound".into(), big(&sep)),
            ("sufficient".into(), if sufficient { "yes" } else { "no" }.into()),
        ],
        closed_forms: Vec::new(),
    })
}

/// The partition `{v_i}.., {v0} + {u_i : i in I}, {u_j : j not in I}..`
/// whose mean cost is exactly the threshold when `I` is an equipartition.
pub fn equipartition_witness(len: usize, subset: &[usize]) -> Vec<VertexSet> {
    let mut parts: Vec<VertexSet> = (1 + len..1 + 2 * len).map(VertexSet::singleton).collect();
    parts.push(std::iter::once(0).chain(subset.iter().map(|&i| 1 + i)).collect());
    parts.extend(
        (0..len)
            .filter(|i| !subset.contains(i))
            .map(|i| VertexSet::singleton(1 + i)),
    );
    parts
}

/// Complete bipartite `{u1, u2} x {v_i}` with unit edges, `w(u1) = w(u2) = M`,
/// `w(v_i) = x_i`, `k = 2`, threshold `n / (M + B)`. The default `M` is the
/// separation bound of `{u1, u2}`, which for this graph is `8nB`.
///
/// Vertex order: `u1`, `u2`, `v_1..v_n`.
pub fn partition_to_bipartite(x: &[u64], m: Option<u64>) -> Result<GeneratedInstance> {
    if x.is_empty() || x.contains(&0) {
        return Err(Error::pre("need a nonempty list of positive integers"));
    }
    let sum: u64 = x.iter().sum();
    if !sum.is_multiple_of(2) {
        return Err(Error::pre(format!("numbers sum to {sum}, which is odd")));
    }
    let n = x.len();
    let build = |m: &Rational| -> Result<WeightedGraph> {
        let mut omega = vec![m.clone(), m.clone()];
        omega.extend(x.iter().map(|&v| r(v)));
        let edges = (0..n)
            .flat_map(|i| {
                [
                    Edge::new(0, 2 + i, Rational::one()),
                    Edge::new(1, 2 + i, Rational::one()),
                ]
            })
            .collect();
        WeightedGraph::graph(omega, edges)
    };
    let heavy = VertexSet::new(vec![0, 1]);
    let (m, defaulted) = match m {
        Some(0) => return Err(Error::pre("M must be positive")),
        Some(m) => (r(m), false),
        None => {
            let sep = separation_bound(&build(&Rational::one())?, &heavy)?;
            (Rational::from_integer(ceil(&sep)), true)
        }
    };
    let graph = build(&m)?;
    let b = r(sum / 2);
    let sep = separation_bound(&graph, &heavy)?;
    Ok(GeneratedInstance {
        threshold: r(n as u64) / (&m + &b),
        graph,
        k: 2,
        provenance: vec![
            ("reduction".into(), "partition".into()),
            ("x".into(), list(x)),
            ("B".into(), big(&b)),
            ("M".into(), big(&m)),
            ("M_default".into(), defaulted.to_string()),
            ("separation_bound".into(), big(&sep)),
            ("sufficient".into(), if m >= sep { "yes" } else { "no" }.into()),
        ],
        closed_forms: Vec::new(),
    })
}

/// `2 C W / c0`: `C` the total edge weight, `W` the weight outside `s`,
/// `c0` the lightest edge.
pub fn separation_bound(g: &WeightedGraph, s: &VertexSet) -> Result<Rational> {
    if s.is_empty() || s.len() >= g.n() || s.ids().last().is_some_and(|&v| v >= g.n()) {
        return Err(Error::InvalidSet(
            "need a nonempty proper subset of the vertices".into(),
        ));
    }
    let c0 = g
        .min_edge_weight()
        .ok_or_else(|| Error::pre("separation bound needs at least one edge"))?;
    let outside: Rational = (0..g.n())
        .filter(|&v| !s.contains(v))
        .map(|v| g.omega()[v].clone())
        .sum();
    Ok(r(2) * g.total_edge_weight() * outside / c0)
}

/// Scales vertex weights by the lcm of their denominators and edge weights
/// (and ground flows) by the lcm of theirs. Returns the scaled graph,
/// `vertex_scale` and `edge_scale`; flows of the result equal the original
/// flows times `edge_scale / vertex_scale`.
pub fn integralize(g: &WeightedGraph) -> (WeightedGraph, BigInt, BigInt) {
    let lw = denominator_lcm(g.omega());
    let lc = denominator_lcm(g.edges().iter().map(|e| &e.c).chain(g.gamma()));
    let sw = Rational::from_integer(lw.clone());
    let sc = Rational::from_integer(lc.clone());
    let scaled = WeightedGraph::new(
        g.omega().iter().map(|w| w * &sw).collect(),
        g.gamma().iter().map(|x| x * &sc).collect(),
        g.edges().iter().map(|e| Edge::new(e.u, e.v, &e.c * &sc)).collect(),
        g.is_tree(),
    )
    .expect("scaling preserves validity");
    (scaled, lw, lc)
}

fn to_count(x: &Rational, what: &str) -> Result<u128> {
    if !x.is_integer() {
        return Err(Error::pre(format!("{what} must be integral, got {x}")));
    }
    x.to_integer()
        .to_u128()
        .ok_or_else(|| Error::pre(format!("{what} is too large: {x}")))
}

/// Replaces vertex weights by pendant vertices: with
/// `chi = max_u ceil(deg_c(u) / w(u))` (at least 1), each `u` gets
/// `chi w(u) - 1` pendant neighbours over unit edges and every vertex weight
/// becomes 1. Max normalized cut values scale by `1/chi`.
///
/// Original vertices keep their ids; pendants follow in order of `u`.
pub fn unitarize_vertex_weights(g: &WeightedGraph) -> Result<(WeightedGraph, u64)> {
    if g.has_ground_flow() {
        return Err(Error::pre("unitarization requires zero ground flows"));
    }
    let mut omega = Vec::with_capacity(g.n());
    for w in g.omega() {
        omega.push(to_count(w, "vertex weight")?);
    }
    for e in g.edges() {
        to_count(&e.c, "edge weight")?;
    }
    let mut deg = vec![Rational::zero(); g.n()];
    for e in g.edges() {
        deg[e.u] += &e.c;
        deg[e.v] += &e.c;
    }
    let chi = deg
        .iter()
        .zip(g.omega())
        .map(|(d, w)| ceil(&(d / w)))
        .max()
        .unwrap_or_else(BigInt::one)
        .max(BigInt::one());
    let chi = chi.to_u64().ok_or_else(|| Error::pre("chi too large"))?;
    let pendants: Vec<u128> = omega.iter().map(|&w| chi as u128 * w - 1).collect();
    let total = check_size(g.n() as u128 + pendants.iter().sum::<u128>())?;

    let mut edges = g.edges().to_vec();
    let mut next = g.n();
    for (u, &p) in pendants.iter().enumerate() {
        for _ in 0..p {
            edges.push(Edge::new(u, next, Rational::one()));
            next += 1;
        }
    }
    let out = WeightedGraph::new(vec![Rational::one(); total], Vec::new(), edges, g.is_tree())?;
    Ok((out, chi))
}

/// `n L C |S| + 1` with `C = |S|` the total edge weight and `L` the
/// denominator of the threshold.
pub fn default_psi(g: &WeightedGraph, threshold: &Rational) -> Result<BigInt> {
    let c = g.total_edge_weight();
    if !c.is_integer() {
        return Err(Error::pre("edge weights must be integral"));
    }
    let c = c.to_integer();
    Ok(BigInt::from(g.n()) * threshold.denom() * &c * &c + 1)
}

/// Replaces each edge `e` by `c(e)` paths of length 2 through new
/// subdivision vertices of weight 1; original vertices get weight `psi`.
/// Returns the new graph, `N / psi` and `psi`.
///
/// Original vertices keep their ids; subdivision vertices follow edge by
/// edge.
pub fn unitarize_edge_weights(
    g: &WeightedGraph,
    threshold: &Rational,
    psi: Option<BigInt>,
) -> Result<(WeightedGraph, Rational, BigInt)> {
    if g.has_ground_flow() {
        return Err(Error::pre("unitarization requires zero ground flows"));
    }
    if let Some(w) = g.omega().iter().find(|w| !w.is_one()) {
        return Err(Error::pre(format!("vertex weights must all be 1, found {w}")));
    }
    if !threshold.is_positive() {
        return Err(Error::pre(format!("threshold must be positive, got {threshold}")));
    }
    let mut counts = Vec::with_capacity(g.edges().len());
    for e in g.edges() {
        counts.push(to_count(&e.c, "edge weight")?);
    }
    let psi = match psi {
        Some(p) if !p.is_positive() => return Err(Error::pre("psi must be positive")),
        Some(p) => p,
        None => default_psi(g, threshold)?,
    };
    let total = check_size(g.n() as u128 + counts.iter().sum::<u128>())?;
    let mut omega = vec![Rational::from_integer(psi.clone()); g.n()];
    omega.resize(total, Rational::one());
    let mut edges = Vec::new();
    let mut next = g.n();
    for (e, &cnt) in g.edges().iter().zip(&counts) {
        for _ in 0..cnt {
            edges.push(Edge::new(e.u, next, Rational::one()));
            edges.push(Edge::new(next, e.v, Rational::one()));
            next += 1;
        }
    }
    let out = WeightedGraph::graph(omega, edges)?.detect_tree();
    let scaled = threshold / Rational::from_integer(psi.clone());
    Ok((out, scaled, psi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::test_graphs::unit_path;
    use crate::graph::{Subpartition, Variant};
    use crate::rational::{int, ratio};

    #[test]
    fn star_closed_forms() {
        let s = star_family(3, 5).unwrap();
        let got: Vec<_> = Problem::ALL
            .iter()
            .map(|&p| s.closed_form(p).unwrap().clone())
            .collect();
        assert_eq!(got, vec![ratio(1, 5), ratio(1, 5), ratio(1, 4), ratio(13, 60)]);
        assert_eq!(
            star_family(3, 3).unwrap().closed_form(Problem::NcpMax),
            Some(&ratio(1, 3))
        );
        assert!(star_family(2, 5).is_err());
        assert!(star_family(4, 3).is_err());
    }

    #[test]
    fn three_partition_examples() {
        let s = three_partition_to_subset_average(&[3, 3, 4], 1, 10).unwrap();
        assert_eq!(
            s,
            SubsetAverage {
                y: vec![14, 14, 15, 1],
                m: 1,
                alpha: 11
            }
        );
        let s = three_partition_to_subset_average(&[3, 3, 4, 3, 3, 4], 2, 10).unwrap();
        assert_eq!(s.y, vec![14, 14, 15, 14, 14, 15, 1, 1]);
        assert!(three_partition_to_subset_average(&[1, 1, 2], 1, 4).is_err());
        assert!(three_partition_to_subset_average(&[3, 3, 5], 1, 10).is_err());
    }

    #[test]
    fn subset_average_examples() {
        let g = subset_average_to_tree(&[1, 3], 1, None).unwrap();
        assert_eq!(g.graph.n(), 193);
        assert_eq!(g.k, 192);
        assert_eq!(g.threshold, ratio(1, 2));
        assert_eq!(g.provenance_value("l"), Some("96"));
        assert_eq!(g.provenance_value("certificate"), Some("full"));

        let g = subset_average_to_tree(&[1, 3], 1, Some(2)).unwrap();
        assert_eq!((g.graph.n(), g.k), (5, 4));
        assert_eq!(g.provenance_value("certificate"), Some("forward-only"));
        let w = subset_average_witness(&g, 2, &[vec![0, 1]]);
        let w = Subpartition::new(w).unwrap();
        assert!(w.is_partition_of(5));
        assert_eq!(g.graph.subpartition_cost(&w, Variant::Max).unwrap(), ratio(1, 2));

        assert!(subset_average_to_tree(&[1, 2], 1, None).is_err());
        assert!(subset_average_to_tree(&[1, 3], 3, None).is_err());
        assert!(subset_average_to_tree(&[1, 3], 1, Some(1)).is_err());
    }

    #[test]
    fn equipartition_example() {
        for (d, big_d) in [(1u64, 1u64), (2, 3), (5, 7)] {
            let g = equipartition_to_tree(&[1, 1, 1, 1], d, big_d).unwrap();
            let d1 = int(d as i64 + 1);
            assert_eq!(g.k, 7);
            assert_eq!(g.graph.n(), 9);
            for e in g.graph.edges() {
                assert_eq!(e.c, int(4) * &d1 * &d1);
            }
            let n = int(8) * &d1 * &d1 + int(4) + int(4 * d as i64) + int(8) * &d1 * &d1 / int(big_d as i64);
            assert_eq!(g.provenance_value("N"), Some(n.to_string().as_str()));
            assert_eq!(g.threshold, &n / int(7));
            let w = Subpartition::new(equipartition_witness(4, &[0, 1])).unwrap();
            assert!(w.is_partition_of(9));
            assert_eq!(g.graph.subpartition_cost(&w, Variant::Mean).unwrap(), g.threshold);
        }
        assert!(equipartition_to_tree(&[1, 2], 1, 1).is_err());
        assert!(equipartition_to_tree(&[], 1, 1).is_err());
    }

    #[test]
    fn partition_examples() {
        let g = partition_to_bipartite(&[1, 2, 3], Some(100)).unwrap();
        assert_eq!(g.threshold, ratio(3, 103));
        assert!(!g.graph.is_tree());
        assert_eq!(
            partition_to_bipartite(&[1, 1], Some(100)).unwrap().threshold,
            ratio(2, 101)
        );
        assert!(partition_to_bipartite(&[1, 1, 1], None).is_err());
        let g = partition_to_bipartite(&[1, 2, 3], None).unwrap();
        assert_eq!(g.provenance_value("M"), Some("72"));
        assert_eq!(g.provenance_value("sufficient"), Some("yes"));
    }

    #[test]
    fn separation_examples() {
        let p = unit_path(3);
        assert_eq!(separation_bound(&p, &VertexSet::singleton(0)).unwrap(), int(8));
        assert_eq!(separation_bound(&p, &VertexSet::new(vec![0, 2])).unwrap(), int(4));
        let doubled =
            WeightedGraph::tree(vec![int(1); 3], vec![Edge::new(0, 1, int(2)), Edge::new(1, 2, int(2))]).unwrap();
        assert_eq!(separation_bound(&doubled, &VertexSet::singleton(0)).unwrap(), int(8));
        assert!(separation_bound(&p, &VertexSet::new(vec![0, 1, 2])).is_err());
        assert!(separation_bound(&p, &VertexSet::new(vec![])).is_err());
    }

    #[test]
    fn vertex_unitarization_examples() {
        let (g, chi) = unitarize_vertex_weights(&unit_path(2)).unwrap();
        assert_eq!((g.n(), chi), (2, 1));

        let e = WeightedGraph::tree(vec![int(2), int(1)], vec![Edge::new(0, 1, int(3))]).unwrap();
        let (g, chi) = unitarize_vertex_weights(&e).unwrap();
        assert_eq!(chi, 3);
        assert_eq!(g.n(), 2 + 5 + 2);
        assert!(g.omega().iter().all(|w| w.is_one()));
        assert_eq!(g.neighbors(0).len(), 6);
        assert_eq!(g.neighbors(1).len(), 3);
        assert!(g.is_tree());

        let star = WeightedGraph::tree(vec![int(1); 4], (1..4).map(|i| Edge::new(0, i, int(1))).collect()).unwrap();
        let (g, chi) = unitarize_vertex_weights(&star).unwrap();
        assert_eq!(chi, 3);
        assert_eq!(g.n(), 4 + 2 * 4);

        let frac = WeightedGraph::tree(vec![ratio(1, 2), int(1)], vec![Edge::new(0, 1, int(1))]).unwrap();
        assert!(unitarize_vertex_weights(&frac).is_err());
        let (fixed, lw, lc) = integralize(&frac);
        assert_eq!((lw, lc), (BigInt::from(2), BigInt::from(1)));
        assert!(unitarize_vertex_weights(&fixed).is_ok());
    }

    #[test]
    fn edge_unitarization_examples() {
        let (g, n2, psi) = unitarize_edge_weights(&unit_path(2), &int(1), Some(BigInt::from(5))).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.omega(), &[int(5), int(5), int(1)]);
        assert!(g.is_tree());
        assert_eq!(n2, ratio(1, 5));
        assert_eq!(psi, BigInt::from(5));

        let heavy = WeightedGraph::tree(vec![int(1); 2], vec![Edge::new(0, 1, int(2))]).unwrap();
        let (g, _, psi) = unitarize_edge_weights(&heavy, &ratio(1, 2), None).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges().len(), 4);
        assert!(!g.is_tree());
        assert_eq!(psi, BigInt::from(17));

        let bad = WeightedGraph::tree(vec![int(2), int(1)], vec![Edge::new(0, 1, int(1))]).unwrap();
        assert!(unitarize_edge_weights(&bad, &int(1), None).is_err());
    }
}
