//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs without the libtest harness so every line is
//! printed even when an earlier criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use isoperim::gadgets::{
    partition_to_bipartite, star_family, subset_average_to_tree, subset_average_witness,
    three_partition_to_subset_average, unitarize_edge_weights, unitarize_vertex_weights,
};
use isoperim::rational::{int, ratio};
use isoperim::{
    decide_ipp_max, exact_ipp_fixed_k, exact_ncp_max_fixed_k, fptas_ipp_max, mean_bound_sides, oracle_value,
    oracle_value_with, Edge, OracleOptions, Partition, Problem, Rational, SolveResult, Subpartition, Variant,
    VertexSet, WeightedGraph,
};
use num_traits::{One, Zero};
use rand::Rng;

use common::{corpus, log2_ceil, partition_yes, random_graph, rng, subset_average_blocks, three_partition_yes};

type Check = std::result::Result<String, String>;

/// Oracle optima for all four problems on one corpus instance.
struct Solved {
    g: WeightedGraph,
    k: usize,
    opt: [SolveResult; 4],
}

impl Solved {
    fn get(&self, p: Problem) -> &SolveResult {
        &self.opt[Problem::ALL.iter().position(|&q| q == p).unwrap()]
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_oracle_equivalence(corpus: &[Solved], oracle_time: Duration) -> Check {
    let start = Instant::now();
    for (i, s) in corpus.iter().enumerate() {
        let (max, mean) = exact_ipp_fixed_k(&s.g, s.k).map_err(|e| e.to_string())?;
        let ncp = exact_ncp_max_fixed_k(&s.g, s.k).map_err(|e| e.to_string())?;
        for (got, p) in [
            (&max, Problem::IppMax),
            (&mean, Problem::IppMean),
            (&ncp, Problem::NcpMax),
        ] {
            let want = &s.get(p).value;
            ensure(&got.value == want, || {
                format!("instance {i} k={} {p}: exact {} oracle {want}", s.k, got.value)
            })?;
            let cost =
                s.g.subpartition_cost(&got.witness, p.variant())
                    .map_err(|e| e.to_string())?;
            ensure(cost == got.value, || {
                format!("instance {i} {p}: witness cost {cost} != {}", got.value)
            })?;
            ensure(got.witness.k() == s.k, || {
                format!("instance {i} {p}: witness has {} parts", got.witness.k())
            })?;
        }
        ensure(ncp.witness.is_partition_of(s.g.n()), || {
            format!("instance {i}: ncp witness not a partition")
        })?;
    }
    let exact_time = start.elapsed();
    let total = exact_time + oracle_time;
    ensure(total < Duration::from_secs(60), || format!("runtime {total:?} >= 60 s"))?;
    Ok(format!(
        "{} instances, exact {:.2?} + oracle {:.2?}",
        corpus.len(),
        exact_time,
        oracle_time
    ))
}

fn c2_decision(corpus: &[Solved]) -> Check {
    let mut checks = 0;
    let mut exact_yes = 0;
    for (i, s) in corpus.iter().enumerate() {
        let opt = &s.get(Problem::IppMax).value;
        let delta = ratio(1, 1000);
        for n in [opt.clone(), opt + &delta, opt - &delta, opt * int(2), opt / int(2)] {
            if n <= Rational::zero() {
                continue;
            }
            let d = decide_ipp_max(&s.g, s.k, &n).map_err(|e| e.to_string())?;
            let want = opt <= &n;
            ensure(d.is_yes() == want, || {
                format!("instance {i} k={} N={n}: got {:?}, optimum {opt}", s.k, d.answer)
            })?;
            if let Some(w) = &d.witness {
                let c = s.g.subpartition_cost(w, Variant::Max).map_err(|e| e.to_string())?;
                ensure(c <= n && w.k() == s.k, || {
                    format!("instance {i}: witness cost {c} above N={n}")
                })?;
            }
            if &n == opt {
                exact_yes += 1;
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} decisions, {exact_yes} at the exact optimum"))
}

fn c3_fptas(corpus: &[Solved]) -> Check {
    let mut runs = 0;
    let mut max_steps = 0;
    for (i, s) in corpus.iter().enumerate() {
        let opt = &s.get(Problem::IppMax).value;
        let g = &s.g;
        let c0 = g.edges().iter().map(|e| e.c.clone()).min().unwrap();
        let c: Rational = g.edges().iter().map(|e| e.c.clone()).sum();
        let w: Rational = g.omega().iter().sum();
        let w0 = g.omega().iter().min().unwrap().clone();
        for eps in [ratio(1, 2), ratio(1, 10), ratio(1, 100)] {
            let r = fptas_ipp_max(g, s.k, &eps).map_err(|e| e.to_string())?;
            let hi = (Rational::one() + &eps) * opt;
            ensure(opt <= &r.value && r.value <= hi, || {
                format!("instance {i} eps={eps}: value {} optimum {opt}", r.value)
            })?;
            // ceil(log2(1/(2 eps)) + log2(CW/(c0 w0) - 2)), floored at 1
            let x = (&c * &w / (&c0 * &w0) - int(2)) / (int(2) * &eps);
            let t = log2_ceil(&x).unwrap_or(i64::MIN).max(1);
            let steps = r.trace.as_ref().unwrap().steps as i64;
            ensure(steps <= t + 1, || {
                format!("instance {i} eps={eps}: {steps} steps > {}", t + 1)
            })?;
            max_steps = max_steps.max(steps);
            runs += 1;
        }
    }
    Ok(format!("{runs} runs, at most {max_steps} decision calls"))
}

fn c4_inequalities(corpus: &[Solved]) -> Check {
    let mut strict = 0;
    let mut k2 = 0;
    for (i, s) in corpus.iter().enumerate() {
        let im = &s.get(Problem::IppMax).value;
        let nm = &s.get(Problem::NcpMax).value;
        let ia = &s.get(Problem::IppMean).value;
        let na = &s.get(Problem::NcpMean).value;
        let k = int(s.k as i64);
        if s.k == 2 {
            ensure(im == nm && ia == na, || {
                format!("instance {i}: k=2 gives {im} vs {nm}, {ia} vs {na}")
            })?;
            k2 += 1;
            continue;
        }
        ensure(im <= nm && nm < &((&k - int(1)) * im), || {
            format!("instance {i} k={}: max {im} {nm}", s.k)
        })?;
        let mean_bound = int(2) * (int(1) - int(1) / &k) * ia;
        ensure(ia <= na && na < &mean_bound, || {
            format!("instance {i} k={}: mean {ia} {na}", s.k)
        })?;
        strict += 1;
    }
    Ok(format!(
        "{strict} instances with k in {{3,4}} strict, {k2} with k=2 equal"
    ))
}

fn c5_star_family() -> Check {
    let mut cases = 0;
    for k in 3..=5usize {
        for t in [k as u64, 10, 100] {
            let s = star_family(k, t).map_err(|e| e.to_string())?;
            let (max, mean) = exact_ipp_fixed_k(&s.graph, k).map_err(|e| e.to_string())?;
            let ncp = exact_ncp_max_fixed_k(&s.graph, k).map_err(|e| e.to_string())?;
            let ncp_mean = oracle_value(&s.graph, k, Problem::NcpMean, false).map_err(|e| e.to_string())?;
            for (p, v) in [
                (Problem::IppMax, &max.value),
                (Problem::IppMean, &mean.value),
                (Problem::NcpMax, &ncp.value),
                (Problem::NcpMean, &ncp_mean.value),
            ] {
                let want = s.closed_form(p).unwrap();
                ensure(v == want, || format!("k={k} t={t} {p}: solver {v} closed form {want}"))?;
                let o = oracle_value(&s.graph, k, p, false).map_err(|e| e.to_string())?;
                ensure(&o.value == want, || {
                    format!("k={k} t={t} {p}: oracle {} closed form {want}", o.value)
                })?;
            }
            if t == 100 {
                let kk = int(k as i64);
                let tt = int(t as i64);
                let shrink = int(1) - int(2) * &kk / &tt;
                let rmax = &ncp.value / &max.value;
                ensure(rmax == (&kk - int(1)) * &tt / (&tt + &kk), || {
                    format!("k={k}: max ratio {rmax}")
                })?;
                ensure(rmax > (&kk - int(1)) * &shrink, || {
                    format!("k={k}: max ratio {rmax} too small")
                })?;
                let rmean = &ncp_mean.value / &mean.value;
                let bound = int(2) * (int(1) - int(1) / &kk) * &shrink;
                ensure(rmean > bound, || format!("k={k}: mean ratio {rmean} <= {bound}"))?;
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} (k, t) pairs match all four closed forms"))
}

fn c6_quotient(corpus: &[Solved]) -> Check {
    let mut checks = 0;
    for (i, s) in corpus.iter().enumerate() {
        for p in Problem::ALL {
            let r = s.get(p);
            let mut parts = r.witness.parts().to_vec();
            let rest: VertexSet = (0..s.g.n()).filter(|&v| !parts.iter().any(|q| q.contains(v))).collect();
            if !rest.is_empty() {
                parts.push(rest);
            }
            let pi = Partition::new(parts, s.g.n()).map_err(|e| e.to_string())?;
            let (q, _) = s.g.quotient(&pi).map_err(|e| e.to_string())?;
            let v = oracle_value(&q, s.k, p, false).map_err(|e| e.to_string())?.value;
            ensure(v == r.value, || {
                format!("instance {i} k={} {p}: quotient {v} vs {}", s.k, r.value)
            })?;
            checks += 1;
        }
    }
    Ok(format!("{checks} quotients preserve the optimum"))
}

fn c7_connected(corpus: &[Solved]) -> Check {
    let mut checks = 0;
    for (i, s) in corpus.iter().enumerate() {
        for p in [Problem::IppMax, Problem::IppMean] {
            let v = oracle_value(&s.g, s.k, p, true).map_err(|e| e.to_string())?.value;
            ensure(v == s.get(p).value, || {
                format!("instance {i} {p}: connected {v} vs {}", s.get(p).value)
            })?;
            checks += 1;
        }
    }
    Ok(format!("{checks} connected-only optima agree"))
}

fn oracle_capped(g: &WeightedGraph, k: usize, cap: usize) -> Result<Rational, String> {
    let opts = OracleOptions {
        cap: Some(cap),
        ..Default::default()
    };
    oracle_value_with(g, k, Problem::NcpMax, &opts)
        .map(|r| r.value)
        .map_err(|e| e.to_string())
}

fn c8_unitarization() -> Check {
    let mut r = rng(0xa11);
    let cap = |k: usize| if k == 2 { 18 } else { 13 };
    let mut step1 = 0;
    for _ in 0..20_000 {
        if step1 >= 60 {
            break;
        }
        let n = r.gen_range(2..=4);
        let k = r.gen_range(2..=3usize.min(n));
        let g = random_graph(&mut r, n, 3, false);
        let (h, chi) = unitarize_vertex_weights(&g).map_err(|e| e.to_string())?;
        if h.n() > cap(k) {
            continue;
        }
        let a = oracle_capped(&g, k, cap(k))?;
        let b = oracle_capped(&h, k, cap(k))?;
        ensure(a == int(chi as i64) * &b, || {
            format!("step 1 on {g:?}, k={k}: {a} vs chi={chi} * {b}")
        })?;
        step1 += 1;
    }
    ensure(step1 >= 50, || format!("only {step1} step-1 instances fit the oracle"))?;

    let mut step2 = 0;
    for _ in 0..20_000 {
        if step2 >= 60 {
            break;
        }
        let n = r.gen_range(2..=4);
        let k = r.gen_range(2..=3usize.min(n));
        let g = random_graph(&mut r, n, 3, true);
        let extra: Rational = g.edges().iter().map(|e| e.c.clone()).sum();
        if int(n as i64) + extra > int(14) {
            continue;
        }
        let opt = oracle_capped(&g, k, 14)?;
        if opt.is_zero() {
            // disconnected with at least k components: no positive threshold to test
            continue;
        }
        let below = {
            let b = &opt - ratio(1, 1000);
            if b > Rational::zero() {
                b
            } else {
                &opt / int(2)
            }
        };
        for (n_, want) in [(opt.clone(), true), (below, false)] {
            let (h, n2, _) = unitarize_edge_weights(&g, &n_, None).map_err(|e| e.to_string())?;
            let got = oracle_capped(&h, k, 14)? <= n2;
            ensure(got == want, || {
                format!("step 2 on {g:?}, k={k}, N={n_}: expected {want}")
            })?;
        }
        step2 += 1;
    }
    ensure(step2 >= 50, || format!("only {step2} step-2 instances fit the oracle"))?;
    Ok(format!("{step1} step-1 graphs, {step2} step-2 graphs"))
}

/// Nondecreasing tuples of `len` values in `lo..=hi` summing to `sum`.
fn tuples(len: usize, lo: u64, hi: u64, sum: u64) -> Vec<Vec<u64>> {
    fn go(len: usize, lo: u64, hi: u64, sum: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if len == 0 {
            if sum == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in lo..=hi.min(sum) {
            cur.push(v);
            go(len - 1, v, hi, sum - v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if lo <= hi {
        go(len, lo, hi, sum, &mut Vec::new(), &mut out);
    }
    out
}

fn c9_gadgets() -> Check {
    // 3-PARTITION <-> SUBSET AVERAGE, every instance with m <= 2, B <= 12.
    let mut tp = 0;
    let mut tp_yes = 0;
    for m in 1..=2usize {
        for b in 1..=12u64 {
            let lo = b / 4 + 1;
            let hi = (b - 1) / 2;
            for x in tuples(3 * m, lo, hi, m as u64 * b) {
                let s = three_partition_to_subset_average(&x, m, b).map_err(|e| e.to_string())?;
                let src = three_partition_yes(&x, m, b);
                let dst = subset_average_blocks(&s.y, m).is_some();
                ensure(src == dst, || {
                    format!("x={x:?} B={b}: 3-partition {src}, subset average {dst}")
                })?;
                tp += 1;
                tp_yes += src as usize;
            }
        }
    }

    // Forward direction of the tree reduction at l = 2.
    let mut sa = 0;
    for n in 1..=3usize {
        for total in n as u64..=6 * n as u64 {
            if total % n as u64 != 0 {
                continue;
            }
            for y in tuples(n, 1, 6, total) {
                for m in 1..=n {
                    let Some(blocks) = subset_average_blocks(&y, m) else {
                        continue;
                    };
                    let inst = subset_average_to_tree(&y, m, Some(2)).map_err(|e| e.to_string())?;
                    let v = oracle_value(&inst.graph, inst.k, Problem::NcpMax, false)
                        .map_err(|e| e.to_string())?
                        .value;
                    ensure(v <= inst.threshold, || {
                        format!("y={y:?} m={m}: optimum {v} > {}", inst.threshold)
                    })?;
                    let w = Subpartition::new(subset_average_witness(&inst, n, &blocks)).map_err(|e| e.to_string())?;
                    let c = inst
                        .graph
                        .subpartition_cost(&w, Variant::Max)
                        .map_err(|e| e.to_string())?;
                    ensure(w.k() == inst.k && c == inst.threshold, || {
                        format!("y={y:?} m={m}: witness cost {c}")
                    })?;
                    sa += 1;
                }
            }
        }
    }

    // PARTITION <-> 2-way normalized cut on the bipartite gadget.
    let mut r = rng(0xb1);
    let mut pb = 0;
    let mut pb_yes = 0;
    for n in 1..=8usize {
        for _ in 0..12 {
            let mut x: Vec<u64> = (0..n).map(|_| r.gen_range(1..=6)).collect();
            if x.iter().sum::<u64>() % 2 == 1 {
                x[n - 1] += 1;
            }
            let inst = partition_to_bipartite(&x, None).map_err(|e| e.to_string())?;
            let v = oracle_value(&inst.graph, 2, Problem::NcpMax, false)
                .map_err(|e| e.to_string())?
                .value;
            let src = partition_yes(&x);
            ensure((v <= inst.threshold) == src, || {
                format!("x={x:?}: optimum {v}, threshold {}, partition {src}", inst.threshold)
            })?;
            pb += 1;
            pb_yes += src as usize;
        }
    }
    Ok(format!(
        "3-partition {tp} instances ({tp_yes} yes); subset-average forward {sa}; partition {pb} ({pb_yes} yes)"
    ))
}

fn family_tree(kind: &str, n: usize, r: &mut impl Rng) -> WeightedGraph {
    let omega = (0..n).map(|_| int(r.gen_range(1..=9))).collect();
    let edges = (1..n)
        .map(|i| {
            let p = match kind {
                "path" => i - 1,
                "star" => 0,
                _ => r.gen_range(0..i),
            };
            Edge::new(p, i, int(r.gen_range(1..=9)))
        })
        .collect();
    WeightedGraph::tree(omega, edges).unwrap()
}

fn c10_scaling() -> Check {
    let mut r = rng(0x5ca1e);
    let mut report = Vec::new();
    for kind in ["path", "star", "random"] {
        let mut times = Vec::new();
        for n in [100_000usize, 200_000, 400_000] {
            let g = family_tree(kind, n, &mut r);
            let mut samples: Vec<Duration> = (0..5)
                .map(|_| {
                    let start = Instant::now();
                    let d = decide_ipp_max(&g, n / 10, &int(1)).unwrap();
                    let el = start.elapsed();
                    std::hint::black_box(d);
                    el
                })
                .collect();
            samples.sort();
            times.push(samples[2]);
        }
        ensure(times[0] < Duration::from_secs(1), || {
            format!("{kind}: {:?} at n=1e5", times[0])
        })?;
        for w in times.windows(2) {
            let ratio = w[1].as_secs_f64() / w[0].as_secs_f64().max(1e-9);
            ensure(ratio <= 3.0, || {
                format!("{kind}: doubling ratio {ratio:.2} ({:?})", times)
            })?;
        }
        report.push(format!("{kind} {:.1?}/{:.1?}/{:.1?}", times[0], times[1], times[2]));
    }
    Ok(report.join(", "))
}

fn random_ratio(r: &mut impl Rng, max_p: i64, max_q: i64) -> Rational {
    ratio(r.gen_range(0..=max_p), r.gen_range(1..=max_q))
}

fn c11_mean_bound() -> Check {
    let mut r = rng(0x1e3);
    let mut equal = 0;
    for i in 0..10_000 {
        let k = r.gen_range(2..=6usize);
        let q = r.gen_range(1..=12i64);
        let lambda = ratio(r.gen_range(1..k as i64 * q), q);
        let mode = r.gen_range(0..10);
        let a: Vec<Rational> = if mode == 0 {
            vec![ratio(1, k as i64); k]
        } else {
            let raw: Vec<i64> = loop {
                let v: Vec<i64> = (0..k).map(|_| r.gen_range(0..=5)).collect();
                if v.iter().sum::<i64>() > 0 {
                    break v;
                }
            };
            let s: i64 = raw.iter().sum();
            raw.iter().map(|&x| ratio(x, s)).collect()
        };
        let b: Vec<Rational> = match mode {
            0 => vec![random_ratio(&mut r, 6, 4); k],
            1 => vec![Rational::zero(); k],
            _ => (0..k).map(|_| random_ratio(&mut r, 6, 4)).collect(),
        };
        let (lhs, rhs) = mean_bound_sides(k, &lambda, &a, &b).map_err(|e| e.to_string())?;
        ensure(lhs <= rhs, || {
            format!("sample {i}: {lhs} > {rhs} for k={k} lambda={lambda} a={a:?} b={b:?}")
        })?;
        if lhs == rhs {
            let zero = b.iter().all(Rational::is_zero);
            let uniform = a.iter().all(|x| x == &ratio(1, k as i64)) && b.iter().all(|x| x == &b[0]);
            ensure(zero || uniform, || {
                format!("sample {i}: unexpected equality k={k} lambda={lambda} a={a:?} b={b:?}")
            })?;
            equal += 1;
        }
    }
    Ok(format!(
        "10000 samples hold, {equal} equalities all in the stated cases"
    ))
}

fn run(id: u32, name: &str, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into()))
    });
    let el = start.elapsed();
    match &out {
        Ok(d) => println!("criterion {id:>2} PASS  {name}: {d} [{el:.2?}]"),
        Err(d) => println!("criterion {id:>2} FAIL  {name}: {d} [{el:.2?}]"),
    }
    out.is_ok()
}

fn main() {
    let start = Instant::now();
    let solved: Vec<Solved> = corpus(220)
        .into_iter()
        .map(|(g, k)| {
            let opt = Problem::ALL.map(|p| oracle_value(&g, k, p, false).unwrap());
            Solved { g, k, opt }
        })
        .collect();
    let oracle_time = start.elapsed();
    println!(
        "corpus: {} (tree, k) instances, oracle {:.2?}",
        solved.len(),
        oracle_time
    );

    let results = [
        run(1, "oracle equivalence", || c1_oracle_equivalence(&solved, oracle_time)),
        run(2, "decision correctness", || c2_decision(&solved)),
        run(3, "FPTAS contract", || c3_fptas(&solved)),
        run(4, "inequality chain", || c4_inequalities(&solved)),
        run(5, "sharpness family", c5_star_family),
        run(6, "quotient invariance", || c6_quotient(&solved)),
        run(7, "connected minimizers", || c7_connected(&solved)),
        run(8, "unitarization", c8_unitarization),
        run(9, "gadget soundness", c9_gadgets),
        run(10, "linear-time scaling", c10_scaling),
        run(11, "mean-bound inequality", c11_mean_bound),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
