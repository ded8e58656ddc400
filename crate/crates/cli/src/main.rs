use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use isoperim::gadgets::{
    equipartition_to_tree, integralize, partition_to_bipartite, star_family, subset_average_to_tree,
    three_partition_to_subset_average, unitarize_edge_weights, unitarize_vertex_weights, GeneratedInstance,
};
use isoperim::{
    approximate, decide_ipp_max, exact_ipp_fixed_k_with, exact_ncp_max_fixed_k_with, format_parts, fptas_ipp_max,
    oracle_value_with, parse_instance, parse_parts, parse_rational, serialize_instance, ApproxResult, ExactOptions,
    OracleOptions, Partition, Problem, Rational, SolveResult, WeightedGraph,
};
use num_bigint::BigInt;

#[derive(Parser)]
#[command(
    name = "isoperim",
    version,
    about = "Isoperimetric numbers and normalized cuts on weighted trees"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Is the max isoperimetric number at most the threshold?
    Decide {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = rational)]
        threshold: Rational,
    },
    /// (1+eps)-approximation of the max isoperimetric number by bisection.
    Fptas {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = rational)]
        eps: Rational,
    },
    /// Exact fixed-k optimum by edge-subset enumeration.
    Exact {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = problem)]
        problem: Problem,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Constant-factor approximation of the other three problems.
    Approx {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = rational)]
        eps: Rational,
        #[arg(long, value_parser = problem)]
        problem: Problem,
    },
    /// Brute-force optimum over all labelings (small graphs only).
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = problem)]
        problem: Problem,
        #[arg(long)]
        connected_only: bool,
        #[arg(long)]
        jobs: Option<usize>,
        /// Largest vertex count accepted.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Contracts the connected pieces of each part of a partition.
    Quotient {
        #[command(flatten)]
        input: Input,
        /// Partition in witness format.
        #[arg(long)]
        partition: PathBuf,
    },
    /// Generates an instance.
    #[command(subcommand)]
    Gen(Gen),
    /// Replaces vertex and/or edge weights by unit-weight gadgets.
    Unitarize {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        step: Step,
        #[arg(long, value_parser = rational)]
        threshold: Option<Rational>,
        #[arg(long)]
        psi: Option<BigInt>,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// Star with center weight k and k leaves of weight t.
    Star {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: u64,
    },
    /// Tree from a subset-average instance.
    SubsetAverage {
        #[arg(long, value_delimiter = ',', required = true)]
        y: Vec<u64>,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        l: Option<u64>,
    },
    /// Spider from an equipartition instance.
    Equipartition {
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        #[arg(long)]
        d: u64,
        #[arg(long = "D")]
        big_d: u64,
    },
    /// Complete bipartite graph from a partition instance.
    Partition2 {
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        #[arg(long = "M")]
        big_m: Option<u64>,
    },
    /// Tree from a 3-partition instance, through subset average.
    #[command(name = "3partition")]
    ThreePartition {
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        #[arg(long)]
        m: usize,
        #[arg(long = "B")]
        big_b: u64,
        #[arg(long)]
        l: Option<u64>,
    },
}

#[derive(Args)]
struct Input {
    /// Instance file; standard input when absent.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Step {
    Vertices,
    Edges,
    Full,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("expected an integer or p/q, got {s:?}"))
}

fn problem(s: &str) -> Result<Problem, String> {
    s.parse().map_err(|e: isoperim::Error| e.to_string())
}

enum Failure {
    Input(String),
    Precondition(String),
}

impl From<isoperim::Error> for Failure {
    fn from(e: isoperim::Error) -> Self {
        if e.is_precondition() {
            Failure::Precondition(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

fn read_text(path: Option<&PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
        }
        None => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn load(input: &Input) -> Result<WeightedGraph, Failure> {
    Ok(parse_instance(&read_text(input.input.as_ref())?)?)
}

fn solved(r: &SolveResult) -> String {
    let mut out = format!("value {}\n", r.value);
    out += &format_parts(r.witness.parts());
    writeln!(out, "# problem {}", r.problem).unwrap();
    out
}

fn approximated(r: &ApproxResult) -> String {
    let mut out = format!("value {}\n", r.value);
    out += &format_parts(r.witness.parts());
    writeln!(out, "# problem {}", r.problem).unwrap();
    writeln!(out, "# factor {}", r.factor).unwrap();
    writeln!(out, "# lower_bound {}", r.lower_bound).unwrap();
    if let Some(t) = &r.trace {
        writeln!(out, "# bracket {} {}", t.bracket.0, t.bracket.1).unwrap();
        writeln!(out, "# steps {} of {}", t.steps, t.budget).unwrap();
    }
    out
}

fn generated(g: GeneratedInstance) -> String {
    let mut out = serialize_instance(&g.graph);
    if g.provenance_value("k").is_none() {
        writeln!(out, "# k {}", g.k).unwrap();
    }
    writeln!(out, "# threshold {}", g.threshold).unwrap();
    for (key, value) in &g.provenance {
        writeln!(out, "# {key} {value}").unwrap();
    }
    for (p, v) in &g.closed_forms {
        writeln!(out, "# closed_form {p} {v}").unwrap();
    }
    out
}

fn exact(g: &WeightedGraph, k: usize, p: Problem, jobs: Option<usize>) -> Outcome {
    let opts = ExactOptions {
        jobs,
        ..Default::default()
    };
    let r = match p {
        Problem::IppMax => exact_ipp_fixed_k_with(g, k, &opts)?.0,
        Problem::IppMean => exact_ipp_fixed_k_with(g, k, &opts)?.1,
        Problem::NcpMax => exact_ncp_max_fixed_k_with(g, k, &opts)?,
        Problem::NcpMean => {
            return Err(Failure::Precondition(
                "no exact fixed-k solver for ncp-mean; use `approx` or `oracle`".into(),
            ))
        }
    };
    Ok(solved(&r))
}

fn unitarize(g: &WeightedGraph, step: Step, threshold: Option<Rational>, psi: Option<BigInt>) -> Outcome {
    let (g, vertex_scale, edge_scale) = integralize(g);
    let mut notes = vec![
        ("vertex_scale".to_string(), vertex_scale.to_string()),
        ("edge_scale".to_string(), edge_scale.to_string()),
    ];
    let mut threshold = threshold.map(|t| t * Rational::new(edge_scale, vertex_scale));
    let mut g = g;
    if matches!(step, Step::Vertices | Step::Full) {
        let (h, chi) = unitarize_vertex_weights(&g)?;
        notes.push(("chi".into(), chi.to_string()));
        threshold = threshold.map(|t| t / Rational::from_integer(chi.into()));
        g = h;
    }
    if matches!(step, Step::Edges | Step::Full) {
        let t = threshold
            .take()
            .ok_or_else(|| Failure::Input("edge unitarization needs --threshold".into()))?;
        let (h, scaled, psi) = unitarize_edge_weights(&g, &t, psi)?;
        notes.push(("psi".into(), psi.to_string()));
        threshold = Some(scaled);
        g = h;
    }
    let mut out = serialize_instance(&g);
    for (key, value) in notes {
        writeln!(out, "# {key} {value}").unwrap();
    }
    if let Some(t) = threshold {
        writeln!(out, "# threshold {t}").unwrap();
    }
    Ok(out)
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Decide { input, k, threshold } => {
            let g = load(&input)?;
            let d = decide_ipp_max(&g, k, &threshold)?;
            let mut out = format!("answer {}\n", if d.is_yes() { "YES" } else { "NO" });
            if let Some(w) = &d.witness {
                out += &format_parts(w.canonical().parts());
            }
            if let Some(v) = &d.witness_value {
                writeln!(out, "# witness_value {v}").unwrap();
            }
            writeln!(out, "# processed {}", d.stats.processed).unwrap();
            Ok(out)
        }
        Cmd::Fptas { input, k, eps } => Ok(approximated(&fptas_ipp_max(&load(&input)?, k, &eps)?)),
        Cmd::Exact {
            input,
            k,
            problem,
            jobs,
        } => exact(&load(&input)?, k, problem, jobs),
        Cmd::Approx { input, k, eps, problem } => Ok(approximated(&approximate(&load(&input)?, k, &eps, problem)?)),
        Cmd::Oracle {
            input,
            k,
            problem,
            connected_only,
            jobs,
            cap,
        } => {
            let opts = OracleOptions {
                connected_only,
                cap,
                jobs,
            };
            let mut out = solved(&oracle_value_with(&load(&input)?, k, problem, &opts)?);
            if connected_only {
                out += "# connected_only\n";
            }
            Ok(out)
        }
        Cmd::Quotient { input, partition } => {
            let g = load(&input)?;
            let parts = parse_parts(&read_text(Some(&partition))?, g.n())?;
            let (q, map) = g.quotient(&Partition::new(parts, g.n())?)?;
            let mut out = serialize_instance(&q);
            let ids: Vec<String> = map.iter().map(|v| (v + 1).to_string()).collect();
            writeln!(out, "# vertex_map {}", ids.join(" ")).unwrap();
            Ok(out)
        }
        Cmd::Gen(gen) => Ok(generated(match gen {
            Gen::Star { k, t } => star_family(k, t)?,
            Gen::SubsetAverage { y, m, l } => subset_average_to_tree(&y, m, l)?,
            Gen::Equipartition { x, d, big_d } => equipartition_to_tree(&x, d, big_d)?,
            Gen::Partition2 { x, big_m } => partition_to_bipartite(&x, big_m)?,
            Gen::ThreePartition { x, m, big_b, l } => {
                let s = three_partition_to_subset_average(&x, m, big_b)?;
                let mut inst = subset_average_to_tree(&s.y, s.m, l)?;
                inst.provenance.insert(0, ("source".into(), "3partition".into()));
                inst.provenance.insert(1, ("x".into(), join(&x)));
                inst.provenance.insert(2, ("B".into(), big_b.to_string()));
                inst
            }
        })),
        Cmd::Unitarize {
            input,
            step,
            threshold,
            psi,
        } => unitarize(&load(&input)?, step, threshold, psi),
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
