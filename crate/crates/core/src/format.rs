//! The ISOT v1 instance format and the partition witness format.
//!
//! ```text
//! # comment
//! tree 3
//! v 1 1
//! v 2 3/2 5
//! v 3 1
//! e 1 2 1
//! e 2 3 2
//! ```
//!
//! Witnesses are written one part per line as `part <i>: <id> <id> ...`.

use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{Edge, VertexSet, WeightedGraph};
use crate::rational::{parse_rational, Rational};

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, msg: msg.into() }
}

fn parse_id(tok: &str, n: usize, line: usize) -> Result<usize> {
    let id: usize = tok
        .parse()
        .map_err(|_| syntax(line, format!("bad vertex id {tok:?}")))?;
    if id == 0 || id > n {
        return Err(Error::VertexOutOfRange { id, n });
    }
    Ok(id - 1)
}

fn parse_weight(tok: &str, line: usize) -> Result<Rational> {
    parse_rational(tok).ok_or_else(|| syntax(line, format!("bad rational {tok:?}")))
}

/// Parses and validates an ISOT instance.
pub fn parse_instance(text: &str) -> Result<WeightedGraph> {
    let mut header: Option<(bool, usize)> = None;
    let mut omega: Vec<Option<Rational>> = Vec::new();
    let mut gamma: Vec<Rational> = Vec::new();
    let mut edges = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let Some((_, n)) = header else {
            let tree = match toks[0] {
                "tree" => true,
                "graph" => false,
                other => return Err(syntax(line, format!("expected header, found {other:?}"))),
            };
            if toks.len() != 2 {
                return Err(syntax(line, "header must be `tree <n>` or `graph <n>`"));
            }
            let n: usize = toks[1]
                .parse()
                .map_err(|_| syntax(line, format!("bad vertex count {:?}", toks[1])))?;
            if n == 0 {
                return Err(syntax(line, "vertex count must be positive"));
            }
            header = Some((tree, n));
            omega = vec![None; n];
            gamma = vec![Rational::zero(); n];
            continue;
        };
        match toks[0] {
            "v" => {
                if !(3..=4).contains(&toks.len()) {
                    return Err(syntax(line, "vertex line must be `v <id> <omega> [<gamma>]`"));
                }
                let id = parse_id(toks[1], n, line)?;
                if omega[id].is_some() {
                    return Err(syntax(line, format!("vertex {} declared twice", id + 1)));
                }
                omega[id] = Some(parse_weight(toks[2], line)?);
                if let Some(g) = toks.get(3) {
                    gamma[id] = parse_weight(g, line)?;
                }
            }
            "e" => {
                if toks.len() != 4 {
                    return Err(syntax(line, "edge line must be `e <u> <v> <c>`"));
                }
                let u = parse_id(toks[1], n, line)?;
                let v = parse_id(toks[2], n, line)?;
                edges.push(Edge::new(u, v, parse_weight(toks[3], line)?));
            }
            other => return Err(syntax(line, format!("unknown record {other:?}"))),
        }
    }

    let Some((tree, _)) = header else {
        return Err(syntax(text.lines().count().max(1), "missing header"));
    };
    let omega = omega
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.ok_or_else(|| Error::InvalidSet(format!("vertex {} has no `v` line", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    WeightedGraph::new(omega, gamma, edges, tree)
}

/// Renders `g` in ISOT v1. Ground flows are written only when nonzero.
pub fn serialize_instance(g: &WeightedGraph) -> String {
    let mut out = String::new();
    let kind = if g.is_tree() { "tree" } else { "graph" };
    writeln!(out, "{kind} {}", g.n()).unwrap();
    for (i, (w, gm)) in g.omega().iter().zip(g.gamma()).enumerate() {
        if gm.is_zero() {
            writeln!(out, "v {} {w}", i + 1).unwrap();
        } else {
            writeln!(out, "v {} {w} {gm}", i + 1).unwrap();
        }
    }
    for e in g.edges() {
        writeln!(out, "e {} {} {}", e.u + 1, e.v + 1, e.c).unwrap();
    }
    out
}

/// One `part <i>: ...` line per part, 1-based ids.
pub fn format_parts(parts: &[VertexSet]) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        write!(out, "part {}:", i + 1).unwrap();
        for &x in p.ids() {
            write!(out, " {}", x + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses the witness format back into vertex sets (0-based). Comment and
/// blank lines are skipped, as are lines that are not `part` records.
pub fn parse_parts(text: &str, n: usize) -> Result<Vec<VertexSet>> {
    let mut parts = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let Some(rest) = raw.trim().strip_prefix("part ") else {
            continue;
        };
        let (label, ids) = rest
            .split_once(':')
            .ok_or_else(|| syntax(line, "expected `part <i>: <ids>`"))?;
        let label: usize = label
            .trim()
            .parse()
            .map_err(|_| syntax(line, format!("bad part index {label:?}")))?;
        if label != parts.len() + 1 {
            return Err(syntax(
                line,
                format!("expected part {}, found {label}", parts.len() + 1),
            ));
        }
        let ids = ids
            .split_whitespace()
            .map(|t| parse_id(t, n, line))
            .collect::<Result<Vec<_>>>()?;
        parts.push(VertexSet::new(ids));
    }
    Ok(parts)
}
