//! Line-oriented text formats.
//!
//! Instances:
//!
//! ```text
//! c free-form comment
//! p pohpp <n> <m> <r> [w]
//! e <u> <v> [cost]
//! o <u> <v>
//! ```
//!
//! Vertices are 0-indexed, `o u v` puts `u` before `v`, and costs are
//! required exactly when the header carries the `w` flag. Multicolored
//! graphs use `p mcp <n> <k> <q>`, `v <vertex> <color>` and `e <u> <v>`;
//! 0/1 matrices use `p matrix <n>` followed by `n` rows of `n` digits.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::cost::{format_cost, parse_cost, Cost};
use crate::graph::Graph;
use crate::instance::Instance;
use crate::order::{build_order, OrderError};
use crate::reductions::{MulticoloredGraph, ZeroOneMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("{0}")]
    Io(String),
}

fn syntax(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        reason: reason.into(),
    }
}

/// Non-comment, non-blank lines with their 1-based numbers.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let fields: Vec<&str> = l.split_whitespace().collect();
        match fields.first() {
            None | Some(&"c") => None,
            Some(_) => Some((i + 1, fields)),
        }
    })
}

fn number(line: usize, field: &str, what: &str) -> Result<usize, ParseError> {
    field.parse().map_err(|_| {
        syntax(
            line,
            format!("{what} `{field}` is not a non-negative integer"),
        )
    })
}

fn vertex(line: usize, field: &str, n: usize) -> Result<usize, ParseError> {
    let v = number(line, field, "vertex")?;
    if v >= n {
        return Err(syntax(line, format!("vertex {v} out of range 0..{n}")));
    }
    Ok(v)
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<(usize, usize, usize, bool)> = None;
    let mut edges: Vec<(usize, usize, Option<Cost>)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    let mut pairs = Vec::new();
    let mut last_line = 0;
    for (line, f) in records(text) {
        last_line = line;
        match f[0] {
            "p" => {
                if header.is_some() {
                    return Err(syntax(line, "second header"));
                }
                if f.len() < 5 || f.len() > 6 || f[1] != "pohpp" {
                    return Err(syntax(line, "expected `p pohpp <n> <m> <r> [w]`"));
                }
                let weighted = match f.get(5) {
                    None => false,
                    Some(&"w") => true,
                    Some(other) => return Err(syntax(line, format!("unknown flag `{other}`"))),
                };
                let n = number(line, f[2], "vertex count")?;
                if n == 0 {
                    return Err(syntax(line, "instance needs at least one vertex"));
                }
                header = Some((
                    n,
                    number(line, f[3], "edge count")?,
                    number(line, f[4], "pair count")?,
                    weighted,
                ));
            }
            "e" | "o" => {
                let Some((n, _, _, weighted)) = header else {
                    return Err(syntax(line, "record before header"));
                };
                let arity = if f[0] == "e" && weighted { 4 } else { 3 };
                if f.len() != arity {
                    let shape = match (f[0], weighted) {
                        ("e", true) => "`e <u> <v> <cost>`",
                        ("e", false) => "`e <u> <v>`",
                        _ => "`o <u> <v>`",
                    };
                    return Err(syntax(line, format!("expected {shape}")));
                }
                let u = vertex(line, f[1], n)?;
                let v = vertex(line, f[2], n)?;
                if f[0] == "e" {
                    if u == v {
                        return Err(syntax(line, format!("self-loop at {u}")));
                    }
                    let cost = match f.get(3) {
                        Some(c) => Some(parse_cost(c).map_err(|e| syntax(line, e.to_string()))?),
                        None => None,
                    };
                    edges.push((u, v, cost));
                    edge_lines.push(line);
                } else {
                    pairs.push((u, v));
                }
            }
            other => return Err(syntax(line, format!("unknown record type `{other}`"))),
        }
    }
    let Some((n, m, r, weighted)) = header else {
        return Err(syntax(last_line.max(1), "missing `p pohpp` header"));
    };
    if edges.len() != m {
        return Err(syntax(
            last_line,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    if pairs.len() != r {
        return Err(syntax(
            last_line,
            format!("header announces {r} pairs, found {}", pairs.len()),
        ));
    }
    let mut seen = std::collections::HashSet::new();
    for (i, &(u, v, _)) in edges.iter().enumerate() {
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(syntax(edge_lines[i], format!("duplicate edge {u}-{v}")));
        }
    }
    let graph = if weighted {
        let list: Vec<_> = edges
            .iter()
            .map(|&(u, v, c)| (u, v, c.expect("weighted")))
            .collect();
        Graph::with_costs(n, &list)
    } else {
        let list: Vec<_> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        Graph::new(n, &list)
    }
    .map_err(|e| syntax(last_line, e.to_string()))?;
    let order = build_order(n, &pairs)?;
    Ok(Instance::new(graph, order).expect("sizes agree"))
}

pub fn parse_instance_file(path: &Path) -> Result<Instance, ParseError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParseError::Io(format!("{}: {e}", path.display())))?;
    parse_instance(&text)
}

/// Renders an instance, emitting the order as its cover relation.
pub fn emit_instance(instance: &Instance) -> String {
    emit_instance_with_comments(instance, &[])
}

pub fn emit_instance_with_comments(instance: &Instance, comments: &[String]) -> String {
    let g = instance.graph();
    let covers = instance.order().cover_pairs();
    let mut out = String::new();
    for c in comments {
        for line in c.lines() {
            let _ = writeln!(out, "c {line}");
        }
    }
    let flag = if g.is_weighted() { " w" } else { "" };
    let _ = writeln!(out, "p pohpp {} {} {}{flag}", g.n(), g.m(), covers.len());
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        match g.costs() {
            Some(c) => {
                let _ = writeln!(out, "e {u} {v} {}", format_cost(&c[i]));
            }
            None => {
                let _ = writeln!(out, "e {u} {v}");
            }
        }
    }
    for (u, v) in covers {
        let _ = writeln!(out, "o {u} {v}");
    }
    out
}

pub fn parse_mcp(text: &str) -> Result<MulticoloredGraph, ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut color: Vec<Option<usize>> = Vec::new();
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (line, f) in records(text) {
        last_line = line;
        match (f[0], header) {
            ("p", None) => {
                if f.len() != 5 || f[1] != "mcp" {
                    return Err(syntax(line, "expected `p mcp <n> <k> <q>`"));
                }
                let n = number(line, f[2], "vertex count")?;
                header = Some((
                    n,
                    number(line, f[3], "color count")?,
                    number(line, f[4], "class size")?,
                ));
                color = vec![None; n];
            }
            ("p", Some(_)) => return Err(syntax(line, "second header")),
            (_, None) => return Err(syntax(line, "record before header")),
            ("v", Some((n, k, _))) => {
                if f.len() != 3 {
                    return Err(syntax(line, "expected `v <vertex> <color>`"));
                }
                let v = vertex(line, f[1], n)?;
                let c = number(line, f[2], "color")?;
                if c == 0 || c > k {
                    return Err(syntax(line, format!("color {c} outside 1..={k}")));
                }
                if color[v].replace(c).is_some() {
                    return Err(syntax(line, format!("vertex {v} colored twice")));
                }
            }
            ("e", Some((n, _, _))) => {
                if f.len() != 3 {
                    return Err(syntax(line, "expected `e <u> <v>`"));
                }
                let u = vertex(line, f[1], n)?;
                let v = vertex(line, f[2], n)?;
                if u == v {
                    return Err(syntax(line, format!("self-loop at {u}")));
                }
                edges.push((u, v));
            }
            (other, _) => return Err(syntax(line, format!("unknown record type `{other}`"))),
        }
    }
    let Some((n, k, q)) = header else {
        return Err(syntax(last_line.max(1), "missing `p mcp` header"));
    };
    let color: Vec<usize> = color
        .iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| syntax(last_line, format!("vertex {v} has no color"))))
        .collect::<Result<_, _>>()?;
    let graph = Graph::new(n, &edges).map_err(|e| syntax(last_line, e.to_string()))?;
    let g =
        MulticoloredGraph::new(graph, k, color).map_err(|e| syntax(last_line, e.to_string()))?;
    if g.q() != q {
        return Err(syntax(
            last_line,
            format!("header says q = {q}, classes have {}", g.q()),
        ));
    }
    Ok(g)
}

pub fn emit_mcp(g: &MulticoloredGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p mcp {} {} {}", g.graph().n(), g.k(), g.q());
    for v in 0..g.graph().n() {
        let _ = writeln!(out, "v {v} {}", g.color(v));
    }
    for &(u, v) in g.graph().edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<ZeroOneMatrix, ParseError> {
    let mut lines = records(text);
    let Some((line, f)) = lines.next() else {
        return Err(syntax(1, "missing `p matrix` header"));
    };
    if f.len() != 3 || f[0] != "p" || f[1] != "matrix" {
        return Err(syntax(line, "expected `p matrix <n>`"));
    }
    let n = number(line, f[2], "size")?;
    let mut rows = Vec::with_capacity(n);
    for (line, f) in lines {
        let digits: String = f.concat();
        if digits.len() != n || !digits.chars().all(|c| c == '0' || c == '1') {
            return Err(syntax(line, format!("expected a row of {n} binary digits")));
        }
        rows.push(digits.chars().map(|c| c == '1').collect());
    }
    if rows.len() != n {
        return Err(syntax(
            line,
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    ZeroOneMatrix::new(rows).map_err(|e| syntax(line, e.to_string()))
}

pub fn emit_matrix(m: &ZeroOneMatrix) -> String {
    let mut out = format!("p matrix {}\n", m.n());
    for row in m.rows() {
        out.extend(row.iter().map(|&b| if b { '1' } else { '0' }));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::small_instance;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        let i = parse_instance("p pohpp 2 1 0\ne 0 1").unwrap();
        assert_eq!((i.n(), i.graph().m(), i.weighted()), (2, 1, false));
        let w = parse_instance("p pohpp 2 1 1 w\ne 0 1 2.5\no 0 1").unwrap();
        assert_eq!(w.graph().cost(0, 1), Some(Cost::new(5, 2)));
        assert!(w.order().less(0, 1));
        let cyc = parse_instance("p pohpp 2 1 2\ne 0 1\no 0 1\no 1 0");
        assert!(matches!(
            cyc,
            Err(ParseError::Order(OrderError::CycleDetected(_)))
        ));
    }

    #[test]
    fn reports_line_numbers() {
        let cases = [
            ("c x\np pohpp 2 1 0\ne 0 2", 3),
            ("p pohpp 2 1 0 w\ne 0 1", 2),
            ("e 0 1", 1),
            ("p pohpp 2 1 0\ne 0 1 3", 2),
            ("p pohpp 2 2 0\ne 0 1\ne 1 0", 3),
            ("p pohpp 2 1 0\ne 0 1\nx", 3),
            ("p pohpp 2 1 0 w\ne 0 1 1/0", 2),
        ];
        for (text, line) in cases {
            match parse_instance(text) {
                Err(ParseError::Syntax { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn emits_cover_pairs_and_comments() {
        let i = parse_instance("p pohpp 3 2 3\ne 0 1\ne 1 2\no 0 1\no 1 2\no 0 2").unwrap();
        let text = emit_instance_with_comments(&i, &["hello".into()]);
        assert_eq!(text, "c hello\np pohpp 3 2 2\ne 0 1\ne 1 2\no 0 1\no 1 2\n");
    }

    #[test]
    fn mcp_and_matrix_roundtrip() {
        let text = "p mcp 4 2 2\nv 0 1\nv 1 1\nv 2 2\nv 3 2\ne 0 2\n";
        let g = parse_mcp(text).unwrap();
        assert_eq!(emit_mcp(&g), text);
        assert!(parse_mcp("p mcp 2 2 1\nv 0 1\ne 0 1\n").is_err());
        let m = parse_matrix("p matrix 2\n10\n0 1\n").unwrap();
        assert_eq!(emit_matrix(&m), "p matrix 2\n10\n01\n");
        assert!(parse_matrix("p matrix 2\n10\n").is_err());
    }

    proptest! {
        #[test]
        fn roundtrip(seed in any::<u64>()) {
            let inst = small_instance(seed, 9);
            let text = emit_instance(&inst);
            let back = parse_instance(&text).unwrap();
            prop_assert_eq!(&back, &inst);
            prop_assert_eq!(emit_instance(&back), text);
        }
    }
}
