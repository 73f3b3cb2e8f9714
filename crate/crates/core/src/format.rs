//! Text format for rotation systems:
//!
//! ```text
//! # K4 on the projective plane
//! vertices 4
//! edge 0 1 1
//! edge 0 2 0
//! ...
//! rotation 0: 1 2 3
//! ```
//!
//! `edge u v t` declares edge `{u, v}` with twist `t`; `rotation x: ...`
//! lists the neighbors of `x` in cyclic order. `#` starts a comment.

use crate::error::{invariant, Error, Result};
use crate::graph::{SymmetricDigraph, Vertex};
use crate::rotation::RotationSystem;

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let content = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &content[s..i],
                    column: content[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn number(tok: &Token<'_>, line: usize, what: &str) -> Result<usize> {
    tok.text
        .parse()
        .map_err(|_| err(line, tok.column, format!("expected {what}, found `{}`", tok.text)))
}

fn vertex(tok: &Token<'_>, line: usize, n: usize) -> Result<Vertex> {
    let v = number(tok, line, "a vertex")?;
    if v >= n {
        return Err(err(line, tok.column, format!("vertex {v} out of range 0..{n}")));
    }
    Ok(v)
}

pub fn parse(text: &str) -> Result<RotationSystem> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut twists = Vec::new();
    let mut orders: Vec<Option<Vec<Vertex>>> = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let toks = tokens(raw);
        let Some(head) = toks.first() else { continue };
        match head.text {
            "vertices" => {
                if n.is_some() {
                    return Err(err(line, head.column, "duplicate `vertices` line"));
                }
                if toks.len() != 2 {
                    return Err(err(line, head.column, "expected `vertices <n>`"));
                }
                let count = number(&toks[1], line, "a vertex count")?;
                n = Some(count);
                orders = vec![None; count];
            }
            "edge" => {
                let count = n.ok_or_else(|| err(line, head.column, "`edge` before `vertices`"))?;
                if toks.len() != 4 {
                    return Err(err(line, head.column, "expected `edge <u> <v> <twist>`"));
                }
                let u = vertex(&toks[1], line, count)?;
                let v = vertex(&toks[2], line, count)?;
                let t = match toks[3].text {
                    "0" => false,
                    "1" => true,
                    other => return Err(err(line, toks[3].column, format!("twist must be 0 or 1, found `{other}`"))),
                };
                edges.push((u, v));
                twists.push(t);
            }
            "rotation" => {
                let count = n.ok_or_else(|| err(line, head.column, "`rotation` before `vertices`"))?;
                let Some(label) = toks.get(1) else {
                    return Err(err(line, head.column, "expected `rotation <x>: <v1> ... <vd>`"));
                };
                let Some(x_text) = label.text.strip_suffix(':') else {
                    return Err(err(line, label.column, "expected `<x>:` after `rotation`"));
                };
                let x_tok = Token {
                    text: x_text,
                    column: label.column,
                };
                let x = vertex(&x_tok, line, count)?;
                if orders[x].is_some() {
                    return Err(err(line, label.column, format!("duplicate rotation for vertex {x}")));
                }
                let order = toks[2..].iter().map(|t| vertex(t, line, count)).collect::<Result<Vec<_>>>()?;
                if order.is_empty() {
                    return Err(err(line, label.column, "empty rotation"));
                }
                orders[x] = Some(order);
            }
            other => return Err(err(line, head.column, format!("unknown directive `{other}`"))),
        }
    }
    let count = n.ok_or_else(|| err(last_line.max(1), 1, "missing `vertices` line"))?;
    let graph = SymmetricDigraph::from_edges(count, &edges)?;
    let orders = orders
        .into_iter()
        .enumerate()
        .map(|(x, o)| o.ok_or_else(|| invariant("every vertex has a rotation", format!("no rotation line for vertex {x}"))))
        .collect::<Result<Vec<_>>>()?;
    RotationSystem::from_neighbor_orders(graph, &orders, twists)
}

pub fn write(rs: &RotationSystem) -> String {
    let g = rs.graph();
    let mut out = format!("vertices {}\n", g.vertex_count());
    for (k, (u, v)) in g.edges().enumerate() {
        out += &format!("edge {u} {v} {}\n", u8::from(rs.twist(k)));
    }
    for x in 0..g.vertex_count() {
        let order: Vec<String> = rs.neighbor_order(x).iter().map(ToString::to_string).collect();
        out += &format!("rotation {x}: {}\n", order.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn round_trip() {
        for rs in [catalog::k4_sphere(), catalog::k4_projective_plane(), catalog::cycle(5)] {
            assert_eq!(parse(&write(&rs)).unwrap(), rs);
        }
    }

    #[test]
    fn reports_positions() {
        let bad = "vertices 3\nedge 0 1 0\nedge 1 2 0\nedge 2 0 2\n";
        assert_eq!(
            parse(bad).unwrap_err(),
            Error::Parse {
                line: 4,
                column: 10,
                message: "twist must be 0 or 1, found `2`".into()
            }
        );
        let bad_rotation = "vertices 3\nedge 0 1 0\nedge 1 2 0\nedge 2 0 0\nrotation 0 1 2\n";
        assert!(matches!(parse(bad_rotation), Err(Error::Parse { line: 5, column: 10, .. })));
        let missing = "vertices 3\nedge 0 1 0\nedge 1 2 0\nedge 2 0 0\nrotation 0: 1 2\n";
        assert!(matches!(parse(missing), Err(Error::Invariant { .. })));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# triangle\n\nvertices 3  # three\nedge 0 1 0\nedge 1 2 0\nedge 2 0 1\nrotation 0: 1 2\nrotation 1: 0 2\nrotation 2: 0 1\n";
        let rs = parse(text).unwrap();
        assert_eq!(rs.trace_faces().lengths(), vec![6]);
    }
}
