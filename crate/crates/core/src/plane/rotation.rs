use std::fmt::Write;

use super::{PlaneError, PlaneGraph};
use crate::graph::Graph;

/// Largest vertex id accepted by the parser.
const MAX_VERTEX: usize = 1 << 16;

/// Parses lines `v: u1 u2 ... uk` giving the clockwise neighbour order at
/// `v`. `#` starts a comment. Vertices are `0..=max id`, and each needs
/// exactly one line (an isolated vertex is written `v:`).
pub fn parse_rotation_system(text: &str) -> Result<PlaneGraph, PlaneError> {
    let err = |line: usize, message: String| PlaneError::Parse { line, message };
    let mut rows: Vec<Option<(usize, Vec<usize>)>> = Vec::new();
    let mut first_mention: Vec<usize> = Vec::new();
    let mut last_line = 0;
    let vertex = |tok: &str, line: usize| -> Result<usize, PlaneError> {
        let v: usize = tok
            .parse()
            .map_err(|_| err(line, format!("expected a vertex number, found {tok:?}")))?;
        if v >= MAX_VERTEX {
            return Err(err(line, format!("vertex {v} exceeds the limit of {}", MAX_VERTEX - 1)));
        }
        Ok(v)
    };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (head, tail) = body
            .split_once(':')
            .ok_or_else(|| err(line, "missing ':' after the vertex".into()))?;
        let v = vertex(head.trim(), line)?;
        let mut rot = Vec::new();
        for tok in tail.split_whitespace() {
            let u = vertex(tok, line)?;
            if u == v {
                return Err(err(line, format!("vertex {v} lists itself")));
            }
            if rot.contains(&u) {
                return Err(err(line, format!("neighbour {u} repeated")));
            }
            rot.push(u);
        }
        let needed = rot.iter().copied().chain([v]).max().unwrap_or(v) + 1;
        if rows.len() < needed {
            rows.resize(needed, None);
            first_mention.resize(needed, 0);
        }
        for &u in rot.iter().chain([&v]) {
            if first_mention[u] == 0 {
                first_mention[u] = line;
            }
        }
        if let Some((prev, _)) = rows[v] {
            return Err(err(line, format!("vertex {v} already given on line {prev}")));
        }
        rows[v] = Some((line, rot));
    }
    let mut rotation = Vec::with_capacity(rows.len());
    let mut lines = Vec::with_capacity(rows.len());
    for (v, row) in rows.into_iter().enumerate() {
        match row {
            Some((line, rot)) => {
                lines.push(line);
                rotation.push(rot);
            }
            None => {
                let at = if first_mention[v] == 0 {
                    last_line
                } else {
                    first_mention[v]
                };
                return Err(err(at, format!("vertex {v} has no rotation line")));
            }
        }
    }
    let mut g = Graph::new(rotation.len());
    for (v, rot) in rotation.iter().enumerate() {
        for &u in rot {
            if !rotation[u].contains(&v) {
                return Err(err(lines[v], format!("{v} lists {u}, but {u} does not list {v}")));
            }
            if v < u {
                g.add_edge(v, u)?;
            }
        }
    }
    PlaneGraph::new(g, rotation)
}

pub fn write_rotation_system(pg: &PlaneGraph) -> String {
    let mut out = String::new();
    for (v, rot) in pg.rotations().iter().enumerate() {
        let _ = write!(out, "{v}:");
        for u in rot {
            let _ = write!(out, " {u}");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_of(text: &str) -> usize {
        match parse_rotation_system(text).unwrap_err() {
            PlaneError::Parse { line, .. } => line,
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn round_trip() {
        let text = "# tetrahedron\n0: 1 2 3\n1: 0 3 2\n\n2: 0 1 3  # comment\n3: 0 2 1\n";
        let pg = parse_rotation_system(text).unwrap();
        assert_eq!(pg.faces().len(), 4);
        let again = parse_rotation_system(&write_rotation_system(&pg)).unwrap();
        assert_eq!(again.rotations(), pg.rotations());
        assert_eq!(parse_rotation_system("").unwrap().graph().n(), 0);
        assert_eq!(parse_rotation_system("0:\n").unwrap().graph().n(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of("0: 1\n1 0\n"), 2);
        assert_eq!(line_of("0: 1\n1: x\n"), 2);
        assert_eq!(line_of("0: 1\n1: 1\n"), 2);
        assert_eq!(line_of("0: 1 1\n"), 1);
        assert_eq!(line_of("0: 1\n1: 0\n0: 1\n"), 3);
        assert_eq!(line_of("0: 1 2\n1: 0\n2:\n"), 1);
        assert_eq!(line_of("0: 2\n2: 0\n"), 2);
        assert_eq!(line_of("0: 99999999\n"), 1);
        assert!(matches!(
            parse_rotation_system("0: 1 2 3\n1: 0 2 3\n2: 0 1 3\n3: 0 1 2\n"),
            Err(PlaneError::NotPlanar { .. })
        ));
    }
}
