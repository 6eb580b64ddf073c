//! Graph and embedding inputs.

use std::fs;
use std::path::Path;

use grpchoose::graph::graph6::decode_graph6;
use grpchoose::graph::{generate_connected_graphs_up_to, Graph};
use grpchoose::plane::{parse_rotation_system, PlaneGraph};

use crate::CliError;

/// One catalog entry: where it came from and the graph, or why it could not
/// be read.
#[derive(Debug)]
pub struct Entry {
    pub line: usize,
    pub text: String,
    pub graph: Result<Graph, String>,
}

/// `gen:n` (every connected graph on at most `n` vertices) or a file of
/// graph6 lines. Blank lines and `#` comments are skipped.
pub fn read_catalog(source: &str) -> Result<Vec<Entry>, CliError> {
    if let Some(n) = source.strip_prefix("gen:") {
        let n: usize = n
            .parse()
            .map_err(|_| CliError::Usage(format!("bad catalog size in {source:?}")))?;
        let graphs = generate_connected_graphs_up_to(n).map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(graphs
            .into_iter()
            .enumerate()
            .map(|(i, g)| Entry {
                line: i + 1,
                text: String::new(),
                graph: Ok(g),
            })
            .collect());
    }
    let text = fs::read_to_string(source).map_err(|e| CliError::Io(format!("{source}: {e}")))?;
    Ok(parse_graph6_lines(&text))
}

pub fn parse_graph6_lines(text: &str) -> Vec<Entry> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| Entry {
            line: i + 1,
            text: l.trim().to_string(),
            graph: decode_graph6(l.trim()).map_err(|e| e.to_string()),
        })
        .collect()
}

/// A graph argument: a path to a graph6 file, or graph6 text itself.
pub fn read_graphs(arg: &str) -> Result<Vec<Entry>, CliError> {
    if Path::new(arg).is_file() {
        return read_catalog(arg);
    }
    let g = decode_graph6(arg).map_err(|e| CliError::Usage(format!("{arg:?} is neither a file nor graph6: {e}")))?;
    Ok(vec![Entry {
        line: 1,
        text: arg.to_string(),
        graph: Ok(g),
    }])
}

pub fn read_embedding(path: &Path) -> Result<PlaneGraph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_rotation_system(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
