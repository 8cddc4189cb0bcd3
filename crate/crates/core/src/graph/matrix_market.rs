//! MatrixMarket coordinate reader. Only the sparsity pattern is kept: entry
//! (i, j) with i != j becomes the undirected edge i-j, values and the
//! diagonal are dropped.

use std::path::Path;

use super::{Graph, GraphError};

/// Reads a MatrixMarket coordinate file as the pattern graph of `A + Aᵀ`.
pub fn load_matrix_market(path: impl AsRef<Path>) -> Result<Graph, GraphError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| GraphError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_matrix_market(&text)
}

pub fn parse_matrix_market(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (line_no, banner) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let values_per_entry = parse_banner(line_no, banner)?;

    let mut size_line = None;
    for (no, line) in lines.by_ref() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        size_line = Some((no, t));
        break;
    }
    let (no, size_line) = size_line.ok_or_else(|| parse_err(line_no, "missing size line"))?;
    let dims: Vec<usize> = size_line
        .split_whitespace()
        .map(|tok| tok.parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|e| parse_err(no, &format!("bad size line: {e}")))?;
    let [rows, cols, nnz] = dims[..] else {
        return Err(parse_err(
            no,
            "size line must hold rows, columns and entry count",
        ));
    };
    if rows != cols {
        return Err(parse_err(
            no,
            &format!("matrix is {rows}x{cols}, not square"),
        ));
    }
    let n = rows;

    let mut edges = Vec::with_capacity(nnz);
    let mut seen = 0usize;
    for (no, line) in lines {
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        if seen == nnz {
            return Err(parse_err(
                no,
                &format!("more than the declared {nnz} entries"),
            ));
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        if toks.len() < 2 + values_per_entry {
            return Err(parse_err(no, "entry has too few fields"));
        }
        let row: usize = toks[0]
            .parse()
            .map_err(|_| parse_err(no, &format!("bad row index {:?}", toks[0])))?;
        let col: usize = toks[1]
            .parse()
            .map_err(|_| parse_err(no, &format!("bad column index {:?}", toks[1])))?;
        for tok in &toks[2..2 + values_per_entry] {
            tok.parse::<f64>()
                .map_err(|_| parse_err(no, &format!("bad value {tok:?}")))?;
        }
        if row == 0 || col == 0 || row > n || col > n {
            return Err(GraphError::Index {
                line: no,
                row,
                col,
                n,
            });
        }
        seen += 1;
        if row != col {
            edges.push((row - 1, col - 1));
        }
    }
    if seen < nnz {
        return Err(parse_err(
            text.lines().count(),
            &format!("declared {nnz} entries, found {seen}"),
        ));
    }
    Graph::from_edges(n, &edges)
}

fn parse_banner(line_no: usize, banner: &str) -> Result<usize, GraphError> {
    let toks: Vec<String> = banner
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    if toks.len() != 5 || toks[0] != "%%matrixmarket" {
        return Err(parse_err(
            line_no,
            "header must read %%MatrixMarket matrix coordinate <field> <symmetry>",
        ));
    }
    if toks[1] != "matrix" {
        return Err(parse_err(
            line_no,
            &format!("unsupported object {:?}", toks[1]),
        ));
    }
    if toks[2] != "coordinate" {
        return Err(parse_err(
            line_no,
            &format!("unsupported format {:?}", toks[2]),
        ));
    }
    let values = match toks[3].as_str() {
        "pattern" => 0,
        "real" | "integer" | "double" => 1,
        "complex" => 2,
        other => return Err(parse_err(line_no, &format!("unsupported field {other:?}"))),
    };
    match toks[4].as_str() {
        "general" | "symmetric" | "skew-symmetric" | "hermitian" => Ok(values),
        other => Err(parse_err(
            line_no,
            &format!("unsupported symmetry {other:?}"),
        )),
    }
}

fn parse_err(line: usize, msg: &str) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.to_string(),
    }
}
