//! METIS graph format: header `n m [fmt [ncon]]` followed by one 1-based
//! neighbor line per vertex. The `fmt` digits flag vertex sizes, vertex
//! weights and edge weights, in that order. Vertex weights are read as
//! costs, vertex sizes as sizes.

use std::io::{self, Write};
use std::path::Path;

use super::{Graph, GraphError};

pub fn load_metis(path: impl AsRef<Path>) -> Result<Graph, GraphError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| GraphError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_metis(&text)
}

struct Format {
    sizes: bool,
    weights: bool,
    edge_weights: bool,
    ncon: usize,
}

pub fn parse_metis(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim_start().starts_with('%'));

    let (hno, header) = loop {
        match lines.next() {
            Some((_, l)) if l.trim().is_empty() => continue,
            Some(h) => break h,
            None => return Err(parse_err(1, "missing header")),
        }
    };
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() < 2 || head.len() > 4 {
        return Err(parse_err(hno, "header must be `n m [fmt [ncon]]`"));
    }
    let n: usize = parse_num(hno, head[0], "vertex count")?;
    let m: usize = parse_num(hno, head[1], "edge count")?;
    let fmt = parse_format(hno, head.get(2).copied(), head.get(3).copied())?;

    let mut rows: Vec<Vec<(usize, u64)>> = Vec::with_capacity(n);
    let mut cost = Vec::with_capacity(n);
    let mut size = Vec::with_capacity(n);
    for u in 0..n {
        let (no, line) = lines
            .next()
            .ok_or_else(|| parse_err(hno, &format!("expected {n} vertex lines, found {u}")))?;
        let mut toks = line.split_whitespace();
        let mut next = |what: &str| -> Result<u64, GraphError> {
            let tok = toks
                .next()
                .ok_or_else(|| parse_err(no, &format!("missing {what}")))?;
            parse_num(no, tok, what)
        };
        size.push(if fmt.sizes {
            let s = next("vertex size")?;
            if s == 0 {
                return Err(parse_err(no, "vertex size must be positive"));
            }
            s
        } else {
            1
        });
        if fmt.weights {
            let first = next("vertex weight")?;
            for _ in 1..fmt.ncon {
                next("vertex weight")?;
            }
            cost.push(first);
        } else {
            cost.push(1);
        }
        let rest: Vec<&str> = toks.collect();
        let stride = if fmt.edge_weights { 2 } else { 1 };
        if !rest.len().is_multiple_of(stride) {
            return Err(parse_err(no, "neighbor without edge weight"));
        }
        let mut row = Vec::with_capacity(rest.len() / stride);
        for pair in rest.chunks(stride) {
            let v: usize = parse_num(no, pair[0], "neighbor")?;
            if v == 0 || v > n {
                return Err(parse_err(no, &format!("neighbor {v} outside 1..={n}")));
            }
            if v == u + 1 {
                return Err(parse_err(no, &format!("self-loop at vertex {v}")));
            }
            let w = if fmt.edge_weights {
                parse_num(no, pair[1], "edge weight")?
            } else {
                1
            };
            if w == 0 {
                return Err(parse_err(no, "edge weight must be positive"));
            }
            row.push((v - 1, w));
        }
        row.sort_by_key(|e| e.0);
        if let Some(d) = row.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(parse_err(
                no,
                &format!("neighbor {} listed twice", d[0].0 + 1),
            ));
        }
        rows.push(row);
    }
    if let Some((no, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(parse_err(
            no,
            &format!("unexpected content after {n} vertex lines: {extra:?}"),
        ));
    }

    let g = Graph::from_raw_parts(rows, cost, size);
    for u in 0..n {
        for (v, w) in g.neighbors(u) {
            if g.edge_weight(v, u) != Some(w) {
                return Err(GraphError::Asymmetry {
                    from: u + 1,
                    to: v + 1,
                });
            }
        }
    }
    if g.edge_count() != m {
        return Err(parse_err(
            hno,
            &format!(
                "header declares {m} edges, adjacency holds {}",
                g.edge_count()
            ),
        ));
    }
    Ok(g)
}

fn parse_format(line: usize, fmt: Option<&str>, ncon: Option<&str>) -> Result<Format, GraphError> {
    let digits = fmt.unwrap_or("0");
    if digits.len() > 3 || !digits.chars().all(|c| c == '0' || c == '1') {
        return Err(parse_err(line, &format!("bad fmt field {digits:?}")));
    }
    let padded = format!("{digits:0>3}");
    let b = padded.as_bytes();
    let ncon = match ncon {
        Some(t) => parse_num::<usize>(line, t, "ncon")?,
        None => 1,
    };
    if ncon == 0 {
        return Err(parse_err(line, "ncon must be positive"));
    }
    Ok(Format {
        sizes: b[0] == b'1',
        weights: b[1] == b'1',
        edge_weights: b[2] == b'1',
        ncon,
    })
}

/// Writes `g` in METIS format, emitting only the weight fields that differ
/// from 1 somewhere in the graph.
pub fn write_metis<W: Write>(g: &Graph, mut out: W) -> io::Result<()> {
    let sizes = g.sizes().iter().any(|&s| s != 1);
    let weights = g.costs().iter().any(|&c| c != 1);
    let edge_weights = g.edges().any(|(_, _, w)| w != 1);
    write!(out, "{} {}", g.n(), g.edge_count())?;
    if sizes || weights || edge_weights {
        write!(
            out,
            " {}{}{}",
            u8::from(sizes),
            u8::from(weights),
            u8::from(edge_weights)
        )?;
    }
    writeln!(out)?;
    for u in 0..g.n() {
        let mut fields = Vec::new();
        if sizes {
            fields.push(g.sizes()[u].to_string());
        }
        if weights {
            fields.push(g.costs()[u].to_string());
        }
        for (v, w) in g.neighbors(u) {
            fields.push((v + 1).to_string());
            if edge_weights {
                fields.push(w.to_string());
            }
        }
        writeln!(out, "{}", fields.join(" "))?;
    }
    Ok(())
}

fn parse_num<N: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<N, GraphError> {
    tok.parse()
        .map_err(|_| parse_err(line, &format!("bad {what} {tok:?}")))
}

fn parse_err(line: usize, msg: &str) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.to_string(),
    }
}
