//! graph6 and edge-list text formats.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

fn parse_err<T>(offset: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { offset, msg: msg.into() })
}

/// Encodes a graph in graph6: the size, then the upper triangle column by
/// column in 6-bit big-endian groups, each byte offset by 63.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut len = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            len += 1;
            if len == 6 {
                out.push(acc + 63);
                acc = 0;
                len = 0;
            }
        }
    }
    if len > 0 {
        out.push((acc << (6 - len)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 string. An optional `>>graph6<<` header is accepted.
pub fn from_graph6(text: &str) -> Result<Graph> {
    let header = ">>graph6<<";
    let (skip, body) = match text.strip_prefix(header) {
        Some(rest) => (header.len(), rest),
        None => (0, text),
    };
    let bytes = body.trim_end_matches(['\n', '\r']).as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return parse_err(skip + i, format!("byte 0x{b:02x} outside the graph6 range"));
        }
    }
    let Some(&first) = bytes.first() else {
        return parse_err(skip, "empty graph6 string");
    };
    let (n, start) = if first < 126 {
        ((first - 63) as usize, 1)
    } else {
        if bytes.len() < 4 {
            return parse_err(skip + bytes.len(), "truncated size field");
        }
        if bytes[1] == 126 {
            return parse_err(skip + 1, "sizes above 258047 are not supported");
        }
        let n = bytes[1..4].iter().fold(0usize, |a, &b| a << 6 | (b - 63) as usize);
        (n, 4)
    };
    if n > MAX_VERTICES {
        return parse_err(skip, format!("{n} vertices exceeds the limit of {MAX_VERTICES}"));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    let need = pairs.div_ceil(6);
    let data = &bytes[start..];
    if data.len() != need {
        let at = skip + start + data.len().min(need);
        return parse_err(at, format!("expected {need} data bytes for {n} vertices, found {}", data.len()));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (data[k / 6] - 63) >> (5 - k % 6) & 1 == 1 {
                g.connect(i, j);
            }
            k += 1;
        }
    }
    if pairs % 6 != 0 && (data[need - 1] - 63) & ((1 << (6 - pairs % 6)) - 1) != 0 {
        return parse_err(skip + start + need - 1, "nonzero padding bits");
    }
    Ok(g)
}

/// Edge-list text: a header line `n m` followed by `m` lines `u v`.
/// Blank lines and lines starting with `#` are ignored.
pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut lines = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('#') {
            lines.push((offset + (line.len() - line.trim_start().len()), t));
        }
        offset += line.len();
    }
    let nums = |at: usize, t: &str| -> Result<(usize, usize)> {
        let v: Vec<&str> = t.split_whitespace().collect();
        if v.len() != 2 {
            return parse_err(at, format!("expected two integers, found '{t}'"));
        }
        let p = |s: &str| s.parse::<usize>().or_else(|_| parse_err(at, format!("'{s}' is not a nonnegative integer")));
        Ok((p(v[0])?, p(v[1])?))
    };
    let Some(&(at, head)) = lines.first() else {
        return parse_err(0, "empty edge list");
    };
    let (n, m) = nums(at, head)?;
    if n > MAX_VERTICES {
        return parse_err(at, format!("{n} vertices exceeds the limit of {MAX_VERTICES}"));
    }
    if lines.len() - 1 != m {
        return parse_err(at, format!("header announces {m} edges, found {}", lines.len() - 1));
    }
    let mut g = Graph::empty(n)?;
    for &(at, t) in &lines[1..] {
        let (u, v) = nums(at, t)?;
        if u >= n || v >= n {
            return parse_err(at, format!("edge ({u},{v}) out of range for {n} vertices"));
        }
        if u == v {
            return parse_err(at, format!("loop at vertex {u}"));
        }
        if g.has_edge(u, v) {
            return parse_err(at, format!("duplicate edge ({u},{v})"));
        }
        g.connect(u, v);
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut s = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Detects the format: text starting with a digit is an edge list, anything
/// else a single graph6 line.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let t = text.trim_start();
    let lead = text.len() - t.len();
    if t.starts_with(|c: char| c.is_ascii_digit()) || t.starts_with('#') {
        from_edge_list(text)
    } else {
        from_graph6(t.trim_end()).map_err(|e| match e {
            Error::Parse { offset, msg } => Error::Parse { offset: offset + lead, msg },
            other => other,
        })
    }
}

/// One graph per nonempty line of graph6 text.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let t = line.trim();
        if !t.is_empty() {
            let g = from_graph6(t).map_err(|e| match e {
                Error::Parse { offset: o, msg } => Error::Parse { offset: offset + o, msg },
                other => other,
            })?;
            out.push(g);
        }
        offset += line.len();
    }
    Ok(out)
}
