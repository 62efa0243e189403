//! Named graphs and families.

use crate::error::{input, Result};
use crate::graph::Graph;

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return input(format!("cycle needs at least 3 vertices, got {n}"));
    }
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &e)
}

pub fn path(n: usize) -> Result<Graph> {
    if n < 1 {
        return input("path needs at least 1 vertex");
    }
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &e)
}

pub fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return input("complete graph needs at least 1 vertex");
    }
    let e: Vec<_> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    Graph::from_edges(n, &e)
}

/// K_{m,n} with parts {0..m-1} and {m..m+n-1}.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m < 1 || n < 1 {
        return input("complete bipartite graph needs nonempty parts");
    }
    let e: Vec<_> = (0..m).flat_map(|i| (0..n).map(move |j| (i, m + j))).collect();
    Graph::from_edges(m + n, &e)
}

pub fn complement(g: &Graph) -> Graph {
    g.complement()
}

pub fn disjoint_union(gs: &[Graph]) -> Result<Graph> {
    let mut out = Graph::empty(0)?;
    for g in gs {
        out = out.disjoint_union(g)?;
    }
    Ok(out)
}

/// n disjoint edges.
pub fn n_k2(n: usize) -> Result<Graph> {
    let e: Vec<_> = (0..n).map(|i| (2 * i, 2 * i + 1)).collect();
    Graph::from_edges(2 * n, &e)
}

/// The generalized Petersen graph G(8,3).
pub fn moebius_kantor() -> Graph {
    let mut e = Vec::new();
    for i in 0..8 {
        e.push((i, (i + 1) % 8));
        e.push((i, 8 + i));
        e.push((8 + i, 8 + (i + 3) % 8));
    }
    Graph::from_edges(16, &e).expect("static edge list")
}

/// The Morey-Villarreal graph on x1..x11 (indices 0..10).
pub fn morey_villarreal() -> Graph {
    const E: [(usize, usize); 20] = [
        (6, 8),
        (6, 9),
        (8, 10),
        (9, 7),
        (10, 7),
        (6, 3),
        (8, 3),
        (9, 4),
        (6, 4),
        (4, 2),
        (8, 2),
        (10, 2),
        (3, 1),
        (4, 1),
        (7, 1),
        (10, 1),
        (2, 5),
        (3, 5),
        (7, 5),
        (9, 5),
    ];
    let mut e: Vec<(usize, usize)> = E.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    e.extend((0..5).map(|i| (i, 10)));
    Graph::from_edges(11, &e).expect("static edge list")
}

/// n+1 disjoint pentagons plus an apex joined to vertex 0 of each.
pub fn r_graph(n: usize) -> Result<Graph> {
    let total = 5 * (n + 1) + 1;
    let mut g = Graph::empty(total)?;
    let apex = total - 1;
    for k in 0..=n {
        for i in 0..5 {
            g.connect(5 * k + i, 5 * k + (i + 1) % 5);
        }
        g.connect(apex, 5 * k);
    }
    Ok(g)
}

/// Looks up a graph by a short name such as `c5`, `p4`, `k3`, `k2,3`, `3k2`,
/// `mk`, `mv`, `r1`.
pub fn by_name(name: &str) -> Result<Graph> {
    let s = name.trim().to_ascii_lowercase();
    let num = |t: &str| -> Result<usize> {
        t.parse::<usize>().or_else(|_| input(format!("unknown catalog graph '{name}'")))
    };
    match s.as_str() {
        "mk" | "moebius-kantor" => return Ok(moebius_kantor()),
        "mv" | "morey-villarreal" => return Ok(morey_villarreal()),
        "claw" => return complete_bipartite(1, 3),
        _ => {}
    }
    if let Some(rest) = s.strip_suffix("k2") {
        return n_k2(num(rest)?);
    }
    if let Some(rest) = s.strip_prefix('c') {
        return cycle(num(rest)?);
    }
    if let Some(rest) = s.strip_prefix('p') {
        return path(num(rest)?);
    }
    if let Some(rest) = s.strip_prefix('r') {
        return r_graph(num(rest)?);
    }
    if let Some(rest) = s.strip_prefix('k') {
        if let Some((a, b)) = rest.split_once(',') {
            return complete_bipartite(num(a)?, num(b)?);
        }
        return complete(num(rest)?);
    }
    input(format!("unknown catalog graph '{name}'"))
}
