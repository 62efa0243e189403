//! Slow, direct reference implementations used to cross-check the library.
#![allow(dead_code)]

use regraph::Graph;

/// Independent sets of G[mask] grouped by size, as bit masks.
fn independent_sets(g: &Graph, mask: u64) -> Vec<Vec<u64>> {
    let adj = g.adjacency();
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); 65];
    let mut sub = mask;
    loop {
        let independent = (0..g.n()).all(|v| sub >> v & 1 == 0 || adj[v] & sub == 0);
        if independent {
            by_size[sub.count_ones() as usize].push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
    while by_size.last().is_some_and(|v| v.is_empty()) {
        by_size.pop();
    }
    by_size
}

/// Rank over GF(p) of a dense integer matrix.
fn rank_mod(mut m: Vec<Vec<i64>>, p: i64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let inv = |a: i64| (1..p).find(|&x| a * x % p == 1).unwrap();
    let mut rank = 0;
    for c in 0..cols {
        let Some(r) = (rank..rows).find(|&r| m[r][c].rem_euclid(p) != 0) else { continue };
        m.swap(rank, r);
        let f = inv(m[rank][c].rem_euclid(p));
        for x in m[rank].iter_mut() {
            *x = (*x * f).rem_euclid(p);
        }
        for r in 0..rows {
            if r != rank && m[r][c].rem_euclid(p) != 0 {
                let k = m[r][c];
                for cc in 0..cols {
                    m[r][cc] = (m[r][cc] - k * m[rank][cc]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced Betti numbers b~_{-1}, b~_0, ... of Ind(G[mask]) over GF(p), by
/// dense elimination of the full boundary matrices, without trailing zeros.
pub fn reduced_betti(g: &Graph, mask: u64, p: i64) -> Vec<usize> {
    let faces = independent_sets(g, mask);
    // faces[k] are the (k-1)-dimensional faces
    let boundary_rank = |k: usize| -> usize {
        // from faces of size k to faces of size k-1
        if k == 0 || k >= faces.len() {
            return 0;
        }
        let rows: Vec<Vec<i64>> = faces[k - 1]
            .iter()
            .map(|&t| {
                faces[k]
                    .iter()
                    .map(|&s| {
                        if s & t != t {
                            return 0;
                        }
                        let gone = (s & !t).trailing_zeros();
                        let pos = (s & ((1u64 << gone) - 1)).count_ones();
                        if pos % 2 == 0 { 1 } else { -1 }
                    })
                    .collect()
            })
            .collect();
        rank_mod(rows, p)
    };
    let mut b: Vec<usize> = (0..faces.len()).map(|k| faces[k].len() - boundary_rank(k) - boundary_rank(k + 1)).collect();
    while b.last() == Some(&0) {
        b.pop();
    }
    b
}

/// Hochster formula over all vertex subsets.
pub fn regularity(g: &Graph, p: i64) -> usize {
    let mut best = 0;
    for mask in 0..1u64 << g.n() {
        let b = reduced_betti(g, mask, p);
        // entry k is degree k-1, which contributes j = k
        if let Some(k) = (0..b.len()).rev().find(|&k| b[k] != 0) {
            best = best.max(k);
        }
    }
    best
}

/// Largest set of edges, pairwise disjoint and with no edge between them.
pub fn induced_matching_number(g: &Graph) -> usize {
    let edges = g.edges();
    fn go(g: &Graph, edges: &[(usize, usize)], i: usize, used: u64, size: usize) -> usize {
        if i == edges.len() {
            return size;
        }
        let skip = go(g, edges, i + 1, used, size);
        let (a, b) = edges[i];
        let closed = g.adjacency()[a] | g.adjacency()[b] | 1 << a | 1 << b;
        if closed & used == 0 {
            skip.max(go(g, edges, i + 1, used | 1 << a | 1 << b, size + 1))
        } else {
            skip
        }
    }
    go(g, &edges, 0, 0, 0)
}

/// No induced cycle of length at least four.
pub fn is_chordal(g: &Graph) -> bool {
    let n = g.n();
    for mask in 0u64..1 << n {
        if mask.count_ones() < 4 {
            continue;
        }
        let h = g.induced_subgraph(regraph::VertexSet(mask)).unwrap().0;
        if h.is_connected() && (0..h.n()).all(|v| h.degree(v) == 2) {
            return false;
        }
    }
    true
}

/// Minimum number of cochordal subgraphs covering the edges, by trying every
/// assignment of edges to k bins.
pub fn cochord(g: &Graph) -> usize {
    let edges = g.edges();
    if edges.is_empty() {
        return 0;
    }
    for k in 1..=edges.len() {
        let total = k.pow(edges.len() as u32);
        for code in 0..total {
            let mut c = code;
            let mut bins = vec![Vec::new(); k];
            for &e in &edges {
                bins[c % k].push(e);
                c /= k;
            }
            let ok = bins.iter().all(|b| is_chordal(&Graph::from_edges(g.n(), b).unwrap().complement()));
            if ok {
                return k;
            }
        }
    }
    unreachable!()
}
