//! Small graphs up to isomorphism and seeded random graphs.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::canon::{canon, CanonicalForm};
use crate::error::{input, Result};
use crate::graph::Graph;

pub const MAX_ENUMERATION: usize = 7;

/// Connected graphs on `n` vertices up to isomorphism, as canonical forms in
/// sorted order. Built by adding a vertex to each connected graph on n-1
/// vertices, since every connected graph has a vertex whose removal keeps it
/// connected.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUMERATION {
        return input(format!("enumeration is limited to {MAX_ENUMERATION} vertices, got {n}"));
    }
    enumerate_connected_class(n, &|_| true)
}

/// Connected graphs on `n` vertices in a class closed under taking induced
/// subgraphs, described by `member`. No size limit is enforced here.
pub fn enumerate_connected_class(n: usize, member: &(dyn Fn(&Graph) -> bool + Sync)) -> Result<Vec<Graph>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut level: Vec<Graph> = vec![Graph::empty(1)?].into_iter().filter(|g| member(g)).collect();
    for k in 2..=n {
        level = extend(&level, k, member)?;
    }
    Ok(level)
}

fn extend(level: &[Graph], k: usize, member: &(dyn Fn(&Graph) -> bool + Sync)) -> Result<Vec<Graph>> {
    let found: Vec<Vec<CanonicalForm>> = level
        .par_iter()
        .map(|g| {
            let base = g.with_new_vertices(1).expect("within capacity");
            let mut out = Vec::new();
            for nb in 1u64..(1u64 << (k - 1)) {
                let mut h = base.clone();
                for u in 0..k - 1 {
                    if nb >> u & 1 == 1 {
                        h.connect(u, k - 1);
                    }
                }
                if member(&h) {
                    out.push(canon(&h));
                }
            }
            out
        })
        .collect();
    let set: HashSet<CanonicalForm> = found.into_iter().flatten().collect();
    let mut forms: Vec<CanonicalForm> = set.into_iter().collect();
    forms.sort();
    Ok(forms.iter().map(CanonicalForm::to_graph).collect())
}

/// Connected graphs on 1..=n vertices.
pub fn enumerate_connected_up_to(n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(enumerate_connected_graphs(k)?);
    }
    Ok(out)
}

/// Erdős–Rényi G(n, p).
pub fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for j in 1..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                g.connect(i, j);
            }
        }
    }
    Ok(g)
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const DEFAULT_SEED: u64 = 20_240_901;
pub const DENSITIES: [f64; 3] = [0.2, 0.4, 0.6];

/// `count` graphs cycling through n in 5..=9 and p in {0.2, 0.4, 0.6}.
pub fn random_corpus(seed: u64, count: usize) -> Vec<Graph> {
    let mut rng = seeded_rng(seed);
    (0..count)
        .map(|i| {
            let n = 5 + i % 5;
            let p = DENSITIES[(i / 5) % 3];
            gnp(n, p, &mut rng).expect("small graph")
        })
        .collect()
}
