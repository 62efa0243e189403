//! Induced and prime decompositions, prime factorizations and the greedy
//! reduction by prime vertices.

use std::collections::HashMap;

use dashmap::DashMap;
use rayon::prelude::*;

use crate::canon::{canon, CanonicalForm};
use crate::error::{input, Result};
use crate::graph::{Graph, VertexSet};
use crate::regularity::Engine;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecompositionKind {
    Induced,
    Prime,
}

/// Pairwise disjoint vertex sets with no edge between distinct parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<VertexSet>,
    pub kind: DecompositionKind,
}

impl Decomposition {
    pub fn union(&self) -> VertexSet {
        self.parts.iter().fold(VertexSet::EMPTY, |a, &b| a | b)
    }

    /// Re-checks every invariant from scratch.
    pub fn validate(&self, engine: &Engine, g: &Graph) -> Result<()> {
        let mut seen = VertexSet::EMPTY;
        for &p in &self.parts {
            g.check_set(p)?;
            if p.len() < 2 {
                return input(format!("part {p} has fewer than two vertices"));
            }
            if p.intersects(seen) {
                return input(format!("part {p} overlaps an earlier part"));
            }
            seen = seen | p;
        }
        for (i, &p) in self.parts.iter().enumerate() {
            for &q in &self.parts[i + 1..] {
                if g.nbrs_of_set(p).intersects(q) {
                    return input(format!("parts {p} and {q} are joined by an edge"));
                }
            }
            if self.kind == DecompositionKind::Prime {
                let h = g.induced(p);
                if !engine.is_prime_graph(&h)? {
                    return input(format!("part {p} does not induce a prime graph"));
                }
            }
        }
        Ok(())
    }
}

/// Memo of primality keyed by canonical form, safe to share across threads.
#[derive(Default)]
pub struct PrimeMemo {
    map: DashMap<CanonicalForm, bool>,
}

impl PrimeMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_prime(&self, engine: &Engine, g: &Graph) -> Result<bool> {
        if g.n() < 2 || !g.is_connected() {
            return Ok(false);
        }
        let f = canon(g);
        if let Some(v) = self.map.get(&f) {
            return Ok(*v);
        }
        let v = engine.is_prime_graph(g)?;
        self.map.insert(f, v);
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// A vertex set inducing a connected prime graph, with its regularity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimePart {
    pub set: VertexSet,
    pub reg: usize,
}

/// All vertex sets of size at least two inducing connected prime graphs,
/// ordered by set bits.
pub fn prime_parts(engine: &Engine, g: &Graph, memo: &PrimeMemo) -> Result<Vec<PrimePart>> {
    let cap = engine.config().cap;
    if g.n() > cap {
        return input(format!("{} vertices exceeds the exhaustive cap of {cap}", g.n()));
    }
    let full = g.vertices().0;
    let masks: Vec<u64> = (1..=full).filter(|&s| s.count_ones() >= 2).collect();
    let found: Vec<Option<PrimePart>> = masks
        .par_iter()
        .map(|&s| {
            let set = VertexSet(s);
            let h = g.induced(set);
            if !h.is_connected() || !memo.is_prime(engine, &h)? {
                return Ok(None);
            }
            Ok(Some(PrimePart { set, reg: engine.reg(&h)? }))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Families of prime parts found so far and whether the search finished.
#[derive(Clone, Debug)]
pub struct DecompositionList {
    pub items: Vec<Decomposition>,
    pub complete: bool,
}

/// Enumerates nonempty prime decompositions. Each family is produced once:
/// the smallest available vertex is either left out or starts a part.
/// Maximality is not required.
pub fn prime_decompositions(engine: &Engine, g: &Graph, budget: usize) -> Result<DecompositionList> {
    let memo = PrimeMemo::new();
    let parts = prime_parts(engine, g, &memo)?;
    let mut by_min: Vec<Vec<VertexSet>> = vec![Vec::new(); g.n()];
    for p in &parts {
        by_min[p.set.min().unwrap()].push(p.set);
    }
    struct Walk<'a> {
        g: &'a Graph,
        by_min: &'a [Vec<VertexSet>],
        budget: usize,
        out: Vec<Decomposition>,
        complete: bool,
    }
    impl Walk<'_> {
        fn go(&mut self, avail: VertexSet, chosen: &mut Vec<VertexSet>) {
            if !self.complete {
                return;
            }
            let Some(v) = avail.min() else {
                if !chosen.is_empty() {
                    if self.out.len() >= self.budget {
                        self.complete = false;
                        return;
                    }
                    self.out.push(Decomposition { parts: chosen.clone(), kind: DecompositionKind::Prime });
                }
                return;
            };
            self.go(avail.without(v), chosen);
            for &p in &self.by_min[v] {
                if p.is_subset(avail) {
                    chosen.push(p);
                    self.go(avail - p - self.g.nbrs_of_set(p), chosen);
                    chosen.pop();
                }
            }
        }
    }
    let mut walk = Walk { g, by_min: &by_min, budget, out: Vec::new(), complete: true };
    walk.go(g.vertices(), &mut Vec::new());
    Ok(DecompositionList { items: walk.out, complete: walk.complete })
}

/// Result of comparing reg(G) with the best prime decomposition sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub reg: usize,
    pub best_sum: usize,
    /// A decomposition attaining `best_sum`, each part with its regularity.
    pub factorization: Vec<PrimePart>,
    pub equal: bool,
}

/// Maximizes the regularity sum over prime decompositions by a memoized
/// recursion on the available vertex set and compares it with reg(G).
pub fn prime_factorization_check(engine: &Engine, g: &Graph) -> Result<FactorizationReport> {
    prime_factorization_with(engine, g, &PrimeMemo::new())
}

pub fn prime_factorization_with(engine: &Engine, g: &Graph, memo: &PrimeMemo) -> Result<FactorizationReport> {
    let parts = prime_parts(engine, g, memo)?;
    let mut by_min: Vec<Vec<PrimePart>> = vec![Vec::new(); g.n()];
    for p in parts {
        by_min[p.set.min().unwrap()].push(p);
    }
    fn best(g: &Graph, by_min: &[Vec<PrimePart>], avail: VertexSet, memo: &mut HashMap<VertexSet, usize>) -> usize {
        let Some(v) = avail.min() else { return 0 };
        if let Some(&b) = memo.get(&avail) {
            return b;
        }
        let mut b = best(g, by_min, avail.without(v), memo);
        for p in &by_min[v] {
            if p.set.is_subset(avail) {
                b = b.max(p.reg + best(g, by_min, avail - p.set - g.nbrs_of_set(p.set), memo));
            }
        }
        memo.insert(avail, b);
        b
    }
    let mut table = HashMap::new();
    let best_sum = best(g, &by_min, g.vertices(), &mut table);
    // walk the table back to one optimal family
    let mut factorization = Vec::new();
    let mut avail = g.vertices();
    while let Some(v) = avail.min() {
        let here = best(g, &by_min, avail, &mut table);
        let pick = by_min[v].iter().find(|p| {
            p.set.is_subset(avail) && p.reg + best(g, &by_min, avail - p.set - g.nbrs_of_set(p.set), &mut table) == here
        });
        match pick {
            Some(p) => {
                factorization.push(*p);
                avail = avail - p.set - g.nbrs_of_set(p.set);
            }
            None => avail = avail.without(v),
        }
    }
    let reg = engine.reg(g)?;
    Ok(FactorizationReport { reg, best_sum, factorization, equal: reg == best_sum })
}

/// One iteration of the reduction: the vertex (original index) and whether
/// it was prime in the graph at that point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub vertex: usize,
    pub prime: bool,
}

#[derive(Clone, Debug)]
pub struct ReductionResult {
    pub counter: usize,
    pub residual: Graph,
    /// `residual_map[new] = old`.
    pub residual_map: Vec<usize>,
    pub log: Vec<ReductionStep>,
}

/// Walks `f` in ascending order. A vertex that is prime in the current graph
/// has its closed neighborhood deleted and increments the counter; any other
/// vertex is deleted alone. Afterwards reg(G) <= counter + reg(residual).
pub fn reduction_algorithm(engine: &Engine, g: &Graph, f: VertexSet) -> Result<ReductionResult> {
    g.check_set(f)?;
    let mut alive = g.vertices();
    let mut todo = f;
    let mut counter = 0;
    let mut log = Vec::new();
    while let Some(v) = todo.min() {
        let (cur, map) = g.induced_subgraph(alive)?;
        let local = map.iter().position(|&o| o == v).unwrap();
        let prime = engine.is_prime_vertex(&cur, local)?;
        let gone = if prime { g.closed_nbrs(v) & alive } else { VertexSet::singleton(v) };
        if prime {
            counter += 1;
        }
        alive = alive - gone;
        todo = todo - gone;
        log.push(ReductionStep { vertex: v, prime });
    }
    let (residual, residual_map) = g.induced_subgraph(alive)?;
    Ok(ReductionResult { counter, residual, residual_map, log })
}
