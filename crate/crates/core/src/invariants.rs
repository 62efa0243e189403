//! Matching-type invariants, cochordal covers and privacy degree.

use std::collections::HashMap;

use crate::canon::canon;
use crate::error::{input, Result};
use crate::graph::{Graph, VertexSet};
use crate::regularity::subsets_of_size;

pub const DEFAULT_COCHORD_BUDGET: u64 = 10_000_000;

/// Maximum matching size.
pub fn matching_number(g: &Graph) -> usize {
    fn go(g: &Graph, rest: u64, size: usize, best: &mut usize) {
        let live: u64 = VertexSet(rest).iter().filter(|&v| g.adjacency()[v] & rest != 0).fold(0, |m, v| m | 1u64 << v);
        if size + (live.count_ones() as usize) / 2 <= *best {
            return;
        }
        if live == 0 {
            *best = (*best).max(size);
            return;
        }
        let v = live.trailing_zeros() as usize;
        for u in VertexSet(g.adjacency()[v] & live) {
            go(g, live & !(1u64 << v) & !(1u64 << u), size + 1, best);
        }
        go(g, live & !(1u64 << v), size, best);
    }
    let mut best = 0;
    go(g, g.vertices().0, 0, &mut best);
    best
}

/// A maximum induced matching.
pub fn induced_matching(g: &Graph) -> Vec<(usize, usize)> {
    fn value(g: &Graph, rest: u64, memo: &mut HashMap<u64, usize>) -> usize {
        let adj = g.adjacency();
        let live: u64 = VertexSet(rest).iter().filter(|&v| adj[v] & rest != 0).fold(0, |m, v| m | 1u64 << v);
        if live == 0 {
            return 0;
        }
        if let Some(&m) = memo.get(&live) {
            return m;
        }
        let u = live.trailing_zeros() as usize;
        let mut best = value(g, live & !(1u64 << u), memo);
        for v in VertexSet(adj[u] & live) {
            let removed = adj[u] | adj[v] | 1u64 << u | 1u64 << v;
            best = best.max(1 + value(g, live & !removed, memo));
        }
        memo.insert(live, best);
        best
    }
    let adj = g.adjacency();
    let mut memo = HashMap::new();
    let mut rest = g.vertices().0;
    let mut out = Vec::new();
    let mut target = value(g, rest, &mut memo);
    while target > 0 {
        let live: u64 = VertexSet(rest).iter().filter(|&v| adj[v] & rest != 0).fold(0, |m, v| m | 1u64 << v);
        let u = live.trailing_zeros() as usize;
        if value(g, live & !(1u64 << u), &mut memo) == target {
            rest = live & !(1u64 << u);
            continue;
        }
        let v = VertexSet(adj[u] & live)
            .iter()
            .find(|&v| 1 + value(g, live & !(adj[u] | adj[v] | 1u64 << u | 1u64 << v), &mut memo) == target)
            .expect("memo is consistent");
        out.push((u, v));
        rest = live & !(adj[u] | adj[v] | 1u64 << u | 1u64 << v);
        target -= 1;
    }
    out
}

pub fn induced_matching_number(g: &Graph) -> usize {
    induced_matching(g).len()
}

/// Result of the cochordal cover search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochordResult {
    pub lower: usize,
    pub upper: usize,
    /// lower == upper was proven within the budget.
    pub exact: bool,
    /// A cover attaining `upper`.
    pub cover: Vec<Vec<(usize, usize)>>,
    pub nodes: u64,
}

impl CochordResult {
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.upper)
    }
}

fn edge_set_graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("edges of a valid graph")
}

/// Greedy cover by maximal cochordal subgraphs.
pub fn cochordal_cover_greedy(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let edges = g.edges();
    let mut covered = vec![false; edges.len()];
    let mut cover = Vec::new();
    while let Some(start) = covered.iter().position(|c| !c) {
        let mut bin = vec![edges[start]];
        let mut in_bin = vec![false; edges.len()];
        in_bin[start] = true;
        loop {
            let mut grew = false;
            // uncovered edges first, then already covered ones
            for pass in [false, true] {
                for (i, &e) in edges.iter().enumerate() {
                    if in_bin[i] || covered[i] != pass {
                        continue;
                    }
                    bin.push(e);
                    if edge_set_graph(g.n(), &bin).is_cochordal() {
                        in_bin[i] = true;
                        grew = true;
                    } else {
                        bin.pop();
                    }
                }
            }
            if !grew {
                break;
            }
        }
        for (i, &b) in in_bin.iter().enumerate() {
            if b {
                covered[i] = true;
            }
        }
        bin.sort_unstable();
        cover.push(bin);
    }
    cover
}

/// Upper bound on the cochordal cover number from the greedy cover.
pub fn cochord_upper(g: &Graph) -> usize {
    cochordal_cover_greedy(g).len()
}

/// Exact cochordal cover number by iterative deepening over bin assignments,
/// degrading to bounds when `budget` search nodes are exhausted.
pub fn cochordal_cover_number(g: &Graph, budget: u64) -> CochordResult {
    let greedy = cochordal_cover_greedy(g);
    let mut upper = greedy.len();
    let mut cover = greedy;
    let mut lower = induced_matching_number(g);
    let mut nodes = 0u64;
    if g.edge_count() == 0 {
        return CochordResult { lower: 0, upper: 0, exact: true, cover, nodes };
    }
    lower = lower.max(1);
    let edges = bfs_edge_order(g);
    while lower < upper {
        let mut search = BinSearch::new(g, &edges, lower, budget.saturating_sub(nodes));
        let outcome = search.run();
        nodes += search.nodes;
        match outcome {
            Some(true) => {
                upper = lower;
                cover = search.solution();
            }
            Some(false) => lower += 1,
            None => return CochordResult { lower, upper, exact: false, cover, nodes },
        }
    }
    CochordResult { lower, upper, exact: true, cover, nodes }
}

/// Edges in breadth-first order so that nearby edges are decided together.
fn bfs_edge_order(g: &Graph) -> Vec<(usize, usize)> {
    let mut order = Vec::new();
    let mut seen = vec![false; g.n()];
    let mut placed = std::collections::HashSet::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in g.nbrs(u) {
                let e = (u.min(v), u.max(v));
                if placed.insert(e) {
                    order.push(e);
                }
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    order
}

struct BinSearch<'a> {
    g: &'a Graph,
    edges: &'a [(usize, usize)],
    position: HashMap<(usize, usize), usize>,
    k: usize,
    budget: u64,
    nodes: u64,
    bins: Vec<Vec<usize>>,
    bin_adj: Vec<Vec<u64>>,
    found: Option<Vec<Vec<usize>>>,
}

impl<'a> BinSearch<'a> {
    fn new(g: &'a Graph, edges: &'a [(usize, usize)], k: usize, budget: u64) -> Self {
        let position = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        BinSearch {
            g,
            edges,
            position,
            k,
            budget,
            nodes: 0,
            bins: Vec::new(),
            bin_adj: Vec::new(),
            found: None,
        }
    }

    /// Some(true) feasible, Some(false) infeasible, None budget exhausted.
    fn run(&mut self) -> Option<bool> {
        self.assign(0)
    }

    fn solution(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out: Vec<Vec<(usize, usize)>> = self
            .found
            .as_ref()
            .unwrap()
            .iter()
            .map(|b| {
                let mut v: Vec<_> = b.iter().map(|&i| self.edges[i]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        out.sort();
        out
    }

    fn assign(&mut self, i: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        if i == self.edges.len() {
            for b in &self.bins {
                let es: Vec<_> = b.iter().map(|&j| self.edges[j]).collect();
                if !edge_set_graph(self.g.n(), &es).is_cochordal() {
                    return Some(false);
                }
            }
            self.found = Some(self.bins.clone());
            return Some(true);
        }
        let (a, b) = self.edges[i];
        let open = self.bins.len();
        let choices = if open < self.k { open + 1 } else { open };
        for bin in 0..choices {
            if bin == open {
                self.bins.push(Vec::new());
                self.bin_adj.push(vec![0; self.g.n()]);
            }
            if self.compatible(bin, a, b, i) {
                self.bins[bin].push(i);
                self.bin_adj[bin][a] |= 1u64 << b;
                self.bin_adj[bin][b] |= 1u64 << a;
                let r = self.assign(i + 1);
                self.bins[bin].pop();
                self.bin_adj[bin][a] &= !(1u64 << b);
                self.bin_adj[bin][b] &= !(1u64 << a);
                match r {
                    Some(false) => {}
                    other => {
                        if bin == open {
                            self.bins.pop();
                            self.bin_adj.pop();
                        }
                        return other;
                    }
                }
            }
            if bin == open {
                self.bins.pop();
                self.bin_adj.pop();
            }
        }
        Some(false)
    }

    /// Whether edge i = ab can join `bin` without creating an induced 2K2 that
    /// no undecided edge could later repair.
    fn compatible(&self, bin: usize, a: usize, b: usize, i: usize) -> bool {
        let adj = &self.bin_adj[bin];
        for &j in &self.bins[bin] {
            let (c, d) = self.edges[j];
            if c == a || c == b || d == a || d == b {
                continue;
            }
            let mut joined = false;
            for (x, y) in [(a, c), (a, d), (b, c), (b, d)] {
                if adj[x] >> y & 1 == 1 {
                    joined = true;
                    break;
                }
                if self.g.has_edge(x, y) && self.position[&(x.min(y), x.max(y))] > i {
                    joined = true;
                    break;
                }
            }
            if !joined {
                return false;
            }
        }
        true
    }
}

/// max over adjacent ordered pairs (x, y) of |N[x] \ N[y]|.
pub fn privacy_degree(g: &Graph) -> Result<usize> {
    if g.edge_count() == 0 {
        return input("privacy degree needs at least one edge");
    }
    let mut best = 0;
    for (x, y) in g.edges() {
        let a = (g.closed_nbrs(x) - g.closed_nbrs(y)).len();
        let b = (g.closed_nbrs(y) - g.closed_nbrs(x)).len();
        best = best.max(a).max(b);
    }
    Ok(best)
}

/// Connected patterns with non-negative weights.
#[derive(Clone, Debug)]
pub struct WeightedPattern {
    pub patterns: Vec<Graph>,
    pub weights: Vec<u64>,
}

impl WeightedPattern {
    pub fn new(patterns: Vec<Graph>, weights: Vec<u64>) -> Result<WeightedPattern> {
        if patterns.len() != weights.len() {
            return input("pattern and weight lists differ in length");
        }
        for p in &patterns {
            if p.n() < 2 || !p.is_connected() {
                return input("patterns must be connected with at least two vertices");
            }
        }
        Ok(WeightedPattern { patterns, weights })
    }
}

/// Vertex sets of `g` inducing a copy of `pattern`.
pub fn induced_copies(g: &Graph, pattern: &Graph) -> Vec<VertexSet> {
    let target = canon(pattern);
    let m = pattern.edge_count();
    subsets_of_size(g.n(), pattern.n())
        .into_iter()
        .map(VertexSet)
        .filter(|&s| {
            let h = g.induced(s);
            h.edge_count() == m && h.is_connected() && canon(&h) == target
        })
        .collect()
}

/// Maximum weight of a family of disjoint induced pattern copies with no
/// edges between distinct parts; 0 when no family exists.
pub fn generalized_im(g: &Graph, wp: &WeightedPattern) -> u64 {
    let mut by_min: Vec<Vec<(u64, u64)>> = vec![Vec::new(); g.n()];
    for (p, &w) in wp.patterns.iter().zip(&wp.weights) {
        for s in induced_copies(g, p) {
            by_min[s.min().unwrap()].push((s.0, w));
        }
    }
    fn best(g: &Graph, avail: u64, by_min: &[Vec<(u64, u64)>], memo: &mut HashMap<u64, u64>) -> u64 {
        if avail == 0 {
            return 0;
        }
        if let Some(&b) = memo.get(&avail) {
            return b;
        }
        let v = avail.trailing_zeros() as usize;
        let mut out = best(g, avail & !(1u64 << v), by_min, memo);
        for &(s, w) in &by_min[v] {
            if s & !avail == 0 {
                let closed = g.closed_nbrs_of_set(VertexSet(s)).0;
                out = out.max(w + best(g, avail & !closed, by_min, memo));
            }
        }
        memo.insert(avail, out);
        out
    }
    best(g, g.vertices().0, &by_min, &mut HashMap::new())
}
