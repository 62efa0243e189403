//! Simple graphs on at most 64 vertices stored as per-vertex neighbor bit sets.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use crate::error::{input, Error, Result};

pub const MAX_VERTICES: usize = 64;

/// A set of vertex indices packed into one machine word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// The set {0, .., n-1}.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros() as usize)
        }
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = 0u64;
        for v in iter {
            assert!(v < 64, "vertex {v} out of range");
            s |= 1u64 << v;
        }
        VertexSet(s)
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> VertexSet {
        VertexSet(!self.0)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Open and closed domination pairs of a graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DominatedPairs {
    /// Ordered pairs (x, y), x != y, with N(x) a subset of N(y).
    pub open: Vec<(usize, usize)>,
    /// Ordered pairs (x, y), x != y, with N[x] a subset of N[y].
    pub closed: Vec<(usize, usize)>,
}

/// Immutable simple graph. `adj[v]` holds the open neighborhood of `v`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::Capacity { needed: n, max: MAX_VERTICES })
    } else {
        Ok(())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        check_capacity(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return input(format!("edge ({u},{v}) out of range for n={n}"));
            }
            if u == v {
                return input(format!("loop at vertex {u}"));
            }
            g.adj[u] |= 1u64 << v;
            g.adj[v] |= 1u64 << u;
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency words, validating symmetry and range.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Graph> {
        let n = adj.len();
        check_capacity(n)?;
        let full = VertexSet::full(n).0;
        for (v, &row) in adj.iter().enumerate() {
            if row & !full != 0 {
                return input(format!("vertex {v} has neighbors out of range"));
            }
            if row >> v & 1 == 1 {
                return input(format!("loop at vertex {v}"));
            }
            for u in VertexSet(row) {
                if adj[u] >> v & 1 == 0 {
                    return input(format!("asymmetric adjacency between {u} and {v}"));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    pub(crate) fn from_adj_unchecked(adj: Vec<u64>) -> Graph {
        debug_assert!(adj.len() <= MAX_VERTICES);
        Graph { n: adj.len(), adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Open neighborhood N(v).
    pub fn nbrs(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// Closed neighborhood N[v].
    pub fn closed_nbrs(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v] | 1u64 << v)
    }

    /// Union of the open neighborhoods of the vertices of `s`.
    pub fn nbrs_of_set(&self, s: VertexSet) -> VertexSet {
        s.iter().fold(VertexSet::EMPTY, |acc, v| acc | self.nbrs(v))
    }

    /// N[S] = S together with all neighbors of S.
    pub fn closed_nbrs_of_set(&self, s: VertexSet) -> VertexSet {
        self.nbrs_of_set(s) | s
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges (u, v) with u < v in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in VertexSet(self.adj[u] & !((2u64 << u).wrapping_sub(1))) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            input(format!("vertex {v} out of range for n={}", self.n))
        } else {
            Ok(())
        }
    }

    pub fn check_set(&self, s: VertexSet) -> Result<()> {
        if !s.is_subset(self.vertices()) {
            input(format!("vertex set {s} not contained in 0..{}", self.n))
        } else {
            Ok(())
        }
    }

    /// G[S] relabeled to 0..|S|-1 in ascending order; `map[new] = old`.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(s)?;
        let map = s.to_vec();
        Ok((self.induced(s), map))
    }

    /// G[S] without range checks.
    pub(crate) fn induced(&self, s: VertexSet) -> Graph {
        let map = s.to_vec();
        let mut adj = Vec::with_capacity(map.len());
        for &old in &map {
            adj.push(compress(self.adj[old] & s.0, s.0));
        }
        Graph { n: map.len(), adj }
    }

    /// G - U with order-preserving compaction; `map[new] = old`.
    pub fn delete_vertices(&self, u: VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(u)?;
        self.induced_subgraph(self.vertices() - u)
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        Ok(self.induced(self.vertices().without(v)))
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph> {
        if !self.has_edge(u, v) {
            return input(format!("({u},{v}) is not an edge"));
        }
        let mut g = self.clone();
        g.adj[u] &= !(1u64 << v);
        g.adj[v] &= !(1u64 << u);
        Ok(g)
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return input(format!("loop at vertex {u}"));
        }
        if self.has_edge(u, v) {
            return input(format!("({u},{v}) is already an edge"));
        }
        let mut g = self.clone();
        g.adj[u] |= 1u64 << v;
        g.adj[v] |= 1u64 << u;
        Ok(g)
    }

    /// Appends `k` isolated vertices.
    pub fn with_new_vertices(&self, k: usize) -> Result<Graph> {
        check_capacity(self.n + k)?;
        let mut g = self.clone();
        g.n += k;
        g.adj.resize(g.n, 0);
        Ok(g)
    }

    pub(crate) fn connect(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            let mut row = 0u64;
            for u in self.nbrs(v) {
                row |= 1u64 << perm[u];
            }
            adj[perm[v]] = row;
        }
        Graph { n: self.n, adj }
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertices().0;
        let adj = (0..self.n).map(|v| full & !self.adj[v] & !(1u64 << v)).collect();
        Graph { n: self.n, adj }
    }

    /// Connected components of the subgraph induced on `within`.
    pub fn components_within(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut left = within.0;
        let mut out = Vec::new();
        while left != 0 {
            let start = left & left.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let mut next = 0u64;
                for v in VertexSet(frontier) {
                    next |= self.adj[v];
                }
                next &= within.0 & !comp;
                comp |= next;
                frontier = next;
            }
            out.push(VertexSet(comp));
            left &= !comp;
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    /// Connected with at least one vertex.
    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }

    /// Connected, at least three vertices, and no cut vertex.
    pub fn is_biconnected(&self) -> bool {
        if self.n < 3 || !self.is_connected() {
            return false;
        }
        (0..self.n).all(|v| self.components_within(self.vertices().without(v)).len() == 1)
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        (0..self.n).filter(|&v| self.adj[v] == 0).collect()
    }

    /// BFS distance, `None` when disconnected.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        let mut seen = 1u64 << u;
        let mut frontier = seen;
        let mut d = 0;
        loop {
            if frontier >> v & 1 == 1 {
                return Some(d);
            }
            let mut next = 0u64;
            for w in VertexSet(frontier) {
                next |= self.adj[w];
            }
            next &= !seen;
            if next == 0 {
                return None;
            }
            seen |= next;
            frontier = next;
            d += 1;
        }
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// A proper 2-coloring as the set of color-0 vertices.
    pub fn bipartition(&self) -> Option<VertexSet> {
        let mut side = 0u64;
        for comp in self.components() {
            let start = comp.min().unwrap();
            let mut color0 = 1u64 << start;
            let mut color1 = 0u64;
            let mut frontier = color0;
            let mut parity = 0;
            let mut seen = color0;
            while frontier != 0 {
                let mut next = 0u64;
                for w in VertexSet(frontier) {
                    next |= self.adj[w];
                }
                next &= !seen;
                seen |= next;
                if parity == 0 {
                    color1 |= next;
                } else {
                    color0 |= next;
                }
                parity ^= 1;
                frontier = next;
            }
            for v in VertexSet(color0) {
                if self.adj[v] & color0 != 0 {
                    return None;
                }
            }
            for v in VertexSet(color1) {
                if self.adj[v] & color1 != 0 {
                    return None;
                }
            }
            side |= color0;
        }
        Some(VertexSet(side))
    }

    /// Length of a shortest cycle, `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for s in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for w in self.nbrs(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        if best.map_or(true, |b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    /// Size of a largest clique.
    pub fn clique_number(&self) -> usize {
        fn grow(g: &Graph, cand: u64, size: usize, best: &mut usize) {
            if cand == 0 {
                *best = (*best).max(size);
                return;
            }
            if size + (cand.count_ones() as usize) <= *best {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            grow(g, cand & g.adj[v], size + 1, best);
            grow(g, cand & !(1u64 << v), size, best);
        }
        let mut best = 0;
        grow(self, self.vertices().0, 0, &mut best);
        best
    }

    /// Independence number of G[within].
    pub fn independence_number_within(&self, within: VertexSet) -> usize {
        fn alpha(g: &Graph, p: u64, size: usize, best: &mut usize) {
            if p == 0 {
                *best = (*best).max(size);
                return;
            }
            if size + (p.count_ones() as usize) <= *best {
                return;
            }
            let mut branch = usize::MAX;
            let mut branch_deg = 0;
            for v in VertexSet(p) {
                let d = (g.adj[v] & p).count_ones();
                if d <= 1 {
                    // a vertex of degree <= 1 lies in some maximum independent set
                    alpha(g, p & !(g.adj[v] | 1u64 << v), size + 1, best);
                    return;
                }
                if branch == usize::MAX || d > branch_deg {
                    branch = v;
                    branch_deg = d;
                }
            }
            let v = branch;
            alpha(g, p & !(g.adj[v] | 1u64 << v), size + 1, best);
            alpha(g, p & !(1u64 << v), size, best);
        }
        let mut best = 0;
        alpha(self, within.0, 0, &mut best);
        best
    }

    pub fn independence_number(&self) -> usize {
        self.independence_number_within(self.vertices())
    }

    /// No induced K_{1,3}.
    pub fn is_claw_free(&self) -> bool {
        for v in 0..self.n {
            let nb = self.nbrs(v);
            for a in nb {
                for b in VertexSet(nb.0 & !self.adj[a]).iter().filter(|&b| b > a) {
                    if nb.0 & !self.adj[a] & !self.adj[b] & !((2u64 << b).wrapping_sub(1)) != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// No two edges whose four endpoints induce exactly those two edges.
    pub fn is_2k2_free(&self) -> bool {
        let edges = self.edges();
        for (i, &(a, b)) in edges.iter().enumerate() {
            let nab = self.adj[a] | self.adj[b] | 1u64 << a | 1u64 << b;
            for &(c, d) in &edges[i + 1..] {
                if nab >> c & 1 == 0 && nab >> d & 1 == 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Maximum cardinality search order (first visited first).
    fn mcs_order(&self) -> Vec<usize> {
        let mut weight = vec![0usize; self.n];
        let mut numbered = 0u64;
        let mut order = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let v = (0..self.n)
                .filter(|&v| numbered >> v & 1 == 0)
                .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
                .unwrap();
            order.push(v);
            numbered |= 1u64 << v;
            for u in VertexSet(self.adj[v] & !numbered) {
                weight[u] += 1;
            }
        }
        order
    }

    /// Chordality via maximum cardinality search and a perfect elimination check.
    pub fn is_chordal(&self) -> bool {
        // reverse MCS order is a perfect elimination ordering iff the graph is chordal
        let order = self.mcs_order();
        let mut earlier = 0u64;
        for &v in &order {
            let prior = self.adj[v] & earlier;
            for u in VertexSet(prior) {
                if prior & !(1u64 << u) & !self.adj[u] != 0 {
                    return false;
                }
            }
            earlier |= 1u64 << v;
        }
        true
    }

    pub fn is_cochordal(&self) -> bool {
        self.complement().is_chordal()
    }

    /// Exact for n <= 20, `None` beyond.
    pub fn is_weakly_chordal(&self) -> Option<bool> {
        if self.n > 20 {
            return None;
        }
        Some(!self.has_long_induced_cycle() && !self.complement().has_long_induced_cycle())
    }

    /// Whether some induced cycle has length at least 5.
    fn has_long_induced_cycle(&self) -> bool {
        let n = self.n;
        if n < 5 {
            return false;
        }
        let limit = 1u64 << n;
        let mut s = 0u64;
        while s < limit {
            if s.count_ones() >= 5 && self.is_induced_cycle(VertexSet(s)) {
                return true;
            }
            s += 1;
        }
        false
    }

    fn is_induced_cycle(&self, s: VertexSet) -> bool {
        s.iter().all(|v| (self.adj[v] & s.0).count_ones() == 2) && self.components_within(s).len() == 1
    }

    pub fn dominated_pairs(&self) -> DominatedPairs {
        let mut out = DominatedPairs::default();
        for x in 0..self.n {
            for y in 0..self.n {
                if x == y {
                    continue;
                }
                if self.adj[x] & !self.adj[y] == 0 {
                    out.open.push((x, y));
                }
                let cx = self.adj[x] | 1u64 << x;
                let cy = self.adj[y] | 1u64 << y;
                if cx & !cy == 0 {
                    out.closed.push((x, y));
                }
            }
        }
        out
    }

    /// Disjoint union, vertices of `other` appended after those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.with_new_vertices(other.n)?;
        for v in 0..other.n {
            g.adj[self.n + v] = other.adj[v] << self.n;
        }
        Ok(g)
    }
}

/// Packs the bits of `x` selected by `mask` into the low bits.
pub(crate) fn compress(x: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    let mut i = 0;
    while m != 0 {
        let b = m.trailing_zeros();
        if x >> b & 1 == 1 {
            out |= 1u64 << i;
        }
        i += 1;
        m &= m - 1;
    }
    out
}
