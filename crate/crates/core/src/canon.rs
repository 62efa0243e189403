//! Canonical labeling by partition refinement with individualization and
//! automorphism pruning. Disconnected graphs are handled component-wise and
//! graphs with disconnected complement through the complement.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::graph::Graph;

/// Adjacency rows of the canonical relabeling; equal iff the graphs are isomorphic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm {
    rows: Vec<u64>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Stable 64-bit digest.
    pub fn hash64(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.rows.hash(&mut h);
        h.finish()
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_adj_unchecked(self.rows.clone())
    }
}

/// Canonical labeling `labeling[old] = new` together with the resulting form.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub labeling: Vec<usize>,
    pub form: CanonicalForm,
}

pub fn canonical_form(g: &Graph) -> Canonical {
    let labeling = canonical_labeling(g);
    let form = CanonicalForm { rows: g.relabel(&labeling).adjacency().to_vec() };
    Canonical { labeling, form }
}

/// Shorthand for the form alone.
pub fn canon(g: &Graph) -> CanonicalForm {
    canonical_form(g).form
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canon(a) == canon(b)
}

fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n <= 1 {
        return (0..n).collect();
    }
    let comps = g.components();
    if comps.len() > 1 {
        let mut parts: Vec<(usize, Vec<u64>, Vec<usize>, Vec<usize>)> = comps
            .into_iter()
            .map(|c| {
                let sub = g.induced(c);
                let lab = canonical_labeling(&sub);
                let rows = sub.relabel(&lab).adjacency().to_vec();
                (c.len(), rows, lab, c.to_vec())
            })
            .collect();
        parts.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let mut perm = vec![0; n];
        let mut offset = 0;
        for (size, _, lab, map) in parts {
            for (i, &old) in map.iter().enumerate() {
                perm[old] = offset + lab[i];
            }
            offset += size;
        }
        return perm;
    }
    let co = g.complement();
    if co.components().len() > 1 {
        return canonical_labeling(&co);
    }
    Search::new(g).run()
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u64>, Vec<usize>)>,
    first: Option<(Vec<u64>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        Search { g, best: None, first: None, autos: Vec::new() }
    }

    fn run(mut self) -> Vec<usize> {
        let cells = vec![(0..self.g.n()).collect::<Vec<_>>()];
        self.descend(cells, &mut Vec::new());
        self.best.unwrap().1
    }

    fn refine(&self, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        let adj = self.g.adjacency();
        loop {
            let mut changed = false;
            let mut s = 0;
            while s < cells.len() {
                let w: u64 = cells[s].iter().fold(0, |m, &v| m | 1u64 << v);
                let mut j = 0;
                while j < cells.len() {
                    if cells[j].len() > 1 {
                        let mut keyed: Vec<(u32, usize)> =
                            cells[j].iter().map(|&x| ((adj[x] & w).count_ones(), x)).collect();
                        let first = keyed[0].0;
                        if keyed.iter().any(|k| k.0 != first) {
                            keyed.sort_by_key(|k| k.0);
                            let mut groups: Vec<Vec<usize>> = Vec::new();
                            let mut last = u32::MAX;
                            for (k, x) in keyed {
                                if k != last {
                                    groups.push(Vec::new());
                                    last = k;
                                }
                                groups.last_mut().unwrap().push(x);
                            }
                            let added = groups.len() - 1;
                            cells.splice(j..=j, groups);
                            j += added;
                            changed = true;
                        }
                    }
                    j += 1;
                }
                s += 1;
            }
            if !changed {
                return cells;
            }
        }
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        let cells = self.refine(cells);
        let Some(t) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        let candidates = cells[t].clone();
        for &v in &candidates {
            if !explored.is_empty() && self.same_orbit(prefix, v, &explored) {
                continue;
            }
            let mut next = cells.clone();
            let rest: Vec<usize> = candidates.iter().copied().filter(|&u| u != v).collect();
            next.splice(t..=t, [vec![v], rest]);
            prefix.push(v);
            self.descend(next, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    /// Whether `v` shares an orbit with an explored vertex under the known
    /// automorphisms that fix `prefix` pointwise.
    fn same_orbit(&self, prefix: &[usize], v: usize, explored: &[usize]) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for a in &self.autos {
            if prefix.iter().all(|&u| a[u] == u) {
                any = true;
                for x in 0..n {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, a[x]));
                    if rx != ry {
                        parent[rx] = ry;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&w| find(&mut parent, w) == rv)
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let n = self.g.n();
        let mut perm = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            perm[c[0]] = i;
        }
        let rows = self.g.relabel(&perm).adjacency().to_vec();
        for reference in [&self.first, &self.best].into_iter().flatten() {
            if reference.0 == rows {
                // perm and reference.1 give the same graph, so their quotient is an automorphism
                let mut inv = vec![0; n];
                for (v, &p) in reference.1.iter().enumerate() {
                    inv[p] = v;
                }
                let auto: Vec<usize> = (0..n).map(|v| inv[perm[v]]).collect();
                if auto.iter().enumerate().any(|(i, &a)| i != a) {
                    self.autos.push(auto);
                }
                break;
            }
        }
        if self.first.is_none() {
            self.first = Some((rows.clone(), perm.clone()));
        }
        if self.best.as_ref().map_or(true, |b| rows > b.0) {
            self.best = Some((rows, perm));
        }
    }
}

/// Canonical forms of all graphs in the slice, deduplicated, in first-seen order.
pub fn dedupe(graphs: impl IntoIterator<Item = Graph>) -> Vec<Graph> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for g in graphs {
        let f = canon(&g);
        if seen.insert(f.clone()) {
            out.push(f.to_graph());
        }
    }
    out
}

/// One representative (the smallest index) of each vertex orbit under the
/// automorphism group.
pub fn vertex_orbit_representatives(g: &Graph) -> Vec<usize> {
    let mut seen: Vec<Vec<u64>> = Vec::new();
    let mut reps = Vec::new();
    for v in 0..g.n() {
        let mut search = Search::new(g);
        let rest: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
        let cells = if rest.is_empty() { vec![vec![v]] } else { vec![vec![v], rest] };
        search.descend(cells, &mut vec![v]);
        let rows = search.best.unwrap().0;
        if !seen.contains(&rows) {
            seen.push(rows);
            reps.push(v);
        }
    }
    reps
}
