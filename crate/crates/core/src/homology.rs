//! Reduced homology of independence complexes over prime fields.

use std::collections::HashMap;

use dashmap::DashMap;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{input, Error, Result};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_FACE_BUDGET: usize = 5_000_000;

/// Coefficient field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<PrimeField> {
        if !(2..1 << 31).contains(&p) {
            return input(format!("field characteristic {p} outside 2..2^31"));
        }
        let mut d = 2u64;
        while d * d <= p as u64 {
            if p as u64 % d == 0 {
                return input(format!("{p} is not prime"));
            }
            d += 1;
        }
        Ok(PrimeField { p })
    }

    pub fn gf2() -> PrimeField {
        PrimeField { p: 2 }
    }

    pub fn gf3() -> PrimeField {
        PrimeField { p: 3 }
    }

    pub fn p(self) -> u32 {
        self.p
    }

    fn mul(self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.p as u64) as u32
    }

    fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(self, a: u32) -> u32 {
        // Fermat: a^(p-2)
        let mut result = 1u64;
        let mut base = a as u64 % self.p as u64;
        let mut e = self.p as u64 - 2;
        let m = self.p as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        result as u32
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField::gf2()
    }
}

/// Independent sets of a graph grouped by cardinality; dimension d holds sets of size d+1.
/// The empty face is implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedComplex {
    pub faces_by_dim: Vec<Vec<VertexSet>>,
}

impl RankedComplex {
    /// Number of nonempty faces.
    pub fn face_count(&self) -> usize {
        self.faces_by_dim.iter().map(Vec::len).sum()
    }

    /// Dimension, -1 for the complex {empty set}.
    pub fn dim(&self) -> isize {
        self.faces_by_dim.len() as isize - 1
    }

    /// Reduced Euler characteristic from face counts, the empty face included.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        let mut chi = -1i64;
        for (d, faces) in self.faces_by_dim.iter().enumerate() {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            chi += sign * faces.len() as i64;
        }
        chi
    }
}

/// Reduced Betti numbers indexed from degree -1; trailing zeros are dropped,
/// so a contractible (acyclic) complex has an empty list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct HomologyProfile {
    betti: Vec<u64>,
}

impl HomologyProfile {
    pub fn from_betti(mut betti: Vec<u64>) -> HomologyProfile {
        while betti.last() == Some(&0) {
            betti.pop();
        }
        HomologyProfile { betti }
    }

    /// The profile of {empty set}.
    pub fn void() -> HomologyProfile {
        HomologyProfile { betti: vec![1] }
    }

    pub fn zero() -> HomologyProfile {
        HomologyProfile { betti: Vec::new() }
    }

    /// b~_d for d >= -1.
    pub fn get(&self, d: isize) -> u64 {
        if d < -1 {
            return 0;
        }
        self.betti.get((d + 1) as usize).copied().unwrap_or(0)
    }

    /// Entries b~_{-1}, b~_0, ... up to the top nonzero degree.
    pub fn betti(&self) -> &[u64] {
        &self.betti
    }

    pub fn is_zero(&self) -> bool {
        self.betti.is_empty()
    }

    /// Highest degree with nonzero homology.
    pub fn top_degree(&self) -> Option<isize> {
        if self.betti.is_empty() {
            None
        } else {
            Some(self.betti.len() as isize - 2)
        }
    }

    /// Degrees with nonzero homology.
    pub fn nonzero_degrees(&self) -> impl Iterator<Item = isize> + '_ {
        self.betti.iter().enumerate().filter(|(_, &b)| b != 0).map(|(i, _)| i as isize - 1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum()
    }

    /// Homology of the join of two complexes (Kunneth over a field).
    pub fn join(&self, other: &HomologyProfile) -> HomologyProfile {
        if self.is_zero() || other.is_zero() {
            return HomologyProfile::zero();
        }
        let mut out = vec![0u64; self.betti.len() + other.betti.len() - 1];
        for (a, &x) in self.betti.iter().enumerate() {
            for (b, &y) in other.betti.iter().enumerate() {
                out[a + b] += x * y;
            }
        }
        HomologyProfile::from_betti(out)
    }
}

pub fn independence_complex(g: &Graph) -> Result<RankedComplex> {
    independence_complex_budgeted(g, DEFAULT_FACE_BUDGET)
}

pub fn independence_complex_budgeted(g: &Graph, budget: usize) -> Result<RankedComplex> {
    let mut faces: Vec<Vec<VertexSet>> = Vec::new();
    let mut count = 0usize;
    fn grow(
        adj: &[u64],
        face: u64,
        size: usize,
        cand: u64,
        faces: &mut Vec<Vec<VertexSet>>,
        count: &mut usize,
        budget: usize,
    ) -> Result<()> {
        let mut c = cand;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            let f = face | 1u64 << v;
            *count += 1;
            if *count > budget {
                return Err(Error::Resource(format!("independence complex exceeds {budget} faces")));
            }
            if faces.len() <= size {
                faces.push(Vec::new());
            }
            faces[size].push(VertexSet(f));
            let higher = !((2u64 << v).wrapping_sub(1));
            grow(adj, f, size + 1, cand & higher & !adj[v], faces, count, budget)?;
        }
        Ok(())
    }
    grow(g.adjacency(), 0, 0, g.vertices().0, &mut faces, &mut count, budget)?;
    for dim in &mut faces {
        dim.sort_unstable();
    }
    Ok(RankedComplex { faces_by_dim: faces })
}

/// Outcome of the fold reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    /// The reduced graph, relabeled in ascending order of surviving vertices.
    pub graph: Graph,
    /// Surviving original vertices.
    pub kept: VertexSet,
    /// Deleted vertices in deletion order, as (deleted v, dominated u) with N(u) inside N(v).
    pub log: Vec<(usize, usize)>,
    /// An isolated vertex remains, so the complex is a cone.
    pub contractible: bool,
}

/// Repeatedly deletes a vertex v having N(u) inside N(v) for some other non-isolated u.
pub fn reduce_complex(g: &Graph) -> Reduction {
    let mut log = Vec::new();
    let (kept, contractible) = fold_mask(g.adjacency(), g.vertices().0, Some(&mut log));
    Reduction { graph: g.induced(VertexSet(kept)), kept: VertexSet(kept), log, contractible }
}

/// Fold reduction restricted to `alive`. Returns the surviving mask and
/// whether an isolated vertex (cone point) was found.
pub(crate) fn fold_mask(adj: &[u64], mut alive: u64, mut log: Option<&mut Vec<(usize, usize)>>) -> (u64, bool) {
    'outer: loop {
        for v in VertexSet(alive) {
            if adj[v] & alive == 0 {
                return (alive, true);
            }
        }
        for v in VertexSet(alive) {
            let nv = adj[v] & alive;
            // a dominated u lies at distance two from v
            let mut second = 0u64;
            for w in VertexSet(nv) {
                second |= adj[w];
            }
            second &= alive & !(1u64 << v);
            for u in VertexSet(second) {
                if adj[u] & alive & !nv == 0 {
                    alive &= !(1u64 << v);
                    if let Some(l) = log.as_deref_mut() {
                        l.push((v, u));
                    }
                    continue 'outer;
                }
            }
        }
        return (alive, false);
    }
}

/// Options for a single homology computation.
#[derive(Clone, Copy, Debug)]
pub struct HomologyOptions {
    pub fold: bool,
    pub face_budget: usize,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions { fold: true, face_budget: DEFAULT_FACE_BUDGET }
    }
}

pub fn reduced_homology(g: &Graph, f: PrimeField) -> Result<HomologyProfile> {
    reduced_homology_with(g, f, HomologyOptions::default())
}

pub fn reduced_homology_with(g: &Graph, f: PrimeField, opts: HomologyOptions) -> Result<HomologyProfile> {
    if !opts.fold {
        return complex_homology(&independence_complex_budgeted(g, opts.face_budget)?, f);
    }
    let (kept, cone) = fold_mask(g.adjacency(), g.vertices().0, None);
    if cone {
        return Ok(HomologyProfile::zero());
    }
    complex_homology(&independence_complex_budgeted(&g.induced(VertexSet(kept)), opts.face_budget)?, f)
}

/// Reduced homology of a ranked complex, checked against its Euler characteristic.
pub fn complex_homology(c: &RankedComplex, f: PrimeField) -> Result<HomologyProfile> {
    let top = c.faces_by_dim.len();
    // rank[d] = rank of the boundary map out of dimension d, for d = 0..top-1
    let mut rank = vec![0usize; top + 1];
    let mut cleared: Vec<bool> = Vec::new();
    for d in (0..top).rev() {
        let faces = &c.faces_by_dim[d];
        let skip = std::mem::take(&mut cleared);
        if d == 0 {
            rank[0] = usize::from(!faces.is_empty());
            break;
        }
        let lower = &c.faces_by_dim[d - 1];
        let index: HashMap<u64, u32> = lower.iter().enumerate().map(|(i, s)| (s.0, i as u32)).collect();
        let (r, lows) = boundary_rank(faces, &index, lower.len(), &skip, f);
        rank[d] = r;
        let mut next = vec![false; lower.len()];
        for l in lows {
            next[l as usize] = true;
        }
        cleared = next;
    }
    let mut betti = Vec::with_capacity(top + 1);
    // degree -1: one empty face, hit by the boundary of the vertices
    betti.push(1 - rank[0] as u64);
    for d in 0..top {
        let fd = c.faces_by_dim[d].len();
        betti.push((fd - rank[d] - rank[d + 1]) as u64);
    }
    let profile = HomologyProfile::from_betti(betti);
    assert_eq!(
        profile.euler_characteristic(),
        c.reduced_euler_characteristic(),
        "Euler characteristic mismatch"
    );
    Ok(profile)
}

type SparseCol = Vec<(u32, u32)>;

/// Rank of the boundary map on `faces` (all of one dimension >= 1) by column
/// reduction, skipping columns known to be dependent. Returns the rank and the
/// pivot rows.
fn boundary_rank(
    faces: &[VertexSet],
    index: &HashMap<u64, u32>,
    rows: usize,
    skip: &[bool],
    f: PrimeField,
) -> (usize, Vec<u32>) {
    let mut pivots: Vec<Option<SparseCol>> = vec![None; rows];
    let mut lows = Vec::new();
    let order = (0..faces.len()).filter(|&i| !skip.get(i).copied().unwrap_or(false));
    let mut scratch: SparseCol = Vec::new();
    for i in order {
        let s = faces[i];
        let mut col: SparseCol = Vec::with_capacity(s.len());
        for (k, v) in s.iter().enumerate() {
            let row = index[&(s.0 & !(1u64 << v))];
            let c = if k % 2 == 0 { 1 } else { f.neg(1) };
            col.push((row, c));
        }
        col.sort_unstable_by_key(|e| e.0);
        while let Some(&(low, c)) = col.last() {
            match &pivots[low as usize] {
                Some(p) => {
                    // pivot columns are normalized to have 1 at their low row
                    let factor = f.neg(c);
                    axpy(&col, p, factor, f, &mut scratch);
                    std::mem::swap(&mut col, &mut scratch);
                }
                None => {
                    let inv = f.inv(c);
                    for e in col.iter_mut() {
                        e.1 = f.mul(e.1, inv);
                    }
                    pivots[low as usize] = Some(col);
                    lows.push(low);
                    break;
                }
            }
        }
    }
    (lows.len(), lows)
}

/// out = a + factor * b over GF(p), sorted sparse columns.
fn axpy(a: &[(u32, u32)], b: &[(u32, u32)], factor: u32, f: PrimeField, out: &mut SparseCol) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    let p = f.p;
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, f.mul(b[j].1, factor)));
            j += 1;
        } else {
            let v = ((a[i].1 as u64 + f.mul(b[j].1, factor) as u64) % p as u64) as u32;
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
}

/// Concurrent memo of homology profiles keyed by canonical form of connected,
/// fold-reduced graphs.
#[derive(Default)]
pub struct HomologyCache {
    map: DashMap<CanonicalForm, HomologyProfile>,
}

impl HomologyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// Homology of Ind(G[mask]) using fold reduction, splitting into components
/// (the complex of a disjoint union is the join) and memoizing per component.
pub(crate) fn cached_profile(
    g: &Graph,
    mask: VertexSet,
    f: PrimeField,
    cache: &HomologyCache,
    budget: usize,
) -> Result<HomologyProfile> {
    let (kept, cone) = fold_mask(g.adjacency(), mask.0, None);
    if cone {
        return Ok(HomologyProfile::zero());
    }
    let mut profile = HomologyProfile::void();
    for comp in g.components_within(VertexSet(kept)) {
        let part = if comp.len() == 2 {
            // a single edge: two points
            HomologyProfile::from_betti(vec![0, 1])
        } else {
            let sub = g.induced(comp);
            let form = canonical_form(&sub).form;
            if let Some(hit) = cache.map.get(&form) {
                hit.clone()
            } else {
                let p = complex_homology(&independence_complex_budgeted(&form.to_graph(), budget)?, f)?;
                cache.map.insert(form, p.clone());
                p
            }
        };
        profile = profile.join(&part);
        if profile.is_zero() {
            break;
        }
    }
    Ok(profile)
}

/// Whether some vertex is isolated in G - N[e]; returns such a witness.
pub fn is_isolating_edge(g: &Graph, x: usize, y: usize) -> Result<Option<usize>> {
    if !g.has_edge(x, y) {
        return input(format!("({x},{y}) is not an edge"));
    }
    Ok(isolating_witness(g, x, y))
}

fn isolating_witness(g: &Graph, x: usize, y: usize) -> Option<usize> {
    let rest = g.vertices() - g.closed_nbrs(x) - g.closed_nbrs(y);
    rest.iter().find(|&w| !g.nbrs(w).intersects(rest))
}

/// Deletes the edge xy if present, otherwise adds it; the edge must be
/// isolating in the graph that contains it. Returns the new graph and the witness.
pub fn isolating_edge_toggle(g: &Graph, x: usize, y: usize) -> Result<(Graph, usize)> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    let present = g.has_edge(x, y);
    let with_edge = if present { g.clone() } else { g.add_edge(x, y)? };
    let toggled = if present { g.delete_edge(x, y)? } else { with_edge.clone() };
    match isolating_witness(&with_edge, x, y) {
        Some(w) => Ok((toggled, w)),
        None => input(format!("edge ({x},{y}) is not isolating")),
    }
}
