//! Graph rewriting: Lozin transforms, edge subdivisions, contractions,
//! genuine and true pairs with their contractions and expansions, degree
//! reductions and the search for mates.
//!
//! Every operation returns a new graph. Deleted vertices are compacted in
//! ascending order and new vertices are appended at the end in a documented
//! order, so indices in a move sequence are reproducible.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::canon::{canon, CanonicalForm};
use crate::error::{input, Error, Result};
use crate::graph::{Graph, VertexSet, MAX_VERTICES as MAX};
use crate::invariants::induced_matching_number;
use crate::regularity::{subsets_of_size, Engine};

/// Deletes `removed`, compacts the survivors in ascending order and appends
/// one vertex per entry of `added`. Entry `i` of `added` lists surviving
/// neighbors by their old index; `extra` joins appended vertices by position.
fn rebuild(g: &Graph, removed: VertexSet, added: &[VertexSet], extra: &[(usize, usize)]) -> Result<Graph> {
    let keep = g.vertices() - removed;
    let base = keep.len();
    let needed = base + added.len();
    if needed > MAX {
        return Err(Error::Capacity { needed, max: MAX });
    }
    let mut out = g.induced(keep).with_new_vertices(added.len())?;
    for (i, &nb) in added.iter().enumerate() {
        for u in nb - removed {
            out.connect(base + i, shift(removed, u));
        }
    }
    for &(i, j) in extra {
        out.connect(base + i, base + j);
    }
    Ok(out)
}

/// New index of a surviving vertex after `removed` is compacted away.
fn shift(removed: VertexSet, v: usize) -> usize {
    v - (removed.0 & ((1u64 << v) - 1)).count_ones() as usize
}

fn check_distinct(g: &Graph, vs: &[usize]) -> Result<()> {
    for (i, &v) in vs.iter().enumerate() {
        g.check_vertex(v)?;
        if vs[..i].contains(&v) {
            return input(format!("vertex {v} repeated"));
        }
    }
    Ok(())
}

/// Vertex `x` with its neighborhood split into `y` and `z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LozinSpec {
    pub x: usize,
    pub y: VertexSet,
    pub z: VertexSet,
}

impl LozinSpec {
    pub fn validate(&self, g: &Graph) -> Result<()> {
        g.check_vertex(self.x)?;
        if self.y.intersects(self.z) {
            return input(format!("Y={} and Z={} overlap", self.y, self.z));
        }
        if self.y | self.z != g.nbrs(self.x) {
            return input(format!("Y={} and Z={} do not partition N({})={}", self.y, self.z, self.x, g.nbrs(self.x)));
        }
        Ok(())
    }

    pub fn is_nontrivial(&self) -> bool {
        !self.y.is_empty() && !self.z.is_empty()
    }
}

/// Replaces `x` by a path y-a-b-z with y joined to Y and z joined to Z.
/// The new vertices are appended in the order y, a, b, z.
pub fn lozin_transform(g: &Graph, spec: &LozinSpec) -> Result<Graph> {
    spec.validate(g)?;
    let none = VertexSet::EMPTY;
    rebuild(g, VertexSet::singleton(spec.x), &[spec.y, none, none, spec.z], &[(0, 1), (1, 2), (2, 3)])
}

/// Replaces edge xy by a path with `k` internal vertices, appended in order
/// from the x side.
pub fn subdivide_edge(g: &Graph, x: usize, y: usize, k: usize) -> Result<Graph> {
    if !g.has_edge(x, y) {
        return input(format!("({x},{y}) is not an edge"));
    }
    if k == 0 {
        return Ok(g.clone());
    }
    let n = g.n();
    let mut out = g.delete_edge(x, y)?.with_new_vertices(k)?;
    out.connect(x, n);
    for i in 1..k {
        out.connect(n + i - 1, n + i);
    }
    out.connect(n + k - 1, y);
    Ok(out)
}

pub fn double_subdivision(g: &Graph, x: usize, y: usize) -> Result<Graph> {
    subdivide_edge(g, x, y, 2)
}

pub fn triple_subdivision(g: &Graph, x: usize, y: usize) -> Result<Graph> {
    subdivide_edge(g, x, y, 3)
}

/// Double subdivision of every edge, edges taken in `Graph::edges` order.
pub fn double_all(g: &Graph) -> Result<Graph> {
    let edges = g.edges();
    let needed = g.n() + 2 * edges.len();
    if needed > MAX {
        return Err(Error::Capacity { needed, max: MAX });
    }
    let mut out = g.clone();
    for (x, y) in edges {
        out = subdivide_edge(&out, x, y, 2)?;
    }
    Ok(out)
}

fn merge(g: &Graph, x: usize, y: usize, nbrs: VertexSet) -> Result<Graph> {
    rebuild(g, VertexSet::singleton(x).with(y), &[nbrs], &[])
}

/// G/e: x and y replaced by one vertex, appended last, adjacent to N(x) ∪ N(y).
pub fn contract_edge(g: &Graph, x: usize, y: usize) -> Result<Graph> {
    if !g.has_edge(x, y) {
        return input(format!("({x},{y}) is not an edge"));
    }
    merge(g, x, y, g.nbrs(x) | g.nbrs(y))
}

/// Merges non-adjacent u and v into one vertex adjacent to N(u) ∪ N(v).
pub fn fake_contract(g: &Graph, u: usize, v: usize) -> Result<Graph> {
    check_distinct(g, &[u, v])?;
    if g.has_edge(u, v) {
        return input(format!("{u} and {v} are adjacent"));
    }
    merge(g, u, v, g.nbrs(u) | g.nbrs(v))
}

/// Two disjoint vertex sets, meant to be completely joined to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Pairing {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl Pairing {
    pub fn new(a: VertexSet, b: VertexSet) -> Pairing {
        Pairing { a, b }
    }

    /// A pair (a, b) with a in A, b in B that is not an edge, if any.
    pub fn missing_edge(&self, g: &Graph) -> Option<(usize, usize)> {
        for a in self.a {
            if let Some(b) = (self.b - g.nbrs(a)).min() {
                return Some((a, b));
            }
        }
        None
    }
}

/// Vertices u in N(x)∖N(y), v in N(y)∖N(x) with uv not an edge, so that
/// {x, y, u, v} induces 2K2.
pub fn g_pair_violation(g: &Graph, x: usize, y: usize) -> Option<(usize, usize)> {
    Pairing::new(g.nbrs(x) - g.nbrs(y), g.nbrs(y) - g.nbrs(x)).missing_edge(g)
}

fn check_g_pair(g: &Graph, x: usize, y: usize) -> Result<()> {
    check_distinct(g, &[x, y])?;
    if g.has_edge(x, y) {
        return input(format!("{x} and {y} are adjacent"));
    }
    if let Some((u, v)) = g_pair_violation(g, x, y) {
        return input(format!("{{{x},{y}}} is not a g-pair: {{{x},{y},{u},{v}}} induces 2K2"));
    }
    Ok(())
}

pub fn is_g_pair(g: &Graph, x: usize, y: usize) -> bool {
    check_g_pair(g, x, y).is_ok()
}

/// All g-pairs (x, y) with x < y.
pub fn g_pairs(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).filter(|&(x, y)| is_g_pair(g, x, y)).collect()
}

/// Merges a g-pair into one vertex, appended last, adjacent to N(x) ∩ N(y).
pub fn g_contract(g: &Graph, x: usize, y: usize) -> Result<Graph> {
    check_g_pair(g, x, y)?;
    merge(g, x, y, g.nbrs(x) & g.nbrs(y))
}

fn check_pairing(g: &Graph, z: usize, p: &Pairing) -> Result<()> {
    g.check_vertex(z)?;
    g.check_set(p.a | p.b)?;
    if p.a.intersects(p.b) {
        return input(format!("A={} and B={} overlap", p.a, p.b));
    }
    let closed = g.closed_nbrs(z);
    if (p.a | p.b).intersects(closed) {
        return input(format!("A={} and B={} must avoid N[{z}]={}", p.a, p.b, closed));
    }
    if let Some((a, b)) = p.missing_edge(g) {
        return input(format!("[A,B] is not complete: missing edge ({a},{b})"));
    }
    Ok(())
}

/// Replaces z by x_z adjacent to N(z) ∪ A and y_z adjacent to N(z) ∪ B,
/// appended in that order.
pub fn g_expand(g: &Graph, z: usize, p: &Pairing) -> Result<Graph> {
    check_pairing(g, z, p)?;
    let nz = g.nbrs(z);
    rebuild(g, VertexSet::singleton(z), &[nz | p.a, nz | p.b], &[])
}

/// A t-pair x < y together with a common neighbor u with N[u] ⊆ N[x] ∪ N[y].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TPair {
    pub x: usize,
    pub y: usize,
    pub witness: usize,
}

fn is_t_pair_witness(g: &Graph, x: usize, y: usize, u: usize) -> bool {
    g.nbrs(x).contains(u) && g.nbrs(y).contains(u) && g.closed_nbrs(u).is_subset(g.closed_nbrs(x) | g.closed_nbrs(y))
}

/// The smallest witness making {x, y} a t-pair, if it is one.
pub fn t_pair_witness(g: &Graph, x: usize, y: usize) -> Option<usize> {
    if !is_g_pair(g, x, y) {
        return None;
    }
    (g.nbrs(x) & g.nbrs(y)).iter().find(|&u| is_t_pair_witness(g, x, y, u))
}

pub fn t_pairs(g: &Graph) -> Vec<TPair> {
    g_pairs(g)
        .into_iter()
        .filter_map(|(x, y)| t_pair_witness(g, x, y).map(|witness| TPair { x, y, witness }))
        .collect()
}

pub fn t_contract(g: &Graph, x: usize, y: usize) -> Result<Graph> {
    check_g_pair(g, x, y)?;
    match t_pair_witness(g, x, y) {
        Some(_) => g_contract(g, x, y),
        None => input(format!("{{{x},{y}}} has no t-witness")),
    }
}

fn is_t_pairing_witness(g: &Graph, z: usize, p: &Pairing, v: usize) -> bool {
    g.nbrs(z).contains(v) && g.closed_nbrs(v).is_subset(p.a | p.b | g.closed_nbrs(z))
}

/// The smallest v in N(z) with N[v] ⊆ A ∪ B ∪ N[z], if [A,B] is a valid
/// pairing for z.
pub fn t_pairing_witness(g: &Graph, z: usize, p: &Pairing) -> Option<usize> {
    check_pairing(g, z, p).ok()?;
    g.nbrs(z).iter().find(|&v| is_t_pairing_witness(g, z, p, v))
}

pub fn t_expand(g: &Graph, z: usize, p: &Pairing) -> Result<Graph> {
    check_pairing(g, z, p)?;
    match t_pairing_witness(g, z, p) {
        Some(_) => g_expand(g, z, p),
        None => input(format!("no t-witness in N({z}) for A={} B={}", p.a, p.b)),
    }
}

/// One step of a mate sequence. Indices refer to the graph the move is
/// applied to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MateMove {
    Expand { z: usize, pairing: Pairing, witness: usize },
    Contract { x: usize, y: usize, witness: usize },
    Deg2Mate { a: usize, b: usize, c: usize, d: usize },
}

impl MateMove {
    /// Applies the move after checking its witness.
    pub fn apply(&self, g: &Graph) -> Result<Graph> {
        match *self {
            MateMove::Expand { z, pairing, witness } => {
                check_pairing(g, z, &pairing)?;
                if !is_t_pairing_witness(g, z, &pairing, witness) {
                    return input(format!("{witness} is not a t-witness for expanding {z}"));
                }
                g_expand(g, z, &pairing)
            }
            MateMove::Contract { x, y, witness } => {
                check_g_pair(g, x, y)?;
                if !is_t_pair_witness(g, x, y, witness) {
                    return input(format!("{witness} is not a t-witness for {{{x},{y}}}"));
                }
                g_contract(g, x, y)
            }
            MateMove::Deg2Mate { a, b, c, d } => deg2mate(g, a, b, c, d),
        }
    }
}

impl fmt::Display for MateMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MateMove::Expand { z, pairing, witness } => {
                write!(f, "EXPAND {z} A={} B={} witness={witness}", pairing.a, pairing.b)
            }
            MateMove::Contract { x, y, witness } => write!(f, "CONTRACT {x} {y} witness={witness}"),
            MateMove::Deg2Mate { a, b, c, d } => write!(f, "DEG2MATE {a} {b} {c} {d}"),
        }
    }
}

fn parse_set(s: &str) -> Option<VertexSet> {
    let body = s.strip_prefix('{')?.strip_suffix('}')?;
    if body.trim().is_empty() {
        return Some(VertexSet::EMPTY);
    }
    let mut set = VertexSet::EMPTY;
    for t in body.split(',') {
        let v: usize = t.trim().parse().ok()?;
        if v >= MAX {
            return None;
        }
        set = set.with(v);
    }
    Some(set)
}

impl FromStr for MateMove {
    type Err = Error;

    fn from_str(line: &str) -> Result<MateMove> {
        let bad = || Error::Input(format!("malformed move '{line}'"));
        let toks: Vec<&str> = line.split_whitespace().collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        fn tagged<'a>(t: &'a str, tag: &str, line: &str) -> Result<&'a str> {
            t.strip_prefix(tag).ok_or_else(|| Error::Input(format!("malformed move '{line}'")))
        }
        match toks.as_slice() {
            ["EXPAND", z, a, b, w] => Ok(MateMove::Expand {
                z: num(z)?,
                pairing: Pairing::new(
                    parse_set(tagged(a, "A=", line)?).ok_or_else(bad)?,
                    parse_set(tagged(b, "B=", line)?).ok_or_else(bad)?,
                ),
                witness: num(tagged(w, "witness=", line)?)?,
            }),
            ["CONTRACT", x, y, w] => {
                Ok(MateMove::Contract { x: num(x)?, y: num(y)?, witness: num(tagged(w, "witness=", line)?)? })
            }
            ["DEG2MATE", a, b, c, d] => Ok(MateMove::Deg2Mate { a: num(a)?, b: num(b)?, c: num(c)?, d: num(d)? }),
            _ => Err(bad()),
        }
    }
}

/// A sequence of mate moves from a root graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MateTrace {
    pub moves: Vec<MateMove>,
}

impl MateTrace {
    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    /// Applies every move in order, checking each witness.
    pub fn replay(&self, root: &Graph) -> Result<Graph> {
        let mut g = root.clone();
        for (i, m) in self.moves.iter().enumerate() {
            g = m.apply(&g).map_err(|e| Error::Input(format!("move {} ({m}): {e}", i + 1)))?;
        }
        Ok(g)
    }

    /// The same trace with every DEG2MATE replaced by its t-moves.
    pub fn expand_macros(&self, root: &Graph) -> Result<MateTrace> {
        let mut g = root.clone();
        let mut out = Vec::new();
        for m in &self.moves {
            match *m {
                MateMove::Deg2Mate { a, b, c, d } => {
                    let (next, moves) = deg2mate_via_moves(&g, a, b, c, d)?;
                    out.extend(moves);
                    g = next;
                }
                _ => {
                    g = m.apply(&g)?;
                    out.push(m.clone());
                }
            }
        }
        Ok(MateTrace { moves: out })
    }
}

impl fmt::Display for MateTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.moves {
            writeln!(f, "{m}")?;
        }
        Ok(())
    }
}

impl FromStr for MateTrace {
    type Err = Error;

    fn from_str(text: &str) -> Result<MateTrace> {
        let moves = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::parse)
            .collect::<Result<_>>()?;
        Ok(MateTrace { moves })
    }
}

fn check_deg2_path(g: &Graph, a: usize, b: usize, c: usize, d: usize) -> Result<()> {
    check_distinct(g, &[a, b, c, d])?;
    if !(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, d)) {
        return input(format!("{a}-{b}-{c}-{d} is not a path"));
    }
    if g.degree(b) != 2 || g.degree(c) != 2 {
        return input(format!("{b} and {c} must both have degree 2"));
    }
    Ok(())
}

/// The mate of a 4-path a-b-c-d with deg(b) = deg(c) = 2. If ad is an edge
/// the result is G - {a,b,c,d} plus K2; otherwise a and d are merged in
/// G - {b,c} and a K2 is added. The merged vertex comes first, then the K2.
pub fn deg2mate(g: &Graph, a: usize, b: usize, c: usize, d: usize) -> Result<Graph> {
    check_deg2_path(g, a, b, c, d)?;
    let removed = [a, b, c, d].into_iter().collect::<VertexSet>();
    let none = VertexSet::EMPTY;
    if g.has_edge(a, d) {
        rebuild(g, removed, &[none, none], &[(0, 1)])
    } else {
        rebuild(g, removed, &[g.nbrs(a) | g.nbrs(d), none, none], &[(1, 2)])
    }
}

/// Paths a-b-c-d with deg(b) = deg(c) = 2, b < c and a != d.
pub fn deg2_paths(g: &Graph) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for b in (0..g.n()).filter(|&b| g.degree(b) == 2) {
        for c in g.nbrs(b).iter().filter(|&c| c > b && g.degree(c) == 2) {
            let a = g.nbrs(b).without(c).min().unwrap();
            let d = g.nbrs(c).without(b).min().unwrap();
            if a != d {
                out.push((a, b, c, d));
            }
        }
    }
    out
}

/// Tracks vertex identities across moves: original vertices keep their
/// index, new ones get ids from `FRESH` upwards.
struct Labels(Vec<usize>);

const FRESH: usize = 1 << 20;

impl Labels {
    fn at(&self, id: usize) -> usize {
        self.0.iter().position(|&x| x == id).expect("tracked vertex")
    }

    fn update(&mut self, removed: &[usize], fresh: &[usize]) {
        self.0.retain(|x| !removed.contains(x));
        self.0.extend_from_slice(fresh);
    }
}

/// Realizes `deg2mate` as an explicit sequence of t-expansions and
/// t-contractions, applying and checking each one.
pub fn deg2mate_via_moves(g: &Graph, a: usize, b: usize, c: usize, d: usize) -> Result<(Graph, Vec<MateMove>)> {
    check_deg2_path(g, a, b, c, d)?;
    let (xd, yd, w1, w2, w3) = (FRESH, FRESH + 1, FRESH + 2, FRESH + 3, FRESH + 4);
    let mut lab = Labels((0..g.n()).collect());
    let mut moves = Vec::new();
    let mut cur = g.clone();
    let mut step = |cur: &mut Graph, lab: &mut Labels, m: MateMove, removed: &[usize], fresh: &[usize]| -> Result<()> {
        *cur = m.apply(cur)?;
        moves.push(m);
        lab.update(removed, fresh);
        Ok(())
    };
    let adjacent = g.has_edge(a, d);
    let pairing = if adjacent {
        Pairing::new(VertexSet::singleton(b), VertexSet::EMPTY)
    } else {
        Pairing::new(g.nbrs(a) - g.nbrs(d), VertexSet::singleton(a))
    };
    step(&mut cur, &mut lab, MateMove::Expand { z: d, pairing, witness: c }, &[d], &[xd, yd])?;
    let m = MateMove::Contract { x: lab.at(a), y: lab.at(c), witness: lab.at(b) };
    step(&mut cur, &mut lab, m, &[a, c], &[w1])?;
    let m = MateMove::Contract { x: lab.at(b), y: lab.at(yd), witness: lab.at(w1) };
    step(&mut cur, &mut lab, m, &[b, yd], &[w2])?;
    if adjacent {
        let m = MateMove::Contract { x: lab.at(xd), y: lab.at(w2), witness: lab.at(w1) };
        step(&mut cur, &mut lab, m, &[xd, w2], &[w3])?;
    }
    Ok((cur, moves))
}

/// One application of the pendant-path rule: deg(x) = 1, deg(y) = 2,
/// xy and yz edges, z deleted. Indices refer to the graph at that step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeStep {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

/// Applies the pendant-path rule until no instance remains.
pub fn degree_reductions(g: &Graph) -> (Graph, Vec<DegreeStep>) {
    let mut cur = g.clone();
    let mut log = Vec::new();
    'outer: loop {
        for x in (0..cur.n()).filter(|&x| cur.degree(x) == 1) {
            let y = cur.nbrs(x).min().unwrap();
            if cur.degree(y) == 2 {
                let z = cur.nbrs(y).without(x).min().unwrap();
                log.push(DegreeStep { x, y, z });
                cur = cur.induced(cur.vertices().without(z));
                continue 'outer;
            }
        }
        return (cur, log);
    }
}

/// Both sides of the alternative for a pendant vertex x with neighbor y:
/// reg(G) equals reg(G - x) or reg(G - N[y]) + 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegOneReport {
    pub reg: usize,
    pub reg_deletion: usize,
    pub reg_link_plus_one: usize,
}

impl DegOneReport {
    pub fn deletion_branch(&self) -> bool {
        self.reg == self.reg_deletion
    }

    pub fn link_branch(&self) -> bool {
        self.reg == self.reg_link_plus_one
    }
}

pub fn deg_one_diagnostic(engine: &Engine, g: &Graph, x: usize) -> Result<DegOneReport> {
    g.check_vertex(x)?;
    if g.degree(x) != 1 {
        return input(format!("vertex {x} has degree {}, not 1", g.degree(x)));
    }
    let y = g.nbrs(x).min().unwrap();
    Ok(DegOneReport {
        reg: engine.reg(g)?,
        reg_deletion: engine.reg(&g.induced(g.vertices().without(x)))?,
        reg_link_plus_one: engine.reg(&g.induced(g.vertices() - g.closed_nbrs(y)))? + 1,
    })
}

/// Candidate t-pairings for expanding `z`, at most `cap` of them, each with
/// its smallest witness. Candidates use A ∪ B inside N(N(z)) ∖ N[z] and
/// cover N(v) ∖ N[z] for a witness v, smallest A ∪ B first.
pub fn t_expansion_candidates(g: &Graph, z: usize, cap: usize) -> Vec<(Pairing, usize)> {
    let nz = g.nbrs(z);
    if nz.is_empty() || cap == 0 {
        return Vec::new();
    }
    let second = g.nbrs_of_set(nz) - g.closed_nbrs(z);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for v in nz {
        let required = g.nbrs(v) - g.closed_nbrs(z);
        let extras = (second - required).to_vec();
        for k in 0..=extras.len() {
            for pick in subsets_of_size(extras.len(), k) {
                let u = VertexSet(VertexSet(pick).iter().fold(required.0, |m, i| m | 1u64 << extras[i]));
                for p in complete_splits(g, u) {
                    if seen.insert(p) {
                        let w = t_pairing_witness(g, z, &p).expect("constructed pairing has a witness");
                        out.push((p, w));
                        if out.len() >= cap {
                            return out;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Splits of `u` into complete pairings [A, B] with min(u) in A.
fn complete_splits(g: &Graph, u: VertexSet) -> Vec<Pairing> {
    if u.is_empty() {
        return vec![Pairing::new(VertexSet::EMPTY, VertexSet::EMPTY)];
    }
    // non-adjacent vertices must lie on the same side
    let co = g.induced(u).complement();
    let map = u.to_vec();
    let parts: Vec<VertexSet> =
        co.components().into_iter().map(|c| c.iter().map(|i| map[i]).collect()).collect();
    let free = parts.len() - 1;
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << free.min(20)) {
        let mut a = parts[0];
        for (i, &p) in parts[1..].iter().enumerate() {
            if mask >> i & 1 == 1 {
                a = a | p;
            }
        }
        out.push(Pairing::new(a, u - a));
    }
    out
}

/// Limits for `mate_search`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MateBudget {
    /// Maximum number of moves from the root.
    pub depth: usize,
    /// Maximum number of distinct mates visited.
    pub states: usize,
    /// Maximum number of t-expansions tried per (graph, z).
    pub pairings_per_vertex: usize,
    /// Stop as soon as a mate with this induced matching number is found.
    pub target: Option<usize>,
    /// Apply the degree-2 path rewrite as a single move.
    pub macros: bool,
}

impl Default for MateBudget {
    fn default() -> Self {
        MateBudget { depth: 6, states: 20_000, pairings_per_vertex: 200, target: None, macros: true }
    }
}

#[derive(Clone, Debug)]
pub struct MateSearch {
    pub best: Graph,
    pub best_im: usize,
    pub best_form: CanonicalForm,
    pub trace: MateTrace,
    pub visited: usize,
    /// Some limit stopped the search before the reachable space was exhausted.
    pub budget_hit: bool,
}

struct Node {
    graph: Graph,
    depth: usize,
    parent: usize,
    step: Option<MateMove>,
    im: usize,
}

fn children(g: &Graph, budget: &MateBudget) -> Vec<MateMove> {
    let mut out = Vec::new();
    if budget.macros {
        out.extend(deg2_paths(g).into_iter().map(|(a, b, c, d)| MateMove::Deg2Mate { a, b, c, d }));
    }
    out.extend(t_pairs(g).into_iter().map(|t| MateMove::Contract { x: t.x, y: t.y, witness: t.witness }));
    for z in 0..g.n() {
        for (pairing, witness) in t_expansion_candidates(g, z, budget.pairings_per_vertex) {
            out.push(MateMove::Expand { z, pairing, witness });
        }
    }
    out
}

/// Breadth-first search over mates of `g`, returning the one with the
/// largest induced matching number. The value is a lower bound on vim(G).
pub fn mate_search(g: &Graph, budget: &MateBudget) -> Result<MateSearch> {
    if budget.depth == 0 || budget.states == 0 || budget.pairings_per_vertex == 0 {
        return input("mate search budgets must be positive");
    }
    let root_im = induced_matching_number(g);
    let mut nodes = vec![Node { graph: g.clone(), depth: 0, parent: 0, step: None, im: root_im }];
    let mut visited: HashSet<CanonicalForm> = HashSet::from([canon(g)]);
    let mut budget_hit = false;
    let done = |nodes: &[Node]| budget.target.is_some_and(|t| nodes.iter().any(|n| n.im >= t));

    // eager chain of degree-2 rewrites from the root
    let mut frontier = vec![0];
    if budget.macros {
        let mut cur = 0;
        while nodes[cur].depth < budget.depth && visited.len() < budget.states && !done(&nodes) {
            let here = nodes[cur].graph.clone();
            let next = deg2_paths(&here).into_iter().find_map(|(a, b, c, d)| {
                let h = deg2mate(&here, a, b, c, d).ok()?;
                let f = canon(&h);
                (!visited.contains(&f)).then_some((MateMove::Deg2Mate { a, b, c, d }, h, f))
            });
            let Some((m, h, f)) = next else { break };
            visited.insert(f);
            let im = induced_matching_number(&h);
            nodes.push(Node { graph: h, depth: nodes[cur].depth + 1, parent: cur, step: Some(m), im });
            cur = nodes.len() - 1;
            frontier.push(cur);
        }
    }

    let mut queue: VecDeque<usize> = frontier.into_iter().collect();
    'search: while !queue.is_empty() && !done(&nodes) {
        // one round: expand every queued node of the shallowest depth in parallel
        let depth = nodes[*queue.front().unwrap()].depth;
        let mut round = Vec::new();
        while queue.front().is_some_and(|&i| nodes[i].depth == depth) {
            round.push(queue.pop_front().unwrap());
        }
        if depth >= budget.depth {
            budget_hit = true;
            continue;
        }
        let generated: Vec<Vec<(MateMove, Graph, CanonicalForm)>> = round
            .par_iter()
            .map(|&i| {
                children(&nodes[i].graph, budget)
                    .into_iter()
                    .map(|m| {
                        let h = m.apply(&nodes[i].graph).expect("generated move is valid");
                        let f = canon(&h);
                        (m, h, f)
                    })
                    .collect()
            })
            .collect();
        for (&parent, kids) in round.iter().zip(generated) {
            for (m, h, f) in kids {
                if visited.contains(&f) {
                    continue;
                }
                if visited.len() >= budget.states {
                    budget_hit = true;
                    break 'search;
                }
                visited.insert(f);
                let im = induced_matching_number(&h);
                nodes.push(Node { graph: h, depth: depth + 1, parent, step: Some(m), im });
                queue.push_back(nodes.len() - 1);
                if budget.target.is_some_and(|t| im >= t) {
                    break 'search;
                }
            }
        }
    }
    if !queue.is_empty() && !done(&nodes) {
        budget_hit = true;
    }

    let best = (0..nodes.len()).max_by_key(|&i| (nodes[i].im, std::cmp::Reverse(i))).unwrap();
    let mut moves = Vec::new();
    let mut i = best;
    while i != 0 {
        moves.push(nodes[i].step.clone().unwrap());
        i = nodes[i].parent;
    }
    moves.reverse();
    Ok(MateSearch {
        best_form: canon(&nodes[best].graph),
        best: nodes[best].graph.clone(),
        best_im: nodes[best].im,
        trace: MateTrace { moves },
        visited: visited.len(),
        budget_hit,
    })
}

/// Largest induced matching number over the mates found by `mate_search`.
pub fn vim_lower_bound(g: &Graph, budget: &MateBudget) -> Result<usize> {
    Ok(mate_search(g, budget)?.best_im)
}

/// Applies k-1 triple subdivisions, the first on `e` and each later one on
/// the edge between the first two vertices added by the previous step.
pub fn construct_reg_im(seed: &Graph, e: (usize, usize), k: usize) -> Result<Graph> {
    if k == 0 {
        return input("k must be at least 1");
    }
    let (mut x, mut y) = e;
    if !seed.has_edge(x, y) {
        return input(format!("({x},{y}) is not an edge of the seed"));
    }
    let mut g = seed.clone();
    for _ in 1..k {
        let n = g.n();
        g = triple_subdivision(&g, x, y)?;
        (x, y) = (n, n + 1);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;
    use crate::catalog::*;
    use crate::homology::{reduced_homology, PrimeField};
    use crate::invariants::cochordal_cover_number;

    fn reg(g: &Graph) -> usize {
        Engine::shared(PrimeField::gf2()).reg(g).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn lozin_on_cycle() {
        let c5 = cycle(5).unwrap();
        let spec = LozinSpec { x: 0, y: set(&[1]), z: set(&[4]) };
        let l = lozin_transform(&c5, &spec).unwrap();
        assert!(is_isomorphic(&l, &cycle(8).unwrap()));
        assert_eq!(reg(&l), reg(&c5) + 1);
        let bad = LozinSpec { x: 0, y: set(&[1]), z: set(&[2]) };
        assert!(lozin_transform(&c5, &bad).is_err());
        // isolated x gives G - x plus a P4
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let l = lozin_transform(&g, &LozinSpec { x: 2, y: VertexSet::EMPTY, z: VertexSet::EMPTY }).unwrap();
        assert!(is_isomorphic(&l, &disjoint_union(&[path(2).unwrap(), path(4).unwrap()]).unwrap()));
    }

    #[test]
    fn lozin_one_sided_on_c8_is_not_prime() {
        let c8 = cycle(8).unwrap();
        let l = lozin_transform(&c8, &LozinSpec { x: 0, y: c8.nbrs(0), z: VertexSet::EMPTY }).unwrap();
        assert!(!Engine::shared(PrimeField::gf2()).is_prime_graph(&l).unwrap());
    }

    #[test]
    fn subdivisions() {
        let c5 = cycle(5).unwrap();
        let d = double_subdivision(&c5, 0, 1).unwrap();
        assert!(is_isomorphic(&d, &cycle(7).unwrap()));
        assert_eq!(reg(&d), 2);
        let t = triple_subdivision(&c5, 0, 1).unwrap();
        assert!(is_isomorphic(&t, &cycle(8).unwrap()));
        assert_eq!(subdivide_edge(&c5, 0, 1, 0).unwrap(), c5);
        assert!(subdivide_edge(&c5, 0, 2, 1).is_err());
        let p3 = path(3).unwrap();
        let da = double_all(&p3).unwrap();
        assert!(is_isomorphic(&da, &path(7).unwrap()));
        assert_eq!(induced_matching_number(&da), 2);
        assert_eq!(reg(&da), 2);
        assert_eq!(cochordal_cover_number(&da, 1_000_000).value(), Some(2));
    }

    #[test]
    fn contractions() {
        let c4 = cycle(4).unwrap();
        assert!(is_isomorphic(&contract_edge(&c4, 0, 1).unwrap(), &cycle(3).unwrap()));
        assert!(contract_edge(&c4, 0, 2).is_err());
        let f = fake_contract(&c4, 0, 2).unwrap();
        assert!(is_isomorphic(&f, &path(3).unwrap()));
        assert!(fake_contract(&c4, 0, 1).is_err());
    }

    #[test]
    fn genuine_pair_example() {
        // a b c d x y as 0..5
        let h = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 5)]).unwrap();
        assert!(is_g_pair(&h, 4, 5));
        let gc = g_contract(&h, 4, 5).unwrap();
        assert_eq!((reg(&h), reg(&gc)), (2, 1));
        // {0, 5}: 1 in N(0) only, 3 in N(5) only, 1 and 3 non-adjacent
        let err = g_contract(&h, 0, 5).unwrap_err().to_string();
        assert!(err.contains("2K2"), "{err}");
    }

    #[test]
    fn expansion_round_trip() {
        let c6 = cycle(6).unwrap();
        let p = Pairing::new(set(&[2]), set(&[3]));
        let e = g_expand(&c6, 0, &p).unwrap();
        let n = e.n();
        let back = g_contract(&e, n - 2, n - 1).unwrap();
        assert!(is_isomorphic(&back, &c6));
        let bad = Pairing::new(set(&[2]), set(&[4]));
        assert!(g_expand(&c6, 0, &bad).unwrap_err().to_string().contains("missing edge"));
        assert!(g_expand(&c6, 0, &Pairing::new(set(&[1]), VertexSet::EMPTY)).is_err());
    }

    #[test]
    fn c8_chain_by_hand() {
        // vertices 1..8 of the drawing are 0..7 here
        let c8 = cycle(8).unwrap();
        let p = Pairing::new(set(&[2, 4]), set(&[3]));
        assert_eq!(t_pairing_witness(&c8, 0, &p), Some(1));
        let g1 = t_expand(&c8, 0, &p).unwrap();
        assert_eq!(g1.n(), 9);
        let (g, moves) = deg2mate_via_moves(&c8, 3, 2, 1, 0).unwrap();
        assert_eq!(moves.len(), 3);
        assert_eq!(moves[0], MateMove::Expand { z: 0, pairing: p, witness: 1 });
        assert!(is_isomorphic(&g, &deg2mate(&c8, 3, 2, 1, 0).unwrap()));
        assert!(is_isomorphic(&g, &disjoint_union(&[cycle(5).unwrap(), path(2).unwrap()]).unwrap()));
    }

    #[test]
    fn deg2mate_matches_moves_both_cases() {
        // adjacent ends: C4 with a pendant at 0
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]).unwrap();
        let (h, moves) = deg2mate_via_moves(&g, 0, 1, 2, 3).unwrap();
        assert_eq!(moves.len(), 4);
        assert!(is_isomorphic(&h, &deg2mate(&g, 0, 1, 2, 3).unwrap()));
        assert!(is_isomorphic(&h, &disjoint_union(&[Graph::empty(1).unwrap(), path(2).unwrap()]).unwrap()));
        for n in 5..10 {
            let c = cycle(n).unwrap();
            let (h, _) = deg2mate_via_moves(&c, 0, 1, 2, 3).unwrap();
            assert!(is_isomorphic(&h, &deg2mate(&c, 0, 1, 2, 3).unwrap()));
            assert_eq!(reg(&h), reg(&c));
        }
        assert!(deg2mate(&cycle(5).unwrap(), 0, 1, 3, 4).is_err());
    }

    #[test]
    fn t_moves_preserve_regularity() {
        let c8 = cycle(8).unwrap();
        for z in [0, 3] {
            for (p, _) in t_expansion_candidates(&c8, z, 50) {
                let h = t_expand(&c8, z, &p).unwrap();
                assert_eq!(reg(&h), 3, "{p:?}");
            }
        }
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 3), (3, 2), (1, 4)]).unwrap();
        for t in t_pairs(&g) {
            assert_eq!(reg(&t_contract(&g, t.x, t.y).unwrap()), reg(&g));
        }
    }

    #[test]
    fn trace_text_round_trip() {
        let trace = MateTrace {
            moves: vec![
                MateMove::Expand { z: 0, pairing: Pairing::new(set(&[2, 4]), VertexSet::EMPTY), witness: 1 },
                MateMove::Contract { x: 3, y: 7, witness: 2 },
                MateMove::Deg2Mate { a: 0, b: 1, c: 2, d: 3 },
            ],
        };
        let text = trace.to_string();
        assert!(text.contains("EXPAND 0 A={2,4} B={} witness=1"));
        assert_eq!(text.parse::<MateTrace>().unwrap(), trace);
        assert!("EXPAND 0 A={2 B={} witness=1".parse::<MateTrace>().is_err());
    }

    #[test]
    fn mate_search_cycles() {
        for n in 3..=11 {
            let c = cycle(n).unwrap();
            let r = mate_search(&c, &MateBudget { target: Some(reg(&c)), ..Default::default() }).unwrap();
            assert_eq!(r.best_im, (n + 1) / 3, "C{n}");
            let replayed = r.trace.replay(&c).unwrap();
            assert_eq!(canon(&replayed), r.best_form);
            let pure = r.trace.expand_macros(&c).unwrap();
            assert_eq!(canon(&pure.replay(&c).unwrap()), r.best_form);
        }
        // an unguided search never passes reg
        let small = MateBudget { states: 300, ..Default::default() };
        for g in [cycle(6).unwrap(), path(5).unwrap(), complete_bipartite(2, 3).unwrap()] {
            let r = mate_search(&g, &small).unwrap();
            assert!(r.best_im <= reg(&g));
            assert!(r.best_im >= induced_matching_number(&g));
        }
        let m = mate_search(&n_k2(3).unwrap(), &MateBudget { target: Some(3), ..Default::default() }).unwrap();
        assert_eq!(m.best_im, 3);
        assert!(m.trace.is_empty());
    }

    #[test]
    fn degree_reduction_rules() {
        let (h, log) = degree_reductions(&path(4).unwrap());
        assert_eq!(log, vec![DegreeStep { x: 0, y: 1, z: 2 }]);
        assert_eq!((h.n(), h.edge_count()), (3, 1));
        let tail = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 6)]).unwrap();
        let (h, log) = degree_reductions(&tail);
        // the tail removes the cycle vertex 0, then the remaining P4 reduces further
        assert_eq!(log[0], DegreeStep { x: 6, y: 5, z: 0 });
        assert_eq!(reg(&tail.delete_vertex(0).unwrap()), reg(&tail));
        assert_eq!(reg(&h), reg(&tail));
        let c6 = cycle(6).unwrap();
        assert_eq!(degree_reductions(&c6), (c6, vec![]));
    }

    #[test]
    fn deg_one_alternative() {
        let e = Engine::shared(PrimeField::gf2());
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let r = deg_one_diagnostic(&e, &g, 0).unwrap();
        assert!(r.deletion_branch() || r.link_branch());
        assert!(deg_one_diagnostic(&e, &g, 1).is_err());
    }

    #[test]
    fn reg_im_construction() {
        let c5 = cycle(5).unwrap();
        assert_eq!(construct_reg_im(&c5, (0, 1), 1).unwrap(), c5);
        let g = construct_reg_im(&c5, (0, 1), 3).unwrap();
        assert_eq!((reg(&g), induced_matching_number(&g)), (4, 3));
        let p = construct_reg_im(&path(3).unwrap(), (0, 1), 2).unwrap();
        assert_eq!((reg(&p), induced_matching_number(&p)), (2, 2));
        assert!(construct_reg_im(&c5, (0, 2), 2).is_err());
    }

    #[test]
    fn contractible_when_common_neighborhood_empty() {
        // the path 0-1-3-2
        let g = Graph::from_edges(4, &[(0, 1), (2, 3), (1, 3)]).unwrap();
        assert!(is_g_pair(&g, 0, 2));
        assert!((g.nbrs(0) & g.nbrs(2)).is_empty());
        assert!(reduced_homology(&g, PrimeField::gf2()).unwrap().is_zero());
    }
}
