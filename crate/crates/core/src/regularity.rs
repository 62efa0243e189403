//! Regularity through the Hochster formula, graded Betti numbers, prime
//! vertices and prime graphs.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use dashmap::DashMap;
use rayon::prelude::*;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::homology::{cached_profile, HomologyCache, HomologyProfile, PrimeField, DEFAULT_FACE_BUDGET};
use crate::invariants::induced_matching;

pub const DEFAULT_HOCHSTER_CAP: usize = 18;

/// reg(G) with a subset S whose complex has nonzero homology in degree value-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityCertificate {
    pub value: usize,
    pub witness_subset: VertexSet,
    pub witness_degree: usize,
    pub field: PrimeField,
}

/// Graded Betti numbers of R/I_G.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, usize), u64>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// max{j - i : beta_{i,j} != 0}.
    pub fn regularity(&self) -> usize {
        self.entries.iter().filter(|(_, &b)| b != 0).map(|(&(i, j), _)| j - i).max().unwrap_or(0)
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.iter().filter(|(_, &b)| b != 0).map(|(&(i, _), _)| i).max().unwrap_or(0)
    }
}

/// One row of the Mayer-Vietoris check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvRow {
    pub vertex: usize,
    pub reg_deletion: usize,
    /// reg(G - N[v]) + 1
    pub reg_link_plus_one: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvReport {
    pub reg: usize,
    pub rows: Vec<MvRow>,
    /// reg(G) <= max of the two branches at every vertex.
    pub bound_holds: bool,
    /// reg(G) equals one of the two branches at every vertex.
    pub equality_holds: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct EngineConfig {
    pub cap: usize,
    pub face_budget: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { cap: DEFAULT_HOCHSTER_CAP, face_budget: DEFAULT_FACE_BUDGET }
    }
}

/// Regularity engine for one field, holding concurrent memo tables.
pub struct Engine {
    field: PrimeField,
    config: EngineConfig,
    homology: HomologyCache,
    regs: DashMap<CanonicalForm, (usize, VertexSet)>,
}

impl Engine {
    pub fn new(field: PrimeField) -> Engine {
        Engine::with_config(field, EngineConfig::default())
    }

    pub fn with_config(field: PrimeField, config: EngineConfig) -> Engine {
        Engine { field, config, homology: HomologyCache::new(), regs: DashMap::new() }
    }

    /// Process-wide engine with default configuration for the field.
    pub fn shared(field: PrimeField) -> Arc<Engine> {
        static ENGINES: OnceLock<Mutex<HashMap<u32, Arc<Engine>>>> = OnceLock::new();
        let map = ENGINES.get_or_init(|| Mutex::new(HashMap::new()));
        map.lock().unwrap().entry(field.p()).or_insert_with(|| Arc::new(Engine::new(field))).clone()
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn config(&self) -> EngineConfig {
        self.config
    }

    fn check_cap(&self, g: &Graph) -> Result<()> {
        if g.n() > self.config.cap {
            return Err(Error::Resource(format!(
                "{} vertices exceed the Hochster cap {}; raise the cap or use bound invariants instead",
                g.n(),
                self.config.cap
            )));
        }
        Ok(())
    }

    /// Homology of Ind(G[S]) over the engine's field.
    pub fn profile(&self, g: &Graph, s: VertexSet) -> Result<HomologyProfile> {
        g.check_set(s)?;
        cached_profile(g, s, self.field, &self.homology, self.config.face_budget)
    }

    pub fn reg(&self, g: &Graph) -> Result<usize> {
        Ok(self.regularity(g)?.value)
    }

    pub fn regularity(&self, g: &Graph) -> Result<RegularityCertificate> {
        self.check_cap(g)?;
        let c = canonical_form(g);
        let (value, canon_witness) = match self.regs.get(&c.form) {
            Some(hit) => *hit,
            None => {
                let h = c.form.to_graph();
                let found = self.sweep(&h)?;
                self.regs.insert(c.form.clone(), found);
                found
            }
        };
        let witness: VertexSet = (0..g.n()).filter(|&v| canon_witness.contains(c.labeling[v])).collect();
        Ok(RegularityCertificate { value, witness_subset: witness, witness_degree: value, field: self.field })
    }

    /// Pruned Hochster sweep by increasing |S|.
    fn sweep(&self, g: &Graph) -> Result<(usize, VertexSet)> {
        let n = g.n();
        let adj = g.adjacency();
        let matching = induced_matching(g);
        let mut best = matching.len();
        let mut witness: VertexSet = matching.iter().flat_map(|&(a, b)| [a, b]).collect();
        if best > 0 {
            let p = self.profile(g, witness)?;
            assert_eq!(p.top_degree(), Some(best as isize - 1), "induced matching complex is not a sphere");
        }
        let alpha = g.independence_number();
        let mut size = 2 * (best + 1);
        while best < alpha && size <= n {
            let masks = subsets_of_size(n, size);
            let floor = best;
            let eval = |&s: &u64| -> Result<Option<(usize, u64)>> {
                if VertexSet(s).iter().any(|v| adj[v] & s == 0) {
                    return Ok(None);
                }
                if g.independence_number_within(VertexSet(s)) <= floor {
                    return Ok(None);
                }
                let p = cached_profile(g, VertexSet(s), self.field, &self.homology, self.config.face_budget)?;
                Ok(match p.top_degree() {
                    Some(d) if d + 1 > floor as isize => Some(((d + 1) as usize, s)),
                    _ => None,
                })
            };
            let found: Vec<Option<(usize, u64)>> = if masks.len() > 64 {
                masks.par_iter().map(eval).collect::<Result<_>>()?
            } else {
                masks.iter().map(eval).collect::<Result<_>>()?
            };
            // largest degree, then smallest mask, for a deterministic witness
            if let Some((j, s)) = found.into_iter().flatten().max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1))) {
                best = j;
                witness = VertexSet(s);
                size = size.max(2 * (best + 1));
            } else {
                size += 1;
            }
        }
        Ok((best, witness))
    }

    /// Plain sweep over all 2^n subsets without pruning or memo of the result.
    pub fn regularity_unpruned(&self, g: &Graph) -> Result<RegularityCertificate> {
        self.check_cap(g)?;
        let mut best = (0usize, VertexSet::EMPTY);
        for s in 0..1u64 << g.n() {
            let p = self.profile(g, VertexSet(s))?;
            if let Some(d) = p.top_degree() {
                let j = (d + 1) as usize;
                if j > best.0 {
                    best = (j, VertexSet(s));
                }
            }
        }
        Ok(RegularityCertificate { value: best.0, witness_subset: best.1, witness_degree: best.0, field: self.field })
    }

    /// beta_{i,j} = sum over |S| = j of dim H~_{j-i-1}(Ind(G[S])).
    pub fn betti_table(&self, g: &Graph) -> Result<BettiTable> {
        self.check_cap(g)?;
        let adj = g.adjacency();
        let all: Vec<u64> = (0..1u64 << g.n()).collect();
        let parts: Vec<Vec<((usize, usize), u64)>> = all
            .par_iter()
            .map(|&s| -> Result<Vec<((usize, usize), u64)>> {
                if s != 0 && VertexSet(s).iter().any(|v| adj[v] & s == 0) {
                    return Ok(Vec::new());
                }
                let p = cached_profile(g, VertexSet(s), self.field, &self.homology, self.config.face_budget)?;
                let j = s.count_ones() as usize;
                Ok(p.nonzero_degrees().map(|d| ((j - (d + 1) as usize, j), p.get(d))).collect())
            })
            .collect::<Result<_>>()?;
        let mut table = BettiTable::default();
        for (k, b) in parts.into_iter().flatten() {
            *table.entries.entry(k).or_insert(0) += b;
        }
        Ok(table)
    }

    /// reg(G - v) < reg(G).
    pub fn is_prime_vertex(&self, g: &Graph, v: usize) -> Result<bool> {
        g.check_vertex(v)?;
        Ok(self.reg(&g.delete_vertex(v)?)? < self.reg(g)?)
    }

    /// Connected and every vertex prime. Disconnected input gives false.
    pub fn is_prime_graph(&self, g: &Graph) -> Result<bool> {
        if !g.is_connected() || g.n() < 2 {
            return Ok(false);
        }
        if has_dominated_vertex(g) {
            return Ok(false);
        }
        let r = self.reg(g)?;
        for v in 0..g.n() {
            if self.reg(&g.delete_vertex(v)?)? >= r {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn mv_dhs_check(&self, g: &Graph) -> Result<MvReport> {
        let reg = self.reg(g)?;
        let mut rows = Vec::new();
        for v in 0..g.n() {
            let del = self.reg(&g.delete_vertex(v)?)?;
            let link = self.reg(&g.delete_vertices(g.closed_nbrs(v))?.0)? + 1;
            rows.push(MvRow { vertex: v, reg_deletion: del, reg_link_plus_one: link });
        }
        let bound_holds = rows.iter().all(|r| reg <= r.reg_deletion.max(r.reg_link_plus_one));
        let equality_holds = rows.iter().all(|r| reg == r.reg_deletion || reg == r.reg_link_plus_one);
        Ok(MvReport { reg, rows, bound_holds, equality_holds })
    }
}

/// Open domination N(y) inside N(x) for distinct x, y, or closed domination
/// N[u] inside N[v] with deg(v) >= 2. Either rules out primeness.
pub fn has_dominated_vertex(g: &Graph) -> bool {
    let d = g.dominated_pairs();
    !d.open.is_empty() || d.closed.iter().any(|&(_, v)| g.degree(v) >= 2)
}

/// All subsets of {0..n-1} with `k` elements, in increasing numeric order.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    let limit = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s: u64 = (1u64 << k) - 1;
    loop {
        out.push(s);
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s.wrapping_add(c);
        if r == 0 || r > limit {
            break;
        }
        let next = (((r ^ s) >> 2) / c) | r;
        if next > limit {
            break;
        }
        s = next;
    }
    out
}

pub fn regularity(g: &Graph, f: PrimeField) -> Result<RegularityCertificate> {
    Engine::shared(f).regularity(g)
}

pub fn betti_table(g: &Graph, f: PrimeField) -> Result<BettiTable> {
    Engine::shared(f).betti_table(g)
}

pub fn is_prime_vertex(g: &Graph, v: usize, f: PrimeField) -> Result<bool> {
    Engine::shared(f).is_prime_vertex(g, v)
}

pub fn is_prime_graph(g: &Graph, f: PrimeField) -> Result<bool> {
    Engine::shared(f).is_prime_graph(g)
}

pub fn mv_dhs_check(g: &Graph, f: PrimeField) -> Result<MvReport> {
    Engine::shared(f).mv_dhs_check(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::*;
    use crate::homology::reduced_homology;

    fn gf2() -> PrimeField {
        PrimeField::gf2()
    }

    #[test]
    fn gosper() {
        assert_eq!(subsets_of_size(4, 2).len(), 6);
        assert_eq!(subsets_of_size(5, 0), vec![0]);
        assert_eq!(subsets_of_size(3, 3), vec![7]);
        assert!(subsets_of_size(2, 3).is_empty());
    }

    #[test]
    fn small_values() {
        assert_eq!(regularity(&cycle(5).unwrap(), gf2()).unwrap().value, 2);
        assert_eq!(regularity(&n_k2(1).unwrap(), PrimeField::new(7).unwrap()).unwrap().value, 1);
        assert_eq!(regularity(&Graph::empty(3).unwrap(), gf2()).unwrap().value, 0);
        assert_eq!(regularity(&Graph::empty(0).unwrap(), gf2()).unwrap().value, 0);
        assert_eq!(regularity(&complete(5).unwrap(), gf2()).unwrap().value, 1);
    }

    #[test]
    fn certificates_replay() {
        for g in [cycle(7).unwrap(), cycle(8).unwrap(), n_k2(3).unwrap(), path(6).unwrap()] {
            let c = regularity(&g, gf2()).unwrap();
            let (h, _) = g.induced_subgraph(c.witness_subset).unwrap();
            let p = reduced_homology(&h, gf2()).unwrap();
            assert_ne!(p.get(c.witness_degree as isize - 1), 0);
        }
    }

    #[test]
    fn betti_tables() {
        let t = betti_table(&n_k2(1).unwrap(), gf2()).unwrap();
        assert_eq!(t.get(1, 2), 1);
        assert_eq!(t.regularity(), 1);
        let c5 = betti_table(&cycle(5).unwrap(), gf2()).unwrap();
        assert_eq!(c5.regularity(), 2);
        let two = betti_table(&n_k2(2).unwrap(), gf2()).unwrap();
        assert!(two.get(2, 4) >= 1);
        assert_eq!(two.regularity(), 2);
    }

    #[test]
    fn primes() {
        let c5 = cycle(5).unwrap();
        assert!((0..5).all(|v| is_prime_vertex(&c5, v, gf2()).unwrap()));
        assert!(is_prime_graph(&c5, gf2()).unwrap());
        let claw = complete_bipartite(1, 3).unwrap();
        // deleting a leaf keeps reg 1, deleting the center leaves no edge
        assert!(!is_prime_vertex(&claw, 1, gf2()).unwrap());
        assert!(is_prime_vertex(&claw, 0, gf2()).unwrap());
        assert!(is_prime_graph(&cycle(8).unwrap(), gf2()).unwrap());
        assert!(!is_prime_graph(&path(4).unwrap(), gf2()).unwrap());
        assert!(is_prime_graph(&n_k2(1).unwrap(), gf2()).unwrap());
        assert!(!is_prime_graph(&n_k2(2).unwrap(), gf2()).unwrap());
    }

    #[test]
    fn mayer_vietoris() {
        let r = mv_dhs_check(&cycle(5).unwrap(), gf2()).unwrap();
        assert!(r.bound_holds && r.equality_holds);
        assert!(r.rows.iter().all(|row| row.reg_deletion == 1 && row.reg_link_plus_one == 2));
        let single = mv_dhs_check(&Graph::empty(1).unwrap(), gf2()).unwrap();
        assert_eq!(single.rows[0].reg_deletion, 0);
        assert_eq!(single.rows[0].reg_link_plus_one, 1);
        assert!(single.bound_holds);
    }

    #[test]
    fn cap_is_enforced() {
        let e = Engine::with_config(gf2(), EngineConfig { cap: 4, ..Default::default() });
        assert!(matches!(e.regularity(&cycle(5).unwrap()), Err(Error::Resource(_))));
    }
}
