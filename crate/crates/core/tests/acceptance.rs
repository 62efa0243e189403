//! Acceptance criteria 1-13, one PASS/FAIL line each.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use regraph::canon::{is_isomorphic, vertex_orbit_representatives};
use regraph::catalog::*;
use regraph::decomposition::{prime_factorization_with, PrimeMemo};
use regraph::enumerate::{enumerate_connected_graphs, enumerate_connected_up_to, random_corpus, DEFAULT_SEED};
use regraph::homology::{complex_homology, independence_complex, reduced_homology_with, HomologyOptions};
use regraph::invariants::{cochordal_cover_number, induced_matching_number, matching_number};
use regraph::suites::{check_universal_bounds, edge_instances, lozin_instances};
use regraph::transforms::*;
use regraph::{Engine, Graph, PrimeField, Result};

type Outcome = Result<(bool, String)>;

fn gf2() -> std::sync::Arc<Engine> {
    Engine::shared(PrimeField::gf2())
}

fn within(t: Instant, limit: Duration) -> (bool, String) {
    let e = t.elapsed();
    (e < limit, format!("{:.2}s of {}s", e.as_secs_f64(), limit.as_secs()))
}

fn cycle_law() -> Outcome {
    let t = Instant::now();
    let mut bad = Vec::new();
    for n in 3..=12 {
        let r = gf2().reg(&cycle(n)?)?;
        if r != (n + 1) / 3 {
            bad.push(format!("C{n}: {r}"));
        }
    }
    let (fast, time) = within(t, Duration::from_secs(30));
    Ok((bad.is_empty() && fast, format!("n=3..12 mismatches {bad:?}, {time}")))
}

fn morey_villarreal_fields() -> Outcome {
    let t = Instant::now();
    let mv = morey_villarreal();
    let gf3 = Engine::shared(PrimeField::gf3());
    let got = (gf2().reg(&mv)?, gf2().is_prime_graph(&mv)?, gf3.reg(&mv)?, gf3.is_prime_graph(&mv)?);
    let (fast, time) = within(t, Duration::from_secs(60));
    Ok((got == (3, true, 2, false) && fast, format!("(reg2, prime2, reg3, prime3) = {got:?}, {time}")))
}

fn moebius_kantor_values() -> Outcome {
    let t = Instant::now();
    let mk = moebius_kantor();
    let x = vertex_orbit_representatives(&mk)[0];
    let reg = gf2().reg(&mk)?;
    let del = gf2().reg(&mk.delete_vertex(x)?)?;
    let link = mk.delete_vertices(mk.closed_nbrs(x))?.0;
    let lk = gf2().reg(&link)?;
    let im = induced_matching_number(&mk);
    let p = gf2().profile(&link, link.vertices())?;
    let ok = (reg, del, lk, im) == (5, 4, 4, 4) && p.get(2) == 1 && p.get(3) == 1;
    let (fast, time) = within(t, Duration::from_secs(900));
    Ok((ok && fast, format!("reg {reg}, reg(G-x) {del}, reg(G-N[x]) {lk}, im {im}, link betti {:?}, {time}", p.betti())))
}

fn cochordal_values() -> Outcome {
    let c4 = cycle(4)?;
    let l = triple_subdivision(&c4, 0, 1)?;
    let a = cochordal_cover_number(&c4, 1_000_000).value();
    let b = cochordal_cover_number(&l, 1_000_000).value();
    let mk = cochordal_cover_number(&moebius_kantor(), 100_000_000);
    let ok = a == Some(1) && b == Some(3) && mk.value() == Some(6);
    Ok((ok, format!("C4 {a:?}, L(C4;e) {b:?}, MK {:?} after {} nodes", mk.value(), mk.nodes)))
}

fn lozin_theorem() -> Outcome {
    let t = Instant::now();
    let inst = lozin_instances(DEFAULT_SEED, 300);
    let failures: usize = inst
        .par_iter()
        .map(|(g, spec)| -> Result<usize> {
            let l = lozin_transform(g, spec)?;
            let ok = gf2().reg(&l)? == gf2().reg(g)? + 1
                && induced_matching_number(&l) == induced_matching_number(g) + 1;
            Ok(usize::from(!ok))
        })
        .sum::<Result<usize>>()?;
    let (fast, time) = within(t, Duration::from_secs(600));
    Ok((failures == 0 && fast, format!("{} instances, {failures} failures, {time}", inst.len())))
}

fn contraction_bracket() -> Outcome {
    let inst = edge_instances(DEFAULT_SEED, 300);
    let failures: usize = inst
        .par_iter()
        .map(|(g, (x, y))| -> Result<usize> {
            let reg = gf2().reg(g)?;
            let rc = gf2().reg(&contract_edge(g, *x, *y)?)?;
            let rd = gf2().reg(&double_subdivision(g, *x, *y)?)?;
            Ok(usize::from(!(rc <= reg && reg <= rc + 1 && rd == rc + 1)))
        })
        .sum::<Result<usize>>()?;
    Ok((failures == 0, format!("{} instances, {failures} failures", inst.len())))
}

fn t_move_invariance() -> Outcome {
    let corpus = random_corpus(DEFAULT_SEED, 500);
    let counts: Vec<(usize, usize)> = corpus
        .par_iter()
        .map(|g| -> Result<(usize, usize)> {
            let pairs = t_pairs(g);
            let mut bad = 0;
            for p in &pairs {
                let h = t_contract(g, p.x, p.y)?;
                if gf2().reg(&h)? != gf2().reg(g)? || induced_matching_number(&h) < induced_matching_number(g) {
                    bad += 1;
                }
            }
            Ok((pairs.len(), bad))
        })
        .collect::<Result<_>>()?;
    let graphs = counts.iter().filter(|c| c.0 > 0).count();
    let pairs: usize = counts.iter().map(|c| c.0).sum();
    let bad: usize = counts.iter().map(|c| c.1).sum();
    Ok((bad == 0 && pairs > 0, format!("{graphs} graphs with t-pairs, {pairs} contractions, {bad} failures")))
}

fn c8_mate() -> Outcome {
    let c8 = cycle(8)?;
    let budget = MateBudget { depth: 6, target: Some(3), ..Default::default() };
    let r = mate_search(&c8, &budget)?;
    let pure = r.trace.expand_macros(&c8)?;
    let end = pure.replay(&c8)?;
    let ok = r.best_im == 3
        && gf2().reg(&c8)? == 3
        && r.trace.len() <= 6
        && pure.len() <= 6
        && is_isomorphic(&end, &r.best)
        && induced_matching_number(&end) == 3;
    Ok((ok, format!("im {} via {} moves ({} t-moves)", r.best_im, r.trace.len(), pure.len())))
}

fn exhaustive_factorization() -> Outcome {
    let t = Instant::now();
    let seven = enumerate_connected_graphs(7)?.len();
    let graphs = enumerate_connected_up_to(7)?;
    let memo = PrimeMemo::new();
    let bad: usize = graphs
        .par_iter()
        .map(|g| -> Result<usize> { Ok(usize::from(!prime_factorization_with(&gf2(), g, &memo)?.equal)) })
        .sum::<Result<usize>>()?;
    let (fast, time) = within(t, Duration::from_secs(1200));
    Ok((bad == 0 && seven == 853 && fast, format!("{} graphs ({seven} on 7 vertices), {bad} failures, {time}", graphs.len())))
}

fn hibi_uniqueness() -> Outcome {
    let graphs = enumerate_connected_up_to(7)?;
    let mut hits: Vec<Graph> = Vec::new();
    for g in &graphs {
        let reg = gf2().reg(g)?;
        if induced_matching_number(g) < reg && reg == matching_number(g) {
            hits.push(g.clone());
        }
    }
    let ok = hits.len() == 1 && is_isomorphic(&hits[0], &cycle(5)?);
    Ok((ok, format!("{} witnesses among {} graphs", hits.len(), graphs.len())))
}

fn universal_bounds() -> Outcome {
    let mut corpus = random_corpus(DEFAULT_SEED, 300);
    corpus.extend(enumerate_connected_up_to(7)?);
    let violations: Vec<String> = corpus
        .par_iter()
        .map(|g| -> Result<Vec<String>> {
            Ok(check_universal_bounds(&gf2(), g)?.into_iter().map(|(c, e, got)| format!("{c}: {e}, got {got}")).collect())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok((violations.is_empty(), format!("{} graphs, violations {:?}", corpus.len(), violations)))
}

fn homology_properties() -> Outcome {
    let corpus = random_corpus(DEFAULT_SEED ^ 12, 500);
    let mut bad = 0;
    for g in &corpus {
        let c = independence_complex(g)?;
        let plain = complex_homology(&c, PrimeField::gf2())?;
        let folded = reduced_homology_with(g, PrimeField::gf2(), HomologyOptions::default())?;
        if plain.euler_characteristic() != c.reduced_euler_characteristic() || plain != folded {
            bad += 1;
        }
    }
    Ok((bad == 0, format!("{} computations, {bad} failures", corpus.len())))
}

fn reg_im_construction() -> Outcome {
    let c5 = cycle(5)?;
    let g3 = construct_reg_im(&c5, (0, 1), 3)?;
    let g2 = construct_reg_im(&c5, (0, 1), 2)?;
    let got = (gf2().reg(&g3)?, induced_matching_number(&g3), gf2().reg(&g2)?, induced_matching_number(&g2));
    Ok((got == (4, 3, 3, 2), format!("(reg, im) for k=3 and k=2: {got:?}")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("cycle law", cycle_law),
        ("Morey-Villarreal field dependence", morey_villarreal_fields),
        ("Moebius-Kantor values", moebius_kantor_values),
        ("exact cochordal cover numbers", cochordal_values),
        ("Lozin transform adds one", lozin_theorem),
        ("contraction bracket and double subdivision", contraction_bracket),
        ("t-contraction invariance", t_move_invariance),
        ("C8 mate with im 3", c8_mate),
        ("exhaustive prime factorization", exhaustive_factorization),
        ("C5 uniqueness", hibi_uniqueness),
        ("universal bounds", universal_bounds),
        ("Euler characteristic and fold equivalence", homology_properties),
        ("reg/im construction", reg_im_construction),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (ok, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!ok);
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("criterion {:2} {verdict}: {name} ({detail}) [{:.2}s]", i + 1, t.elapsed().as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
