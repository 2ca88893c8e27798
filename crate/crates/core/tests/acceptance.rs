//! Acceptance gate: ten self-contained suites, one harness pass/fail line
//! each. All randomness is seeded, so every run checks the same instances.

use busgrid::embedder::{embed_gadget_canonical, embed_reduction, partition_witness_layout};
use busgrid::gadgets::{add_chain, add_deg3_perp, add_flipper, add_perp, add_variable_box};
use busgrid::reductions::{
    reduce_nae3sat, reduce_orientation, reduce_partition, Cnf, Lit, ReduceError,
};
use busgrid::solvers::{
    enumerate_orientations, solve_nae3sat_bruteforce, solve_orientation,
    solve_partition_bruteforce, solve_realizability_small, RealizabilityOutcome,
};
use busgrid::transforms::{compact, expand_duplicates, GridMap};
use busgrid::{
    verify_layout, BusGraph, BusId, ConnId, Layout, Orientation, OrientationAssignment, Point,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Every orientation assignment of `g`, by brute force over all `2^buses`
/// candidates. The ground truth the gadget library is graded against.
fn exhaustive_feasible(g: &BusGraph) -> Vec<OrientationAssignment> {
    let n = g.bus_count();
    assert!(n <= 20, "scan is exponential in the bus count");
    let mut out = Vec::new();
    for bits in 0u32..1 << n {
        let oa = OrientationAssignment::new(
            (0..n)
                .map(|i| {
                    if bits >> i & 1 == 0 {
                        Orientation::Horizontal
                    } else {
                        Orientation::Vertical
                    }
                })
                .collect(),
        );
        if oa.is_feasible(g) {
            out.push(oa);
        }
    }
    out
}

fn random_cnf(rng: &mut ChaCha8Rng, n_max: usize, m_max: usize) -> Cnf {
    let n = rng.gen_range(1..=n_max);
    let m = rng.gen_range(1..=m_max);
    let clauses = (0..m)
        .map(|_| {
            [0; 3].map(|_| {
                let var = rng.gen_range(0..n);
                if rng.gen() {
                    Lit::pos(var)
                } else {
                    Lit::neg(var)
                }
            })
        })
        .collect();
    Cnf::new(n, clauses).expect("all literals in range")
}

fn has_triple_literal_clause(cnf: &Cnf) -> bool {
    cnf.clauses.iter().any(|cl| cl[0] == cl[1] && cl[1] == cl[2])
}

/// Rejection-samples a not-all-equal satisfiable formula together with a
/// brute-force witness.
fn random_sat_instance(rng: &mut ChaCha8Rng, n_max: usize, m_max: usize) -> (Cnf, Vec<bool>) {
    loop {
        let cnf = random_cnf(rng, n_max, m_max);
        if has_triple_literal_clause(&cnf) {
            continue;
        }
        if let Some(sigma) = solve_nae3sat_bruteforce(&cnf) {
            return (cnf, sigma);
        }
    }
}

#[test]
fn a01_gadget_orientation_oracles_are_exhaustive() {
    // Perp, all 2^5 assignments: exactly two are feasible, and every
    // feasible one crosses A against B while keeping partners parallel.
    let mut g = BusGraph::new();
    let h = add_perp(&mut g, "p");
    let feas = exhaustive_feasible(&g);
    assert_eq!(feas.len(), 2);
    for oa in &feas {
        let o = |r: &str| oa.get(h.bus(r));
        assert_eq!(o("B"), o("B'"));
        assert_ne!(o("A"), o("B"));
        assert_eq!(o("A"), o("A'"));
    }

    // Flipper with an entry bus on B and an exit bus on o, all 2^7: the
    // exit always ends up perpendicular to B.
    let mut g = BusGraph::new();
    let h = add_flipper(&mut g, "f");
    let exit = g.add_bus("exit");
    let entry = g.add_bus("entry");
    g.connectors[h.conn("o").0 as usize].incident.push(exit);
    g.add_connector("i", &[entry, h.bus("B")]);
    let feas = exhaustive_feasible(&g);
    assert_eq!(feas.len(), 4, "global flip times the free entry bus");
    assert!(feas.iter().all(|oa| oa.get(exit) != oa.get(h.bus("B"))));

    // Variable box with one port per side and a carried bus on each port,
    // all 2^15: carried buses are forced parallel to their side's flank.
    let mut g = BusGraph::new();
    let h = add_variable_box(&mut g, "v", 1, 1);
    let carried_a = g.add_bus("carried_A");
    let carried_b = g.add_bus("carried_B");
    g.connectors[h.conn("o_A^1").0 as usize].incident.push(carried_a);
    g.connectors[h.conn("o_B^1").0 as usize].incident.push(carried_b);
    assert_eq!(g.bus_count(), 15);
    let feas = exhaustive_feasible(&g);
    assert_eq!(feas.len(), 2, "carried buses add no freedom");
    for oa in &feas {
        assert_eq!(oa.get(carried_a), oa.get(h.bus("A")));
        assert_eq!(oa.get(carried_b), oa.get(h.bus("B")));
        assert_ne!(oa.get(h.bus("A")), oa.get(h.bus("B")));
    }

    // Chain, all 2^20: exactly two assignments survive, each alternating
    // hop to hop, so the entry and exit buses always agree.
    let mut g = BusGraph::new();
    let h = add_chain(&mut g, "ch");
    assert_eq!(g.bus_count(), 20);
    let feas = exhaustive_feasible(&g);
    assert_eq!(feas.len(), 2);
    for oa in &feas {
        assert_eq!(oa.get(h.bus("I")), oa.get(h.bus("O")));
    }
    // The propagating enumerator agrees with the raw scan.
    let enumerated = enumerate_orientations(&g, 8);
    assert_eq!(enumerated.len(), 2);
    for oa in &enumerated {
        assert!(feas.iter().any(|f| f.orientations == oa.orientations));
    }

    // Degree-3 perp, all 2^6: eight survivors (global flip times two free
    // spectator buses), all crossing A against B with parallel partners.
    let mut g = BusGraph::new();
    let h = add_deg3_perp(&mut g, "d");
    let feas = exhaustive_feasible(&g);
    assert_eq!(feas.len(), 8);
    for oa in &feas {
        let o = |r: &str| oa.get(h.bus(r));
        assert_ne!(o("A"), o("B"));
        assert_eq!(o("A"), o("A'"));
        assert_eq!(o("B"), o("B'"));
    }
}

/// A formula is orientation-feasible when its reduced graph admits an
/// assignment. Clauses repeating one literal three times are rejected by
/// the reduction and can never hold both a true and a false literal, so
/// they count as infeasible.
fn orientation_feasible(cnf: &Cnf) -> bool {
    match reduce_orientation(cnf) {
        Ok(red) => solve_orientation(&red.graph).is_some(),
        Err(ReduceError::UnsatisfiableClause { .. }) => false,
        Err(e) => panic!("unexpected reduction failure: {e}"),
    }
}

#[test]
fn a02_orientation_reduction_matches_brute_force_satisfiability() {
    // Exhaustive over unordered formulas: clauses are multisets of three
    // literals, formulas multisets of at most three clauses. Literal code
    // 2v is the variable, 2v + 1 its negation.
    let lit_of = |code: usize| {
        if code.is_multiple_of(2) {
            Lit::pos(code / 2)
        } else {
            Lit::neg(code / 2)
        }
    };
    let mut checked = 0usize;
    for n in 1..=3usize {
        let lits = 2 * n;
        let mut clause_types = Vec::new();
        for a in 0..lits {
            for b in a..lits {
                for c in b..lits {
                    clause_types.push([lit_of(a), lit_of(b), lit_of(c)]);
                }
            }
        }
        let t = clause_types.len();
        let mut formulas: Vec<Vec<usize>> = Vec::new();
        for i in 0..t {
            formulas.push(vec![i]);
            for j in i..t {
                formulas.push(vec![i, j]);
                for k in j..t {
                    formulas.push(vec![i, j, k]);
                }
            }
        }
        for f in formulas {
            let cnf = Cnf::new(n, f.iter().map(|&i| clause_types[i]).collect()).unwrap();
            let brute = solve_nae3sat_bruteforce(&cnf).is_some();
            assert_eq!(orientation_feasible(&cnf), brute, "n {n}, clauses {f:?}");
            checked += 1;
        }
    }
    assert!(checked > 30_000, "exhaustive sweep shrank to {checked}");

    // Random spot checks at larger sizes.
    let mut rng = ChaCha8Rng::seed_from_u64(0xa02);
    for _ in 0..200 {
        let cnf = random_cnf(&mut rng, 6, 10);
        let brute = solve_nae3sat_bruteforce(&cnf).is_some();
        assert_eq!(orientation_feasible(&cnf), brute, "{cnf:?}");
    }
}

#[test]
fn a03_embeddings_of_satisfiable_instances_draw_cleanly() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa03);
    for trial in 0..100 {
        let (cnf, sigma) = random_sat_instance(&mut rng, 6, 10);
        let red = reduce_nae3sat(&cnf).unwrap();
        let emb = embed_reduction(&red.cert, &sigma).unwrap();
        assert_eq!(verify_layout(&red.graph, &emb.layout), vec![], "trial {trial}: {cnf:?}");
        assert!(emb.boxes_pairwise_disjoint(), "trial {trial}: boxes intersect");
        assert!(emb.edges_avoid_foreign_boxes(&red.graph), "trial {trial}: edge through a box");
        assert!(emb.long_edges_well_separated(&red.graph), "trial {trial}: routing too dense");
    }
}

/// Builds a seeded not-all-equal unsatisfiable formula: a cycle of three
/// value (dis)equalities with odd disequality parity (NAE(a, b, b) pins the
/// literal values a and b apart), optionally padded with random clauses.
fn random_unsat_instance(rng: &mut ChaCha8Rng) -> Cnf {
    let n = rng.gen_range(3..=4);
    let mut vars: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        vars.swap(i, rng.gen_range(0..=i));
    }
    let lit = |v: usize, s: bool| if s { Lit::neg(v) } else { Lit::pos(v) };
    loop {
        let mut parity = 0u32;
        let mut clauses = Vec::new();
        for e in 0..3 {
            let (u, v) = (vars[e], vars[(e + 1) % 3]);
            let (su, sv) = (rng.gen::<bool>(), rng.gen::<bool>());
            // Values satisfy val(u) xor val(v) = 1 xor su xor sv, so the
            // cycle is contradictory when the right sides sum to 1.
            parity ^= 1 ^ (su as u32) ^ (sv as u32);
            clauses.push([lit(u, su), lit(v, sv), lit(v, sv)]);
        }
        if parity == 0 {
            continue;
        }
        for _ in 0..rng.gen_range(0..=3) {
            let cl = [0; 3].map(|_| lit(rng.gen_range(0..n), rng.gen()));
            if cl[0] == cl[1] && cl[1] == cl[2] {
                continue;
            }
            clauses.push(cl);
        }
        return Cnf::new(n, clauses).unwrap();
    }
}

#[test]
fn a04_unsatisfiable_instances_have_infeasible_reductions() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa04);
    for trial in 0..50 {
        let cnf = random_unsat_instance(&mut rng);
        assert!(solve_nae3sat_bruteforce(&cnf).is_none(), "generator produced a sat formula");
        let red = reduce_nae3sat(&cnf).unwrap();
        assert!(
            solve_orientation(&red.graph).is_none(),
            "trial {trial}: unsat formula got a feasible reduction: {cnf:?}"
        );
    }
}

#[test]
fn a05_reduction_sizes_match_the_closed_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa05);
    let mut generated = 0;
    while generated < 200 {
        let cnf = random_cnf(&mut rng, 6, 10);
        if has_triple_literal_clause(&cnf) {
            continue;
        }
        generated += 1;
        let (n, m) = (cnf.vars, cnf.clauses.len());
        let red = reduce_nae3sat(&cnf).unwrap();
        assert_eq!(red.graph.bus_count(), 13 * n + 60 * m);
        assert_eq!(red.graph.connector_count(), 9 * n + 49 * m);
        assert_eq!(red.graph.incidence_count(), 36 * n + 183 * m);
        let ored = reduce_orientation(&cnf).unwrap();
        assert_eq!(ored.graph.bus_count(), 5 * n);
        assert_eq!(ored.graph.connector_count(), 3 * n + m);
        assert_eq!(ored.graph.incidence_count(), 12 * n + 3 * m);
    }

    // Variable-box banks: 12 central incidences, 12 + 2k on the A side,
    // 12 + 2l on the B side.
    for k in 0..=5 {
        for l in 0..=5 {
            let mut g = BusGraph::new();
            add_variable_box(&mut g, "v", k, l);
            let sum = |pick: &dyn Fn(&str) -> bool| -> usize {
                g.connectors.iter().filter(|c| pick(&c.name)).map(|c| c.incident.len()).sum()
            };
            let bank_a = sum(&|name| name.contains("_A"));
            let bank_b = sum(&|name| name.contains("_B"));
            let central = sum(&|name| !name.contains("_A") && !name.contains("_B"));
            assert_eq!(central, 12, "k {k} l {l}");
            assert_eq!(bank_a, 12 + 2 * k, "k {k} l {l}");
            assert_eq!(bank_b, 12 + 2 * l, "k {k} l {l}");
            assert_eq!(g.incidence_count(), 36 + 2 * (k + l));
        }
    }
}

#[test]
fn a06_compaction_normalizes_every_embedding() {
    let mut cases: Vec<(BusGraph, Layout)> = Vec::new();

    // Canonical single-gadget drawings under every rigid motion.
    type Build = fn(&mut BusGraph) -> busgrid::gadgets::GadgetHandle;
    let builders: [Build; 3] =
        [|g| add_perp(g, "p"), |g| add_flipper(g, "f"), |g| add_variable_box(g, "v", 2, 1)];
    for build in builders {
        for map in GridMap::ALL {
            let mut g = BusGraph::new();
            let h = build(&mut g);
            let l = embed_gadget_canonical(&h, map, Point::new(-5, 7)).unwrap();
            cases.push((g, l));
        }
    }

    // Full reduction drawings.
    let mut rng = ChaCha8Rng::seed_from_u64(0xa06);
    for _ in 0..40 {
        let (cnf, sigma) = random_sat_instance(&mut rng, 6, 10);
        let red = reduce_nae3sat(&cnf).unwrap();
        let emb = embed_reduction(&red.cert, &sigma).unwrap();
        cases.push((red.graph, emb.layout));
    }

    for (i, (g, l)) in cases.iter().enumerate() {
        let small = compact(g, l).unwrap();
        assert_eq!(verify_layout(g, &small), vec![], "case {i}");
        assert_eq!(compact(g, &small).unwrap(), small, "case {i}: not idempotent");
        let (lo, hi) = small.bounding_box().unwrap();
        let budget = (g.connector_count() + 2 * g.bus_count()) as i64;
        assert!(hi.x - lo.x < budget, "case {i}: x extent");
        assert!(hi.y - lo.y < budget, "case {i}: y extent");
    }
}

#[test]
fn a07_duplicate_expansion_realizes_multiplied_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xa07);
    for trial in 0..50 {
        let mut g = BusGraph::new();
        let h = match trial % 3 {
            0 => add_perp(&mut g, "p"),
            1 => add_flipper(&mut g, "f"),
            _ => add_variable_box(&mut g, "v", rng.gen_range(1..=2), rng.gen_range(1..=2)),
        };
        let map = GridMap::ALL[rng.gen_range(0..8)];
        let origin = Point::new(rng.gen_range(-20..=20), rng.gen_range(-20..=20));
        let layout = embed_gadget_canonical(&h, map, origin).unwrap();

        let mut m = g.to_multiplicity_encoding();
        for count in m.counts.values_mut() {
            *count = rng.gen_range(1..=3);
        }
        let want: u64 = m.counts.values().sum();

        // The deduplicated graph lists one connector per class in class
        // order; seed each with its representative's drawn position.
        let mut dedup_layout = Layout { buses: layout.buses.clone(), connectors: BTreeMap::new() };
        for (j, key) in m.counts.keys().enumerate() {
            let (orig, _) = g
                .connectors
                .iter()
                .enumerate()
                .find(|(_, c)| {
                    let mut k = c.incident.clone();
                    k.sort();
                    &k == key
                })
                .expect("every class has a representative");
            dedup_layout
                .connectors
                .insert(ConnId(j as u32), layout.connectors[&ConnId(orig as u32)]);
        }

        let (full, out) = expand_duplicates(&m, &dedup_layout).unwrap();
        assert_eq!(full.connector_count() as u64, want, "trial {trial}");
        assert_eq!(verify_layout(&full, &out), vec![], "trial {trial}");
    }
}

#[test]
fn a08_partition_witnesses_match_brute_force_splits() {
    // Every multiset over {2, 3, 4, 5} with one to five elements.
    let values = [2u64, 3, 4, 5];
    let mut multisets: Vec<Vec<u64>> = Vec::new();
    // Depth-first over nondecreasing index sequences.
    let mut frontier: Vec<(usize, Vec<u64>)> =
        (0..values.len()).map(|i| (i, vec![values[i]])).collect();
    while let Some((start, cur)) = frontier.pop() {
        multisets.push(cur.clone());
        if cur.len() == 5 {
            continue;
        }
        for (i, &v) in values.iter().enumerate().skip(start) {
            let mut next = cur.clone();
            next.push(v);
            frontier.push((i, next));
        }
    }
    assert_eq!(multisets.len(), 125);

    for sizes in &multisets {
        let total: u64 = sizes.iter().sum();
        match reduce_partition(sizes) {
            Err(ReduceError::OddTotal { .. }) => {
                assert_eq!(total % 2, 1, "{sizes:?}");
                assert!(solve_partition_bruteforce(sizes).is_none());
            }
            Ok(red) => {
                assert_eq!(total % 2, 0, "{sizes:?}");
                match solve_partition_bruteforce(sizes) {
                    Some(pick) => {
                        let l = partition_witness_layout(&red, &pick).unwrap();
                        // Zero violations of any kind, declared lengths
                        // included.
                        assert_eq!(verify_layout(&red.graph, &l), vec![], "{sizes:?}");
                    }
                    None => {
                        // The DP is complete, so every selector must fail.
                        for bits in 0u32..1 << sizes.len() {
                            let pick: Vec<bool> =
                                (0..sizes.len()).map(|i| bits >> i & 1 == 1).collect();
                            assert!(
                                partition_witness_layout(&red, &pick).is_err(),
                                "{sizes:?} with {pick:?}"
                            );
                        }
                    }
                }
            }
            Err(e) => panic!("unexpected rejection of {sizes:?}: {e}"),
        }
    }
}

#[test]
fn a09_pair_clique_is_orientation_feasible() {
    // Nine buses with one degree-2 connector per pair. Degree-2 connectors
    // never clash, so an orientation assignment always exists -- yet this
    // graph is known to admit no grid drawing. Orientation feasibility is
    // necessary, not sufficient. Deciding the drawing side is far beyond
    // the windowed micro-solver (45 objects), so only the feasible half is
    // machine-checked here.
    let mut g = BusGraph::new();
    let buses: Vec<BusId> = (0..9).map(|i| g.add_bus(format!("n{i}"))).collect();
    for i in 0..9 {
        for j in i + 1..9 {
            g.add_connector(format!("e{i}_{j}"), &[buses[i], buses[j]]);
        }
    }
    assert_eq!(g.connector_count(), 36);
    let oa = solve_orientation(&g).expect("degree-2 connectors never clash");
    assert!(oa.is_feasible(&g));
}

#[test]
fn a10_micro_solver_matches_hand_classified_corpus() {
    let mut corpus: Vec<(&str, BusGraph, bool)> = Vec::new();

    corpus.push(("empty graph", BusGraph::new(), true));

    let mut g = BusGraph::new();
    g.add_bus("B");
    corpus.push(("single bus", g, true));

    let mut g = BusGraph::new();
    let b = g.add_bus("B");
    g.add_connector("c", &[b]);
    corpus.push(("bus with one connector", g, true));

    let mut g = BusGraph::new();
    let b1 = g.add_bus("B1");
    let b2 = g.add_bus("B2");
    g.add_connector("c", &[b1, b2]);
    corpus.push(("two buses sharing a connector", g, true));

    let mut g = BusGraph::new();
    let b1 = g.add_bus("B1");
    let b2 = g.add_bus("B2");
    let b3 = g.add_bus("B3");
    g.add_connector("c1", &[b1, b2]);
    g.add_connector("c2", &[b2, b3]);
    corpus.push(("ladder of three buses", g, true));

    let mut g = BusGraph::new();
    let b1 = g.add_bus("B1");
    let b2 = g.add_bus("B2");
    let b3 = g.add_bus("B3");
    g.add_connector("c1", &[b1, b2]);
    g.add_connector("c2", &[b2, b3]);
    g.add_connector("c3", &[b3, b1]);
    corpus.push(("triangle of three buses", g, true));

    let mut g = BusGraph::new();
    let b1 = g.add_bus_with_length("B1", Some(1));
    let b2 = g.add_bus_with_length("B2", Some(1));
    for name in ["c1", "c2", "c3"] {
        g.add_connector(name, &[b1, b2]);
    }
    corpus.push(("two unit buses with three shared connectors", g, false));

    let mut g = BusGraph::new();
    let b1 = g.add_bus_with_length("B1", Some(2));
    let b2 = g.add_bus_with_length("B2", Some(2));
    for name in ["c1", "c2", "c3"] {
        g.add_connector(name, &[b1, b2]);
    }
    corpus.push(("two length-2 buses with three shared connectors", g, true));

    let mut g = BusGraph::new();
    let ids: Vec<BusId> = (0..4).map(|i| g.add_bus(format!("B{i}"))).collect();
    g.add_connector("c", &ids);
    corpus.push(("four buses on one connector", g, true));

    let mut g = BusGraph::new();
    let ids: Vec<BusId> = (0..5).map(|i| g.add_bus(format!("B{i}"))).collect();
    g.add_connector("c", &ids);
    corpus.push(("five buses on one connector", g, false));

    let mut g = BusGraph::new();
    let b = g.add_bus_with_length("B", Some(4));
    g.add_connector("c", &[b]);
    corpus.push(("declared length honored", g, true));

    for (name, g, realizable) in &corpus {
        match solve_realizability_small(g) {
            RealizabilityOutcome::Realizable(l) => {
                assert!(*realizable, "{name}: drawing found for a graph classified infeasible");
                assert_eq!(verify_layout(g, &l), vec![], "{name}: returned layout must verify");
            }
            RealizabilityOutcome::Infeasible { .. } => {
                assert!(!*realizable, "{name}: classified realizable but search refuted it");
            }
            RealizabilityOutcome::GaveUp { steps } => {
                panic!("{name}: solver gave up after {steps} steps on a corpus-sized graph");
            }
        }
    }
}
