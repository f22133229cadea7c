//! Acceptance suite: one test per guaranteed behavior, each printing a
//! pass/fail line. Run with `cargo test --test acceptance -- --nocapture`
//! to see every line; failures always surface through the test harness.
//!
//! All comparisons are exact rational arithmetic unless a float tolerance
//! is stated inline.

mod common;

use common::connected_labeled_graphs;
use modex::bounds::{resolution_verdict, zero_component_unsplit, SplitDecision};
use modex::decompose::{
    build_partition, max_in, max_out, partition_boundary, refine, rho_of, split_non_expander,
    volume_decompose,
};
use modex::expansion::{conductance, expansion_by_products};
use modex::families;
use modex::modularity::{
    all_optimal, f_of_alpha, is_zero_modularity, maximize, score, ZeroModularityMethod,
};
use modex::rng::{random_connected_graph, random_graph, random_partition, SplitMix64};
use modex::spectral::spectral_gap;
use modex::{rat, rint, Error, Graph, Limits, Partition, Ratio, Scalar, VertexSet};
use num_traits::Zero;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};

fn check(name: &str, body: impl FnOnce()) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("criterion {name}: PASS"),
        Err(cause) => {
            println!("criterion {name}: FAIL");
            resume_unwind(cause);
        }
    }
}

#[test]
fn a01_weighted_clique_expansion_closed_form() {
    check("01 closed-form expansion of the loop-clique family", || {
        for k in 2u64..=6 {
            for a in 1i64..=3 {
                for b in 1i64..=3 {
                    let hw = families::weighted_clique_loops(&rint(a), &rint(b), k).unwrap();
                    let expected = rat(b, a + b) * (rint(1) + rat(1, k as i64 - 1));
                    let rep = expansion_by_products(&hw).unwrap();
                    assert_eq!(rep.value.expect_finite(), expected, "k={k} a={a} b={b}");
                    // Every nonempty proper subset attains the minimum.
                    let n = hw.vertex_count();
                    for bits in 1u64..(1 << n) - 1 {
                        let s = VertexSet::from_indices(n, (0..n).filter(|&v| bits >> v & 1 == 1));
                        assert_eq!(
                            modex::expansion::hh_set(&hw, &s).unwrap(),
                            expected,
                            "subset {s} of k={k} a={a} b={b}"
                        );
                    }
                }
            }
        }
    });
}

#[test]
fn a02_simple_weighted_equivalence() {
    check(
        "02 leaves-vs-loops equivalence of modularity and expansion",
        || {
            for k in 2u64..=3 {
                for l in 1u64..=2 {
                    let h = families::clique_with_leaves::<Ratio>(k, l).unwrap();
                    let hw = families::weighted_clique_loops(
                        &rint(2 * l as i64),
                        &rint(k as i64 - 1),
                        k,
                    )
                    .unwrap();
                    let hh_simple = expansion_by_products(&h).unwrap().value.expect_finite();
                    let hh_weighted = expansion_by_products(&hw).unwrap().value.expect_finite();
                    assert_eq!(hh_simple, hh_weighted, "k={k} l={l}");
                    for alpha in [rat(1, 2), rint(1)] {
                        let g = families::with_disjoint_edges(&h, &alpha).unwrap();
                        let gw = families::with_disjoint_edges(&hw, &alpha).unwrap();
                        let q = maximize(&g).unwrap().q_star;
                        let qw = maximize(&gw).unwrap().q_star;
                        assert_eq!(q, qw, "k={k} l={l} alpha={alpha}");
                    }
                }
            }
        },
    );
}

#[test]
fn a03_windmill_conductance_and_modularity() {
    check(
        "03 windmill conductance 1/2 with positive modularity",
        || {
            for l in [2u64, 3, 4] {
                let w = families::windmill::<Ratio>(l).unwrap();
                assert_eq!(
                    conductance(&w).unwrap().value.expect_finite(),
                    rat(1, 2),
                    "l={l}"
                );
            }
            let q = maximize(&families::windmill::<Ratio>(2).unwrap())
                .unwrap()
                .q_star;
            assert!(q >= rat(1, 9));
            assert!(q > rint(0));
        },
    );
}

#[test]
fn a04_zero_modularity_equivalences_exhaustive() {
    // Exhaustive over all labeled connected graphs on up to 6 vertices
    // (the labeled-graph variant of the check).
    check(
        "04 zero-modularity equivalences on all connected graphs <= 6",
        || {
            for n in 2..=6 {
                for g in connected_labeled_graphs(n) {
                    let direct = is_zero_modularity(&g, ZeroModularityMethod::Direct).unwrap();
                    let geo = is_zero_modularity(&g, ZeroModularityMethod::GeometricMean).unwrap();
                    let prod = is_zero_modularity(&g, ZeroModularityMethod::Products).unwrap();
                    assert!(direct == geo && direct == prod, "{}", g.to_text());
                    if direct {
                        let h = conductance(&g).unwrap().value.expect_finite();
                        assert!(h >= rat(1, 2), "{}", g.to_text());
                    }
                }
            }
        },
    );
}

#[test]
fn a05_upper_bound_soundness_on_random_graphs() {
    check("05 subgraph upper bounds dominate modularity", || {
        let mut rng = SplitMix64::new(505);
        let mut sampled = 0;
        while sampled < 200 {
            let g = random_graph::<Ratio>(&mut rng, 2, 9, true);
            if g.edge_weight_total().is_zero() {
                continue;
            }
            sampled += 1;
            let n = g.vertex_count();
            let q_star = maximize(&g).unwrap().q_star;
            let partitions: Vec<Partition> =
                (0..20).map(|_| random_partition(&mut rng, n)).collect();
            let part_scores: Vec<Ratio> =
                partitions.iter().map(|p| score(&g, p).unwrap().q).collect();

            let mut adj = vec![0u32; n];
            for e in g.edges() {
                if e.u != e.v {
                    adj[e.u] |= 1 << e.v;
                    adj[e.v] |= 1 << e.u;
                }
            }
            for bits in 1u32..(1 << n) {
                if bits.count_ones() < 2 || bits.count_ones() > 7 {
                    continue;
                }
                // Connectivity over the mask.
                let mut reach = 1u32 << bits.trailing_zeros();
                loop {
                    let mut grow = reach;
                    let mut scan = reach;
                    while scan != 0 {
                        let v = scan.trailing_zeros() as usize;
                        grow |= adj[v] & bits;
                        scan &= scan - 1;
                    }
                    if grow == reach {
                        break;
                    }
                    reach = grow;
                }
                if reach != bits {
                    continue;
                }
                let hv = VertexSet::from_indices(n, (0..n).filter(|&v| bits >> v & 1 == 1));
                let (h, map) = g.induced(&hv).unwrap();
                if h.edge_weight_total().is_zero() {
                    continue;
                }
                let alpha = h.edge_weight_total().clone() / g.edge_weight_total().clone();
                let hh = expansion_by_products(&h).unwrap().value.expect_finite();
                let bound = rint(1) - alpha.clone() * alpha.clone().min(hh.clone());
                assert!(q_star <= bound, "{}", g.to_text());

                // Refined bound dominates the score of each sampled partition.
                let vol_h = h.volume_total();
                for (p, q_p) in partitions.iter().zip(&part_scores) {
                    let mut part_vol: Vec<Ratio> = vec![rint(0); p.len()];
                    for (local, &global) in map.iter().enumerate() {
                        let pid = p.part_of(global);
                        part_vol[pid] = part_vol[pid].clone() + h.degree(local).clone();
                    }
                    let sum_sq = part_vol
                        .into_iter()
                        .fold(rint(0), |acc, v| acc + (v / vol_h.clone()).square());
                    let rhs = rint(1) - alpha.clone() * hh.clone()
                        + alpha.clone() * (hh.clone() - alpha.clone()) * sum_sq;
                    assert!(*q_p <= rhs, "{}", g.to_text());
                }
            }
        }
    });
}

#[test]
fn a06_resolution_trichotomy_instances() {
    check(
        "06 split trichotomy on the clique-with-leaves instances",
        || {
            let h = families::clique_with_leaves::<Ratio>(3, 2).unwrap();
            for (alpha, expected) in [
                (rat(1, 4), SplitDecision::NotSplit),
                (rat(1, 2), SplitDecision::Boundary),
                (rat(3, 4), SplitDecision::Split),
            ] {
                let g = families::with_disjoint_edges(&h, &alpha).unwrap();
                let comp = g.components()[0].clone();
                let verdict = resolution_verdict(&g, &comp, Limits::default()).unwrap();
                assert_eq!(verdict.decision, expected, "alpha={alpha}");
                assert_eq!(verdict.alpha, alpha);
                assert_eq!(verdict.hh_component, rat(1, 2));

                let rep = all_optimal(&g).unwrap();
                let optima = rep.all_optimal.unwrap();
                let split_count = optima.iter().filter(|p| p.splits(&comp)).count();
                match expected {
                    SplitDecision::NotSplit => assert_eq!(split_count, 0),
                    SplitDecision::Split => assert_eq!(split_count, optima.len()),
                    SplitDecision::Boundary => {
                        assert!(split_count > 0 && split_count < optima.len());
                        let unsplit = verdict.witness_unsplit.unwrap();
                        let split = verdict.witness_split.unwrap();
                        assert_eq!(score(&g, &unsplit).unwrap().q, rep.q_star);
                        assert_eq!(score(&g, &split).unwrap().q, rep.q_star);
                    }
                }
            }
        },
    );
}

#[test]
fn a07_classic_resolution_limit() {
    check("07 square-root resolution bound implies NotSplit", || {
        let mut rng = SplitMix64::new(707);
        let mut bound_held = 0;
        for _ in 0..100 {
            let planted = random_connected_graph::<Ratio>(&mut rng, 2, 4, false);
            let host = random_connected_graph::<Ratio>(&mut rng, 4, 10, false);
            let g = families::disjoint_union(&[host.clone(), planted]);
            let comp =
                VertexSet::from_indices(g.vertex_count(), host.vertex_count()..g.vertex_count());
            let e_h = g.internal_edges(&comp);
            if e_h.square() < g.edge_weight_total().double() {
                bound_held += 1;
                let verdict = resolution_verdict(&g, &comp, Limits::default()).unwrap();
                assert_eq!(verdict.decision, SplitDecision::NotSplit, "{}", g.to_text());
            }
        }
        assert!(bound_held >= 30, "only {bound_held} samples hit the bound");
    });
}

struct DecompositionCorpus {
    name: &'static str,
    graph: Graph<Ratio>,
    split_e0: Ratio,
    build_alpha: Ratio,
    volume_beta: Ratio,
    volume_delta: Ratio,
}

fn decomposition_corpus() -> Vec<DecompositionCorpus> {
    let mut corpus = vec![DecompositionCorpus {
        name: "four triangles",
        graph: families::disjoint_union(&vec![families::complete::<Ratio>(3); 4]),
        split_e0: rint(3),
        build_alpha: rat(1, 4),
        volume_beta: rat(1, 4),
        volume_delta: rat(1, 2),
    }];
    for n in 5..=12 {
        corpus.push(DecompositionCorpus {
            name: "path",
            graph: families::path::<Ratio>(n),
            split_e0: rint(2),
            build_alpha: rat(1, 4),
            volume_beta: rat(1, 2),
            volume_delta: rat(1, 2),
        });
    }
    for m in [40u64, 100, 200] {
        corpus.push(DecompositionCorpus {
            name: "clique union",
            graph: families::g_alpha(&rat(1, 2), m).unwrap(),
            split_e0: rat(m as i64, 2),
            build_alpha: rat(1, 2),
            volume_beta: rat(1, 2),
            volume_delta: rat(1, 2),
        });
    }
    for k in [4u64, 6] {
        corpus.push(DecompositionCorpus {
            name: "depth-two tree",
            graph: families::kary_depth2::<Ratio>(k).unwrap(),
            split_e0: rat((k * k + k) as i64, 2),
            build_alpha: rat(1, 2),
            volume_beta: rat(1, 2),
            volume_delta: rat(1, 4),
        });
    }
    corpus
}

#[test]
fn a08_decomposition_guarantees() {
    check("08 decomposition postconditions across the corpus", || {
        let limits = Limits::default();
        let delta = rat(1, 2);
        let rho = rho_of(&delta).unwrap();
        for item in decomposition_corpus() {
            let g = &item.graph;
            let e_g = g.edge_weight_total().clone();

            // Single splitter pass: parts below the threshold, boundary at
            // most rho e(G).
            match split_non_expander(g, &item.split_e0, &delta, limits) {
                Ok(trace) => {
                    let threshold = e_g.clone().half().max(item.split_e0.clone());
                    for part in trace.final_partition.parts() {
                        assert!(g.internal_edges(part) <= threshold, "{}", item.name);
                    }
                    assert!(
                        partition_boundary(g, &trace.final_partition) <= rho.clone() * e_g.clone(),
                        "{}",
                        item.name
                    );
                    // Replay the trace: every extracted set satisfied its
                    // selection predicate at the moment it was taken.
                    let mut w = g.full_set();
                    for round in &trace.rounds {
                        let rest = w.difference(&round.extracted);
                        let e_a = g.internal_edges(&round.extracted);
                        let cut = g.cut_between(&round.extracted, &rest);
                        assert!(e_a <= g.internal_edges(&rest), "{}", item.name);
                        assert!(cut < trace.delta_prime.clone() * e_a, "{}", item.name);
                        assert_eq!(cut, round.boundary_added, "{}", item.name);
                        w = rest;
                    }
                }
                Err(Error::HypothesisViolated { .. }) => {}
                Err(other) => panic!("{}: {other:?}", item.name),
            }

            // Refinement of a nontrivial partition: the three tracked
            // inequalities, recomputed from scratch.
            if g.vertex_count() >= 4 {
                let n = g.vertex_count();
                let first = VertexSet::from_indices(n, 0..n / 2);
                let a = Partition::new(n, vec![first.clone(), first.complement()]).unwrap();
                let e0 = item.split_e0.clone();
                match refine(g, &a, &e0, &delta, limits) {
                    Ok(out) => {
                        let b_a = partition_boundary(g, &a);
                        let in_a = max_in(g, &a);
                        let out_a = max_out(g, &a);
                        let b_b = partition_boundary(g, &out.partition);
                        assert!(
                            b_b <= (rint(1) - rho.clone()) * b_a + rho.clone() * e_g.clone(),
                            "{}",
                            item.name
                        );
                        assert!(
                            max_in(g, &out.partition) <= in_a.clone().half().max(e0.clone()),
                            "{}",
                            item.name
                        );
                        assert!(
                            max_out(g, &out.partition) <= out_a + rho.clone() * in_a,
                            "{}",
                            item.name
                        );
                    }
                    Err(Error::HypothesisViolated { .. }) => {}
                    Err(other) => panic!("{}: {other:?}", item.name),
                }
            }

            // k-round builder: the full inequality chain.
            match build_partition(g, &item.build_alpha, &delta, limits) {
                Ok(out) => {
                    let k = {
                        let mut k = 0;
                        let mut x = item.build_alpha.clone();
                        while x < rint(1) {
                            x = x.double();
                            k += 1;
                        }
                        k
                    };
                    assert!(out.score.q >= out.bound, "{}", item.name);
                    if k >= 1 {
                        assert!(out.score.q > out.bound, "{}", item.name);
                        let fin = max_in(g, &out.partition);
                        let fout = max_out(g, &out.partition);
                        assert!(
                            fin <= item.build_alpha.clone() * e_g.clone(),
                            "{}",
                            item.name
                        );
                        assert!(fout < rho.clone().double() * e_g.clone(), "{}", item.name);
                        let max_vol = out
                            .partition
                            .parts()
                            .iter()
                            .map(|p| g.volume(p))
                            .fold(rint(0), |acc, v| acc.max(v));
                        assert!(
                            max_vol
                                < (item.build_alpha.clone() + rho.clone()).double() * e_g.clone(),
                            "{}",
                            item.name
                        );
                        assert!(max_vol <= e_g.double(), "{}", item.name);
                    }
                }
                Err(Error::HypothesisViolated { .. }) => {}
                Err(other) => panic!("{}: {other:?}", item.name),
            }

            // Volume-parameterized process: deletion certificate and score.
            match volume_decompose(g, &item.volume_beta, &item.volume_delta, limits) {
                Ok(out) => {
                    let vol_g = g.volume_total();
                    let mut k = 0;
                    let mut x = item.volume_beta.clone();
                    while x < rint(1) {
                        x = x.double();
                        k += 1;
                    }
                    let deleted: Ratio = out
                        .rounds
                        .iter()
                        .fold(rint(0), |acc, r| acc + r.boundary_added.clone());
                    assert_eq!(deleted, out.deleted_total, "{}", item.name);
                    assert!(
                        out.deleted_total <= item.volume_delta.clone() * rint(k) * vol_g.clone(),
                        "{}",
                        item.name
                    );
                    let mut touches = vec![0i64; g.vertex_count()];
                    for r in &out.rounds {
                        for v in r.extracted.iter() {
                            touches[v] += 1;
                        }
                    }
                    assert!(touches.iter().all(|&t| t <= k), "{}", item.name);
                    for part in out.partition.parts() {
                        assert!(
                            g.volume(part) <= item.volume_beta.clone() * vol_g.clone(),
                            "{}",
                            item.name
                        );
                    }
                    assert!(out.score.q >= out.bound, "{}", item.name);
                }
                Err(Error::HypothesisViolated { .. }) => {}
                Err(other) => panic!("{}: {other:?}", item.name),
            }
        }
    });
}

#[test]
fn a09_clique_union_modularity() {
    check("09 clique-union modularity tracks 1 - f(alpha)", || {
        for alpha in [rat(1, 4), rat(1, 2)] {
            for m in [100u64, 200] {
                let g = families::g_alpha(&alpha, m).unwrap();
                assert_eq!(*g.edge_weight_total(), rint(m as i64));
                let comps = g.components();
                // Every component has zero modularity, so each stays whole
                // in any optimal partition and the component partition is
                // optimal; its score is q*.
                for comp in &comps {
                    assert!(
                        zero_component_unsplit(&g, comp, Limits::default()).unwrap(),
                        "m={m}"
                    );
                }
                let p = Partition::new(g.vertex_count(), comps).unwrap();
                let q_star = score(&g, &p).unwrap().q;
                let target = rint(1) - f_of_alpha(&alpha).unwrap();
                let diff = q_star - target;
                // |diff| <= 5 m^{-1/2}, compared in squared form exactly.
                assert!(diff.square() <= rat(25, m as i64), "alpha={alpha} m={m}");
            }
        }
    });
}

#[test]
fn a10_padding_modularity_lower_bound() {
    check(
        "10 padded-subgraph partition beats 1 - alpha^2 - 2/m",
        || {
            let k5 = families::complete::<Ratio>(5);
            for m in [50u64, 100] {
                let g = families::g_h_padding(&k5, m).unwrap();
                let p = Partition::new(g.vertex_count(), g.components()).unwrap();
                let q = score(&g, &p).unwrap().q;
                let m_r = rint(m as i64);
                // Explicit score of the {V(H)} + edges partition.
                let vol_h = rint(20);
                let literal = rint(1)
                    - (vol_h.square() + rint(4) * (m_r.clone() - rint(10)))
                        / (rint(4) * m_r.square());
                assert_eq!(q, literal, "m={m}");
                let bound = rint(1) - rat(10, m as i64).square() - rat(2, m as i64);
                assert!(q >= bound, "m={m}");
            }
        },
    );
}

#[test]
fn a11_depth_two_tree_counterexample() {
    check(
        "11 deep tree: high-volume expander subgraph, modularity near 1",
        || {
            for k in [4u64, 6] {
                let g = families::kary_depth2::<Ratio>(k).unwrap();
                let ki = k as i64;
                let inner = VertexSet::from_indices(g.vertex_count(), 0..=k as usize);
                let (star, _) = g.induced(&inner).unwrap();
                assert_eq!(conductance(&star).unwrap().value.expect_finite(), rint(1));

                let vol_ratio = g.volume(&inner) / g.volume_total();
                assert_eq!(vol_ratio, rat(ki * ki + 2 * ki, 2 * ki * ki + 2 * ki));
                assert!(vol_ratio > rat(1, 2), "k={k}");

                // Root alone, each inner vertex with its leaves.
                let n = g.vertex_count();
                let mut parts = vec![VertexSet::singleton(n, 0)];
                for i in 1..=k as usize {
                    let mut part = VertexSet::singleton(n, i);
                    for j in 1..=k as usize {
                        part.insert(k as usize + (i - 1) * k as usize + j);
                    }
                    parts.push(part);
                }
                let p = Partition::new(n, parts).unwrap();
                let q = score(&g, &p).unwrap().q;
                assert!(q > rint(1) - rat(2, ki), "k={k}");
            }
        },
    );
}

#[test]
fn a12_spectral_mixing_bound() {
    check("12 expansion dominates one minus the spectral gap", || {
        let k4 = spectral_gap(&families::complete::<Ratio>(4)).unwrap();
        assert!((k4.gap - 1.0 / 3.0).abs() <= 1e-9);
        let c4 = spectral_gap(&families::cycle::<Ratio>(4)).unwrap();
        assert!((c4.gap - 1.0).abs() <= 1e-9);

        let mut rng = SplitMix64::new(1212);
        for _ in 0..100 {
            let g = random_connected_graph::<Ratio>(&mut rng, 2, 10, false);
            let hh = expansion_by_products(&g).unwrap().value.expect_finite();
            let gap = spectral_gap(&g).unwrap().gap;
            assert!(hh.to_f64() >= 1.0 - gap - 1e-8, "{}", g.to_text());
        }
    });
}
