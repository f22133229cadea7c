//! Verification suites behind `modex verify`: property checks over seeded
//! random corpora plus the fixed benchmark instances. Every failure carries
//! a serialized counterexample.

use crate::SuiteName;
use modex::bounds::{
    classic_resolution_bound, detailed_upper_bound, partial_score, resolution_verdict,
    upper_bound_subgraph, zero_component_unsplit, SplitDecision,
};
use modex::decompose::{
    build_partition, max_in, max_out, partition_boundary, rho_of, split_non_expander,
    volume_decompose,
};
use modex::expansion::expansion_by_products;
use modex::families;
use modex::modularity::{all_optimal, is_zero_modularity, maximize, score, ZeroModularityMethod};
use modex::rng::{random_connected_graph, random_graph, random_partition, SplitMix64};
use modex::{rat, rint, Error, Graph, Limits, Partition, Ratio, Scalar, VertexSet};

pub struct Check {
    pub name: String,
    pub pass: bool,
    pub counterexample: Option<String>,
}

fn check(name: &str, result: Result<(), String>) -> Check {
    match result {
        Ok(()) => Check {
            name: name.to_string(),
            pass: true,
            counterexample: None,
        },
        Err(cx) => Check {
            name: name.to_string(),
            pass: false,
            counterexample: Some(cx),
        },
    }
}

pub fn run_suite(which: SuiteName, seed: u64, samples: usize, limits: Limits) -> Vec<Check> {
    match which {
        SuiteName::Bounds => bounds_suite(seed, samples, limits),
        SuiteName::ZeroMod => zero_mod_suite(seed, samples, limits),
        SuiteName::Constructions => constructions_suite(limits),
        SuiteName::Decomposition => decomposition_suite(limits),
        SuiteName::Resolution => resolution_suite(seed, samples, limits),
        SuiteName::All => {
            let mut all = bounds_suite(seed, samples, limits);
            all.extend(zero_mod_suite(seed, samples, limits));
            all.extend(constructions_suite(limits));
            all.extend(decomposition_suite(limits));
            all.extend(resolution_suite(seed, samples, limits));
            all
        }
    }
}

/// Connected induced subgraphs of `g` on 2..=max_size vertices.
fn connected_subsets(g: &Graph<Ratio>, max_size: usize) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let mut adj = vec![0u32; n];
    for e in g.edges() {
        if e.u != e.v {
            adj[e.u] |= 1 << e.v;
            adj[e.v] |= 1 << e.u;
        }
    }
    let mut out = Vec::new();
    for bits in 1u32..(1 << n) {
        let size = bits.count_ones() as usize;
        if size < 2 || size > max_size {
            continue;
        }
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
        if reach == bits {
            out.push(VertexSet::from_indices(
                n,
                (0..n).filter(|&v| bits >> v & 1 == 1),
            ));
        }
    }
    out
}

fn bounds_suite(seed: u64, samples: usize, limits: Limits) -> Vec<Check> {
    let mut rng = SplitMix64::new(seed);
    let mut upper = Ok(());
    let mut detailed = Ok(());
    let mut two_over = Ok(());
    let mut done = 0;
    while done < samples {
        let g = random_graph::<Ratio>(&mut rng, 2, 8, true);
        if *g.edge_weight_total() == rint(0) {
            continue;
        }
        done += 1;
        let q_star = match maximize(&g) {
            Ok(rep) => rep.q_star,
            Err(e) => {
                upper = upper.and(Err(format!("{e}\n{}", g.to_text())));
                continue;
            }
        };
        let partitions: Vec<Partition> = (0..5)
            .map(|_| random_partition(&mut rng, g.vertex_count()))
            .collect();
        for hv in connected_subsets(&g, 6) {
            let rep = match upper_bound_subgraph(&g, &hv, limits) {
                Ok(r) => r,
                Err(_) => continue,
            };
            if upper.is_ok() && q_star > rep.bound {
                upper = Err(format!("subgraph {hv}\n{}", g.to_text()));
            }
            for p in &partitions {
                let rhs = match detailed_upper_bound(&g, &hv, p, limits) {
                    Ok(r) => r,
                    Err(_) => continue,
                };
                let q_p = score(&g, p).unwrap().q;
                if detailed.is_ok() && q_p > rhs {
                    detailed = Err(format!("subgraph {hv} partition {p}\n{}", g.to_text()));
                }
            }
        }
        if g.is_connected() && !g.has_zero_degree_vertex() {
            let hh = expansion_by_products(&g).unwrap().value.expect_finite();
            if two_over.is_ok() && hh < rint(2) / g.edge_weight_total().clone() {
                two_over = Err(g.to_text());
            }
        }
    }
    vec![
        check("bounds.subgraph-upper-bound", upper),
        check("bounds.detailed-upper-bound-dominates", detailed),
        check("bounds.hh-at-least-two-over-edges", two_over),
    ]
}

fn zero_mod_suite(seed: u64, samples: usize, limits: Limits) -> Vec<Check> {
    let mut rng = SplitMix64::new(seed);
    let mut agree = Ok(());
    let mut high_h = Ok(());
    let mut done = 0;
    while done < samples {
        let g = random_graph::<Ratio>(&mut rng, 2, 7, true);
        if *g.edge_weight_total() == rint(0) {
            continue;
        }
        done += 1;
        let direct = is_zero_modularity(&g, ZeroModularityMethod::Direct).unwrap();
        let geo = is_zero_modularity(&g, ZeroModularityMethod::GeometricMean).unwrap();
        let prod = is_zero_modularity(&g, ZeroModularityMethod::Products).unwrap();
        if agree.is_ok() && !(direct == geo && direct == prod) {
            agree = Err(g.to_text());
        }
        if direct && !g.has_zero_degree_vertex() && g.vertex_count() >= 2 {
            let h = conductance_with(&g, limits);
            if let Some(h) = h {
                if high_h.is_ok() && h < rat(1, 2) {
                    high_h = Err(g.to_text());
                }
            }
        }
    }
    vec![
        check("zero-mod.three-methods-agree", agree),
        check("zero-mod.zero-implies-conductance-half", high_h),
    ]
}

fn conductance_with(g: &Graph<Ratio>, limits: Limits) -> Option<Ratio> {
    modex::expansion::conductance_with_limits(g, limits)
        .ok()
        .map(|r| r.value.expect_finite())
}

fn constructions_suite(limits: Limits) -> Vec<Check> {
    let mut closed_form = Ok(());
    for k in 2u64..=5 {
        for a in 1i64..=2 {
            for b in 1i64..=2 {
                let hw = families::weighted_clique_loops(&rint(a), &rint(b), k).unwrap();
                let expected = rat(b, a + b) * (rint(1) + rat(1, k as i64 - 1));
                let got = expansion_by_products(&hw).unwrap().value.expect_finite();
                if closed_form.is_ok() && got != expected {
                    closed_form = Err(hw.to_text());
                }
            }
        }
    }

    let mut equivalence = Ok(());
    for k in 2u64..=3 {
        for l in 1u64..=2 {
            let h = families::clique_with_leaves::<Ratio>(k, l).unwrap();
            let hw = families::weighted_clique_loops(&rint(2 * l as i64), &rint(k as i64 - 1), k)
                .unwrap();
            let e1 = expansion_by_products(&h).unwrap().value.expect_finite();
            let e2 = expansion_by_products(&hw).unwrap().value.expect_finite();
            if equivalence.is_ok() && e1 != e2 {
                equivalence = Err(h.to_text());
                continue;
            }
            for alpha in [rat(1, 2), rint(1)] {
                let g = families::with_disjoint_edges(&h, &alpha).unwrap();
                let gw = families::with_disjoint_edges(&hw, &alpha).unwrap();
                let q1 = maximize(&g).unwrap().q_star;
                let q2 = maximize(&gw).unwrap().q_star;
                if equivalence.is_ok() && q1 != q2 {
                    equivalence = Err(g.to_text());
                }
            }
        }
    }

    let mut windmill = Ok(());
    for l in [2u64, 3, 4] {
        let w = families::windmill::<Ratio>(l).unwrap();
        let h = conductance_with(&w, limits).unwrap();
        let q = maximize(&w).unwrap().q_star;
        if windmill.is_ok() && !(h == rat(1, 2) && q > rint(0)) {
            windmill = Err(w.to_text());
        }
    }

    let mut structure = Ok(());
    for (alpha, m) in [(rat(1, 2), 20u64), (rat(1, 4), 60)] {
        let g = families::g_alpha(&alpha, m).unwrap();
        let total_ok = *g.edge_weight_total() == rint(m as i64);
        let comps_ok = g.components().iter().all(|c| {
            let (sub, _) = g.induced(c).unwrap();
            let n = sub.vertex_count() as i64;
            *sub.edge_weight_total() == rat(n * (n - 1), 2)
        });
        if structure.is_ok() && !(total_ok && comps_ok) {
            structure = Err(g.to_text());
        }
    }

    let collapse = {
        let h = families::clique_with_leaves::<Ratio>(3, 2).unwrap();
        let (c, _) = families::collapse_pendants(&h);
        let hw = families::weighted_clique_loops(&rint(4), &rint(2), 3).unwrap();
        if c == hw {
            Ok(())
        } else {
            Err(c.to_text())
        }
    };

    let deterministic = {
        let a = families::g_alpha(&rat(1, 2), 40).unwrap().to_text();
        let b = families::g_alpha(&rat(1, 2), 40).unwrap().to_text();
        if a == b {
            Ok(())
        } else {
            Err(a)
        }
    };

    vec![
        check("constructions.loop-clique-closed-form", closed_form),
        check("constructions.leaves-loops-equivalence", equivalence),
        check("constructions.windmill", windmill),
        check("constructions.clique-union-structure", structure),
        check("constructions.pendant-collapse-identity", collapse),
        check("constructions.deterministic-output", deterministic),
    ]
}

struct DecompositionCase {
    name: &'static str,
    graph: Graph<Ratio>,
    e0: Ratio,
    alpha: Ratio,
    beta: Ratio,
    volume_delta: Ratio,
}

fn decomposition_suite(limits: Limits) -> Vec<Check> {
    let corpus = vec![
        DecompositionCase {
            name: "triangles",
            graph: families::disjoint_union(&vec![families::complete::<Ratio>(3); 4]),
            e0: rint(3),
            alpha: rat(1, 4),
            beta: rat(1, 4),
            volume_delta: rat(1, 2),
        },
        DecompositionCase {
            name: "path",
            graph: families::path::<Ratio>(9),
            e0: rint(2),
            alpha: rat(1, 4),
            beta: rat(1, 2),
            volume_delta: rat(1, 2),
        },
        DecompositionCase {
            name: "clique-union",
            graph: families::g_alpha(&rat(1, 2), 40).unwrap(),
            e0: rint(20),
            alpha: rat(1, 2),
            beta: rat(1, 2),
            volume_delta: rat(1, 2),
        },
        DecompositionCase {
            name: "tree",
            graph: families::kary_depth2::<Ratio>(4).unwrap(),
            e0: rint(10),
            alpha: rat(1, 2),
            beta: rat(1, 2),
            volume_delta: rat(1, 4),
        },
    ];
    let delta = rat(1, 2);
    let rho = rho_of(&delta).unwrap();

    let mut splitter = Ok(());
    let mut builder = Ok(());
    let mut volume = Ok(());
    for case in &corpus {
        let (name, g) = (case.name, &case.graph);
        let (e0, alpha, beta, vdelta) = (&case.e0, &case.alpha, &case.beta, &case.volume_delta);
        match split_non_expander(g, e0, &delta, limits) {
            Ok(trace) => {
                let threshold = g.edge_weight_total().clone().half().max(e0.clone());
                let parts_ok = trace
                    .final_partition
                    .parts()
                    .iter()
                    .all(|p| g.internal_edges(p) <= threshold);
                let boundary_ok = partition_boundary(g, &trace.final_partition)
                    <= rho.clone() * g.edge_weight_total().clone();
                if splitter.is_ok() && !(parts_ok && boundary_ok) {
                    splitter = Err(format!("{name}\n{}", g.to_text()));
                }
            }
            Err(Error::HypothesisViolated { .. }) => {}
            Err(e) => {
                if splitter.is_ok() {
                    splitter = Err(format!("{name}: {e}"));
                }
            }
        }
        match build_partition(g, alpha, &delta, limits) {
            Ok(out) => {
                let chain_ok = out.score.q > out.bound
                    && max_in(g, &out.partition) <= alpha.clone() * g.edge_weight_total().clone()
                    && max_out(g, &out.partition)
                        < rho.clone().double() * g.edge_weight_total().clone();
                if builder.is_ok() && !chain_ok {
                    builder = Err(format!("{name}\n{}", g.to_text()));
                }
            }
            Err(Error::HypothesisViolated { .. }) => {}
            Err(e) => {
                if builder.is_ok() {
                    builder = Err(format!("{name}: {e}"));
                }
            }
        }
        match volume_decompose(g, beta, vdelta, limits) {
            Ok(out) => {
                let vol_g = g.volume_total();
                let parts_ok = out
                    .partition
                    .parts()
                    .iter()
                    .all(|p| g.volume(p) <= beta.clone() * vol_g.clone());
                if volume.is_ok() && !(parts_ok && out.score.q >= out.bound) {
                    volume = Err(format!("{name}\n{}", g.to_text()));
                }
            }
            Err(Error::HypothesisViolated { .. }) => {}
            Err(e) => {
                if volume.is_ok() {
                    volume = Err(format!("{name}: {e}"));
                }
            }
        }
    }
    vec![
        check("decomposition.splitter-postconditions", splitter),
        check("decomposition.builder-chain", builder),
        check("decomposition.volume-certificate", volume),
    ]
}

fn resolution_suite(seed: u64, samples: usize, limits: Limits) -> Vec<Check> {
    let mut trichotomy = Ok(());
    let h = families::clique_with_leaves::<Ratio>(3, 2).unwrap();
    for (alpha, expected) in [
        (rat(1, 4), SplitDecision::NotSplit),
        (rat(1, 2), SplitDecision::Boundary),
        (rat(3, 4), SplitDecision::Split),
    ] {
        let g = families::with_disjoint_edges(&h, &alpha).unwrap();
        let comp = g.components()[0].clone();
        let verdict = resolution_verdict(&g, &comp, limits).unwrap();
        let mut ok = verdict.decision == expected;
        if ok {
            let rep = all_optimal(&g).unwrap();
            let optima = rep.all_optimal.unwrap();
            let split_count = optima.iter().filter(|p| p.splits(&comp)).count();
            ok = match expected {
                SplitDecision::NotSplit => split_count == 0,
                SplitDecision::Split => split_count == optima.len(),
                SplitDecision::Boundary => split_count > 0 && split_count < optima.len(),
            };
        }
        if trichotomy.is_ok() && !ok {
            trichotomy = Err(g.to_text());
        }
    }

    // The one-part contribution of a component union is alpha - alpha^2.
    let mut partial = Ok(());
    for alpha in [rat(1, 4), rat(1, 2), rat(3, 4)] {
        let g = families::with_disjoint_edges(&h, &alpha).unwrap();
        let comp = g.components()[0].clone();
        let got = partial_score(&g, &comp, std::slice::from_ref(&comp)).unwrap();
        let a = g.internal_edges(&comp) / g.edge_weight_total().clone();
        if partial.is_ok() && got != a.clone() - a.square() {
            partial = Err(g.to_text());
        }
    }

    let mut classic = Ok(());
    let mut zero_unsplit = Ok(());
    let mut rng = SplitMix64::new(seed);
    for _ in 0..samples.min(100) {
        let planted = random_connected_graph::<Ratio>(&mut rng, 2, 4, false);
        let host = random_connected_graph::<Ratio>(&mut rng, 4, 9, false);
        let g = families::disjoint_union(&[host.clone(), planted]);
        let comp = VertexSet::from_indices(g.vertex_count(), host.vertex_count()..g.vertex_count());
        let verdict = resolution_verdict(&g, &comp, limits).unwrap();
        if classic_resolution_bound(&g, &comp).unwrap()
            && classic.is_ok()
            && verdict.decision == SplitDecision::Split
        {
            classic = Err(g.to_text());
        }
        if g.internal_edges(&comp) < *g.edge_weight_total()
            && zero_component_unsplit(&g, &comp, limits).unwrap()
            && zero_unsplit.is_ok()
            && verdict.decision != SplitDecision::NotSplit
        {
            zero_unsplit = Err(g.to_text());
        }
    }

    vec![
        check("resolution.trichotomy-instances", trichotomy),
        check("resolution.partial-score-one-part", partial),
        check("resolution.classic-bound-never-splits", classic),
        check("resolution.zero-component-unsplit", zero_unsplit),
    ]
}
