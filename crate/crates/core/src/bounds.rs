//! Checkable inequalities: subgraph upper bounds on modularity, the
//! no-expander and volume-parameterized lower-bound formulas, the spectral
//! upper bound, the partial-modularity functional, and the component split
//! verdict with its classic corollaries.
//!
//! Every verdict comparison is exact rational arithmetic; `Boundary` means
//! exact equality, never a tolerance band.

use crate::error::{Error, Result};
use crate::expansion::expansion_by_products_with_limits;
use crate::graph::Graph;
use crate::modularity::{
    component_optimum, f_of_alpha, is_zero_modularity_with_limits, ZeroModularityMethod,
};
use crate::scalar::Scalar;
use crate::set::{Partition, VertexSet};
use crate::spectral::spectral_gap;
use crate::{Limits, Ratio};
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitDecision {
    Split,
    NotSplit,
    Boundary,
}

impl std::fmt::Display for SplitDecision {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SplitDecision::Split => write!(f, "Split"),
            SplitDecision::NotSplit => write!(f, "NotSplit"),
            SplitDecision::Boundary => write!(f, "Boundary"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SplitVerdict<S: Scalar = Ratio> {
    pub decision: SplitDecision,
    /// Relative size `e(H)/e(G)` of the component.
    pub alpha: S,
    /// Expansion-by-products of the component.
    pub hh_component: S,
    /// On `Boundary`: an optimal partition keeping the component whole.
    pub witness_unsplit: Option<Partition>,
    /// On `Boundary`: an optimal partition splitting the component along an
    /// expansion witness.
    pub witness_split: Option<Partition>,
}

#[derive(Debug, Clone)]
pub struct BoundReport<S: Scalar = Ratio> {
    pub bound: S,
    /// Labeled inputs the bound is reproducible from.
    pub ingredients: Vec<(&'static str, S)>,
}

/// `q*(G) <= 1 - alpha min(hh_H, alpha)` for the subgraph induced on
/// `h_vertices`, where `alpha = e(H)/e(G)`.
pub fn upper_bound_subgraph<S: Scalar>(
    g: &Graph<S>,
    h_vertices: &VertexSet,
    limits: Limits,
) -> Result<BoundReport<S>> {
    let (h, _) = g.induced(h_vertices)?;
    if h.edge_weight_total().is_zero() {
        return Err(Error::EdgelessSubgraph);
    }
    let alpha = h.edge_weight_total().clone() / g.edge_weight_total().clone();
    let hh = expansion_by_products_with_limits(&h, limits)?
        .value
        .expect_finite();
    let bound = S::one() - alpha.clone() * S::min_ref(&hh, &alpha).clone();
    Ok(BoundReport {
        bound,
        ingredients: vec![("alpha", alpha), ("hh", hh)],
    })
}

/// The refined right-hand side `1 - alpha hh + alpha (hh - alpha) sum x_B^2`
/// where the `x_B` are the volume fractions (inside `H`) of the partition's
/// parts restricted to `H`. Dominates `score(g, p).q` for every partition.
pub fn detailed_upper_bound<S: Scalar>(
    g: &Graph<S>,
    h_vertices: &VertexSet,
    p: &Partition,
    limits: Limits,
) -> Result<S> {
    if p.universe() != g.vertex_count() {
        return Err(Error::PartitionMismatch);
    }
    let (h, map) = g.induced(h_vertices)?;
    if h.edge_weight_total().is_zero() {
        return Err(Error::EdgelessSubgraph);
    }
    let alpha = h.edge_weight_total().clone() / g.edge_weight_total().clone();
    let hh = expansion_by_products_with_limits(&h, limits)?
        .value
        .expect_finite();
    let mut local_of = vec![usize::MAX; g.vertex_count()];
    for (new, &old) in map.iter().enumerate() {
        local_of[old] = new;
    }
    let vol_h = h.volume_total();
    let mut sum_squares = S::zero();
    for part in p.restrict(h_vertices) {
        let mut vol = S::zero();
        for v in part.iter() {
            vol = vol + h.degree(local_of[v]).clone();
        }
        sum_squares = sum_squares + (vol / vol_h.clone()).square();
    }
    Ok(S::one() - alpha.clone() * hh.clone() + alpha.clone() * (hh - alpha) * sum_squares)
}

/// Smallest `k >= 0` with `2^k >= 1/alpha`, for `0 < alpha <= 1`.
pub fn ceil_log2_inverse<S: Scalar>(alpha: &S) -> Result<u32> {
    if !alpha.is_positive_value() || *alpha > S::one() {
        return Err(Error::OutOfRange("argument must satisfy 0 < alpha <= 1"));
    }
    let mut k = 0;
    let mut x = alpha.clone();
    while x < S::one() {
        x = x.double();
        k += 1;
    }
    Ok(k)
}

/// `1 - f(min(1, alpha + 3 delta / 2)) - (3/2) delta ceil(log2(1/alpha))`:
/// the modularity guaranteed when no subgraph of relative size `alpha` is a
/// `delta`-expander.
pub fn lower_bound_no_expanders<S: Scalar>(alpha: &S, delta: &S) -> Result<S> {
    if !alpha.is_positive_value() || *alpha > S::one() {
        return Err(Error::OutOfRange("alpha must satisfy 0 < alpha <= 1"));
    }
    if *delta < S::zero() || *delta > S::one() {
        return Err(Error::OutOfRange("delta must satisfy 0 <= delta <= 1"));
    }
    let k = ceil_log2_inverse(alpha)?;
    let three_halves_delta = S::ratio(3, 2) * delta.clone();
    let arg = alpha.clone() + three_halves_delta.clone();
    let arg = S::min_ref(&S::one(), &arg).clone();
    Ok(S::one() - f_of_alpha(&arg)? - three_halves_delta * S::from_int(k as i64))
}

/// `1 - f(beta) - 2 delta ceil(log2(1/beta))`: the volume-parameterized
/// analogue.
pub fn lower_bound_volume<S: Scalar>(beta: &S, delta: &S) -> Result<S> {
    if !beta.is_positive_value() || *beta > S::one() {
        return Err(Error::OutOfRange("beta must satisfy 0 < beta <= 1"));
    }
    if *delta < S::zero() || *delta > S::one() {
        return Err(Error::OutOfRange("delta must satisfy 0 <= delta <= 1"));
    }
    let k = ceil_log2_inverse(beta)?;
    Ok(S::one() - f_of_alpha(beta)? - delta.double() * S::from_int(k as i64))
}

/// `q*(G) <= 1 - alpha min(alpha, 1 - gap_H)` via the eigensolver.
pub fn spectral_upper_bound<S: Scalar>(g: &Graph<S>, h_vertices: &VertexSet) -> Result<f64> {
    let (h, _) = g.induced(h_vertices)?;
    if h.edge_weight_total().is_zero() {
        return Err(Error::EdgelessSubgraph);
    }
    let report = spectral_gap(&h)?;
    let alpha = (h.edge_weight_total().clone() / g.edge_weight_total().clone()).to_f64();
    Ok(1.0 - alpha * alpha.min(1.0 - report.gap))
}

/// Contribution of a component union `h` to the modularity score of a
/// partition `parts` of `h`: `sum_B e(B)/e(G) - vol(B)^2/vol(G)^2`.
pub fn partial_score<S: Scalar>(g: &Graph<S>, h: &VertexSet, parts: &[VertexSet]) -> Result<S> {
    if g.edge_weight_total().is_zero() {
        return Err(Error::EmptyGraph);
    }
    let comps = g.components();
    let mut union = VertexSet::empty(g.vertex_count());
    for c in &comps {
        if c.is_subset_of(h) {
            union = union.union(c);
        } else if !c.is_disjoint(h) {
            return Err(Error::NotAComponentUnion);
        }
    }
    if &union != h || h.is_empty() {
        return Err(Error::NotAComponentUnion);
    }
    let mut covered = VertexSet::empty(g.vertex_count());
    for part in parts {
        if part.is_empty() || !part.is_subset_of(h) || !part.is_disjoint(&covered) {
            return Err(Error::PartitionMismatch);
        }
        covered = covered.union(part);
    }
    if &covered != h {
        return Err(Error::PartitionMismatch);
    }
    let m = g.edge_weight_total().clone();
    let vol_sq = g.volume_total().square();
    let mut total = S::zero();
    for part in parts {
        total =
            total + g.internal_edges(part) / m.clone() - g.volume(part).square() / vol_sq.clone();
    }
    Ok(total)
}

fn check_component<S: Scalar>(g: &Graph<S>, component: &VertexSet) -> Result<()> {
    if g.has_zero_degree_vertex() {
        return Err(Error::IsolatedVerticesPresent);
    }
    if !g.components().iter().any(|c| c == component) {
        return Err(Error::NotAComponent);
    }
    Ok(())
}

/// The resolution trichotomy for one connected component: compares
/// `alpha = e(H)/e(G)` with `hh_H` exactly. On `Boundary` both optimal
/// witnesses are produced: the component kept whole, and the component
/// bipartitioned along an expansion witness (the rest of the graph is
/// partitioned optimally in both).
pub fn resolution_verdict<S: Scalar>(
    g: &Graph<S>,
    component: &VertexSet,
    limits: Limits,
) -> Result<SplitVerdict<S>> {
    check_component(g, component)?;
    let (h, map) = g.induced(component)?;
    let alpha = h.edge_weight_total().clone() / g.edge_weight_total().clone();
    let rep = expansion_by_products_with_limits(&h, limits)?;
    let hh = rep.value.expect_finite();
    let decision = match alpha.partial_cmp(&hh).expect("comparable") {
        Ordering::Less => SplitDecision::NotSplit,
        Ordering::Greater => SplitDecision::Split,
        Ordering::Equal => SplitDecision::Boundary,
    };
    let (witness_unsplit, witness_split) = if decision == SplitDecision::Boundary {
        let mut rest_parts: Vec<VertexSet> = Vec::new();
        for other in g.components() {
            if &other == component {
                continue;
            }
            let (_, mut lists) = component_optimum(g, &other, limits, false)?;
            rest_parts.append(&mut lists[0]);
        }
        let mut unsplit_parts = rest_parts.clone();
        unsplit_parts.push(component.clone());
        let unsplit = Partition::new(g.vertex_count(), unsplit_parts)?;

        let u_star = VertexSet::from_indices(g.vertex_count(), rep.witness.iter().map(|i| map[i]));
        let mut split_parts = rest_parts;
        split_parts.push(component.difference(&u_star));
        split_parts.push(u_star);
        let split = Partition::new(g.vertex_count(), split_parts)?;
        (Some(unsplit), Some(split))
    } else {
        (None, None)
    };
    Ok(SplitVerdict {
        decision,
        alpha,
        hh_component: hh,
        witness_unsplit,
        witness_split,
    })
}

/// `e(H)^2 < 2 e(G)` (squared form of the classic square-root resolution
/// bound); when true the component is never split.
pub fn classic_resolution_bound<S: Scalar>(g: &Graph<S>, component: &VertexSet) -> Result<bool> {
    check_component(g, component)?;
    let e_h = g.internal_edges(component);
    Ok(e_h.square() < g.edge_weight_total().double())
}

/// True iff the component itself has zero modularity, in which case every
/// optimal partition of `g` keeps it whole.
pub fn zero_component_unsplit<S: Scalar>(
    g: &Graph<S>,
    component: &VertexSet,
    limits: Limits,
) -> Result<bool> {
    check_component(g, component)?;
    if g.internal_edges(component) >= *g.edge_weight_total() {
        return Err(Error::OutOfRange(
            "component must have fewer edges than the host graph",
        ));
    }
    let (h, _) = g.induced(component)?;
    is_zero_modularity_with_limits(&h, ZeroModularityMethod::Products, limits)
}
