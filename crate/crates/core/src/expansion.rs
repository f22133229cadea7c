//! Exact computation of the three edge-expansion constants with witness
//! sets: the conductance (Cheeger constant) `h`, the product-normalized
//! variant `hh`, and the expansion-by-edges `h'`.
//!
//! All three are exact minima over every bipartition, found by subset
//! enumeration with vertex 0 fixed on one side (`2^(n-1) - 1` candidates).
//! The reported witness is the canonical minimizer: the set whose bitmask is
//! numerically smallest among all sets attaining the minimum, complements
//! included.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::set::VertexSet;
use crate::{Limits, Ratio};
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionKind {
    Conductance,
    ByProducts,
    ByEdges,
}

/// Expansion value; `Infinite` marks the degenerate expansion-by-edges case
/// where every bipartition has a zero-edge side.
#[derive(Debug, Clone, PartialEq)]
pub enum ExpansionValue<S> {
    Finite(S),
    Infinite,
}

impl<S: Scalar> ExpansionValue<S> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExpansionValue::Infinite)
    }

    pub fn as_finite(&self) -> Option<&S> {
        match self {
            ExpansionValue::Finite(v) => Some(v),
            ExpansionValue::Infinite => None,
        }
    }

    pub fn expect_finite(self) -> S {
        match self {
            ExpansionValue::Finite(v) => v,
            ExpansionValue::Infinite => panic!("expansion value is infinite"),
        }
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExpansionValue::Infinite, ExpansionValue::Infinite) => Ordering::Equal,
            (ExpansionValue::Infinite, _) => Ordering::Greater,
            (_, ExpansionValue::Infinite) => Ordering::Less,
            (ExpansionValue::Finite(a), ExpansionValue::Finite(b)) => {
                a.partial_cmp(b).expect("comparable expansion values")
            }
        }
    }
}

impl<S: Scalar> std::fmt::Display for ExpansionValue<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExpansionValue::Finite(v) => write!(f, "{v}"),
            ExpansionValue::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionReport<S: Scalar = Ratio> {
    pub value: ExpansionValue<S>,
    pub witness: VertexSet,
    pub kind: ExpansionKind,
}

struct SideStats<S> {
    cut: S,
    vol_a: S,
    vol_b: S,
    e_a: S,
    e_b: S,
}

/// The enumeration operations require at least two vertices of positive
/// degree, and refuse graphs with isolated vertices (a zero-volume side has
/// no defined expansion).
fn precheck<S: Scalar>(g: &Graph<S>) -> Result<()> {
    if g.positive_degree_count() < 2 {
        return Err(Error::TooFewVertices);
    }
    if g.has_zero_degree_vertex() {
        return Err(Error::ZeroVolumeSide);
    }
    Ok(())
}

fn scan<S, F>(
    g: &Graph<S>,
    limits: Limits,
    kind: ExpansionKind,
    mut value_of: F,
) -> Result<ExpansionReport<S>>
where
    S: Scalar,
    F: FnMut(&SideStats<S>) -> ExpansionValue<S>,
{
    precheck(g)?;
    let n = g.vertex_count();
    if n > limits.subset_max {
        return Err(Error::SizeLimitExceeded {
            what: "subset enumeration",
            size: n,
            cap: limits.subset_max,
        });
    }
    let edges: Vec<(usize, usize, &S)> = g.edges().iter().map(|e| (e.u, e.v, &e.weight)).collect();
    let degrees: Vec<&S> = (0..n).map(|v| g.degree(v)).collect();
    let total_vol = g.volume_total();

    // A ranges over subsets of {1, .., n-1}; bit i of the mask is vertex i+1.
    let in_a = |mask: u64, v: usize| v > 0 && mask >> (v - 1) & 1 == 1;
    let full = (1u64 << n) - 1;

    let mut best: Option<(ExpansionValue<S>, u64)> = None;
    for mask in 1..(1u64 << (n - 1)) {
        let mut vol_a = S::zero();
        for (v, degree) in degrees.iter().enumerate().skip(1) {
            if mask >> (v - 1) & 1 == 1 {
                vol_a = vol_a + (*degree).clone();
            }
        }
        let mut cut = S::zero();
        let mut e_a = S::zero();
        for &(u, v, w) in &edges {
            match (in_a(mask, u), in_a(mask, v)) {
                (true, true) => e_a = e_a + w.clone(),
                (false, false) => {}
                _ => cut = cut + w.clone(),
            }
        }
        let vol_b = total_vol.clone() - vol_a.clone();
        let e_b = g.edge_weight_total().clone() - e_a.clone() - cut.clone();
        let stats = SideStats {
            cut,
            vol_a,
            vol_b,
            e_a,
            e_b,
        };
        let value = value_of(&stats);

        let a_bits = mask << 1;
        let witness_bits = a_bits.min(full ^ a_bits);
        match &mut best {
            None => best = Some((value, witness_bits)),
            Some((best_value, best_bits)) => match value.cmp_value(best_value) {
                Ordering::Less => best = Some((value, witness_bits)),
                Ordering::Equal => {
                    if witness_bits < *best_bits {
                        *best_bits = witness_bits;
                    }
                }
                Ordering::Greater => {}
            },
        }
    }
    let (value, bits) = best.expect("n >= 2 yields at least one bipartition");
    let witness = VertexSet::from_indices(n, (0..n).filter(|&v| bits >> v & 1 == 1));
    Ok(ExpansionReport {
        value,
        witness,
        kind,
    })
}

/// `h(a) = e(a, a̅) / min(vol(a), vol(a̅))` for one fixed set.
pub fn h_set<S: Scalar>(g: &Graph<S>, a: &VertexSet) -> Result<S> {
    let vol_a = g.volume(a);
    let vol_b = g.volume(&a.complement());
    if vol_a.is_zero() || vol_b.is_zero() {
        return Err(Error::ZeroVolumeSide);
    }
    Ok(g.cut(a) / S::min_ref(&vol_a, &vol_b).clone())
}

/// `hh(a) = e(a, a̅) vol(G) / (vol(a) vol(a̅))` for one fixed set.
pub fn hh_set<S: Scalar>(g: &Graph<S>, a: &VertexSet) -> Result<S> {
    let vol_a = g.volume(a);
    let vol_b = g.volume(&a.complement());
    if vol_a.is_zero() || vol_b.is_zero() {
        return Err(Error::ZeroVolumeSide);
    }
    Ok(g.cut(a) * g.volume_total() / (vol_a * vol_b))
}

/// `h'(a) = e(a, a̅) / min(e(a), e(a̅))`, infinite when the smaller side has
/// no internal edges.
pub fn hprime_set<S: Scalar>(g: &Graph<S>, a: &VertexSet) -> Result<ExpansionValue<S>> {
    if !a.is_proper_nonempty() {
        return Err(Error::EmptySet);
    }
    let e_a = g.internal_edges(a);
    let e_b = g.internal_edges(&a.complement());
    let denom = S::min_ref(&e_a, &e_b).clone();
    if denom.is_zero() {
        return Ok(ExpansionValue::Infinite);
    }
    Ok(ExpansionValue::Finite(g.cut(a) / denom))
}

pub fn conductance<S: Scalar>(g: &Graph<S>) -> Result<ExpansionReport<S>> {
    conductance_with_limits(g, Limits::default())
}

pub fn conductance_with_limits<S: Scalar>(
    g: &Graph<S>,
    limits: Limits,
) -> Result<ExpansionReport<S>> {
    scan(g, limits, ExpansionKind::Conductance, |s| {
        ExpansionValue::Finite(s.cut.clone() / S::min_ref(&s.vol_a, &s.vol_b).clone())
    })
}

pub fn expansion_by_products<S: Scalar>(g: &Graph<S>) -> Result<ExpansionReport<S>> {
    expansion_by_products_with_limits(g, Limits::default())
}

pub fn expansion_by_products_with_limits<S: Scalar>(
    g: &Graph<S>,
    limits: Limits,
) -> Result<ExpansionReport<S>> {
    let total = g.volume_total();
    scan(g, limits, ExpansionKind::ByProducts, |s| {
        ExpansionValue::Finite(s.cut.clone() * total.clone() / (s.vol_a.clone() * s.vol_b.clone()))
    })
}

pub fn expansion_by_edges<S: Scalar>(g: &Graph<S>) -> Result<ExpansionReport<S>> {
    expansion_by_edges_with_limits(g, Limits::default())
}

pub fn expansion_by_edges_with_limits<S: Scalar>(
    g: &Graph<S>,
    limits: Limits,
) -> Result<ExpansionReport<S>> {
    scan(g, limits, ExpansionKind::ByEdges, |s| {
        let denom = S::min_ref(&s.e_a, &s.e_b);
        if denom.is_zero() {
            ExpansionValue::Infinite
        } else {
            ExpansionValue::Finite(s.cut.clone() / denom.clone())
        }
    })
}

/// `h(G) >= delta`.
pub fn is_delta_expander<S: Scalar>(g: &Graph<S>, delta: &S) -> Result<bool> {
    is_delta_expander_with_limits(g, delta, Limits::default())
}

pub fn is_delta_expander_with_limits<S: Scalar>(
    g: &Graph<S>,
    delta: &S,
    limits: Limits,
) -> Result<bool> {
    if !delta.is_positive_value() {
        return Err(Error::OutOfRange("delta must be positive"));
    }
    let h = conductance_with_limits(g, limits)?.value.expect_finite();
    Ok(h >= *delta)
}
