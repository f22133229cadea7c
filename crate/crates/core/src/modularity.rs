//! Exact modularity: scoring, maximization over all vertex partitions,
//! enumeration of every optimal partition, the zero-modularity tests, and
//! the degree-tax extremal function `f`.
//!
//! Maximization works per connected component: optimal parts never cross
//! components, and within a component (which has no isolated vertices)
//! every optimal partition has connected parts, so the search walks
//! restricted-growth strings pruned to parts that can still become
//! connected. Coverage and degree tax always use the global `e(G)` and
//! `vol(G)`, so per-component optima combine by addition.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;
use crate::set::{Partition, VertexSet};
use crate::{Limits, Ratio};

#[derive(Debug, Clone, PartialEq)]
pub struct ScoreBreakdown<S: Scalar = Ratio> {
    pub q: S,
    /// Edge contribution (coverage).
    pub coverage: S,
    pub degree_tax: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModularityReport<S: Scalar = Ratio> {
    pub q_star: S,
    /// Canonical optimum: first maximizer in restricted-growth-string order,
    /// per component.
    pub optimal: Partition,
    pub all_optimal: Option<Vec<Partition>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroModularityMethod {
    /// `q*(G) = 0` by exact maximization.
    Direct,
    /// `e(A, A̅) >= 2 sqrt(e(A) e(A̅))` for every `A`, tested by squaring.
    GeometricMean,
    /// `e(A, A̅) vol(G) >= vol(A) vol(A̅)` for every `A` (`hh >= 1`).
    Products,
}

/// Modularity score of a partition: coverage minus degree tax, exact.
/// Edgeless graphs score 0 by convention.
pub fn score<S: Scalar>(g: &Graph<S>, p: &Partition) -> Result<ScoreBreakdown<S>> {
    if p.universe() != g.vertex_count() {
        return Err(Error::PartitionMismatch);
    }
    if g.edge_weight_total().is_zero() {
        return Ok(ScoreBreakdown {
            q: S::zero(),
            coverage: S::zero(),
            degree_tax: S::zero(),
        });
    }
    let m = g.edge_weight_total().clone();
    let vol_sq = g.volume_total().square();
    let mut coverage = S::zero();
    let mut degree_tax = S::zero();
    for part in p.parts() {
        coverage = coverage + g.internal_edges(part) / m.clone();
        degree_tax = degree_tax + g.volume(part).square() / vol_sq.clone();
    }
    Ok(ScoreBreakdown {
        q: coverage.clone() - degree_tax.clone(),
        coverage,
        degree_tax,
    })
}

struct ComponentContext<S: Scalar> {
    verts: Vec<usize>,
    n: usize,
    pair: Vec<S>,
    loop_w: Vec<S>,
    deg: Vec<S>,
    adj: Vec<u64>,
    inv_m: S,
    inv_vol_sq: S,
}

impl<S: Scalar> ComponentContext<S> {
    fn build(g: &Graph<S>, comp: &VertexSet) -> Self {
        let verts: Vec<usize> = comp.iter().collect();
        let n = verts.len();
        let mut local = vec![usize::MAX; g.vertex_count()];
        for (i, &v) in verts.iter().enumerate() {
            local[v] = i;
        }
        let mut pair = vec![S::zero(); n * n];
        let mut loop_w = vec![S::zero(); n];
        let mut adj = vec![0u64; n];
        for e in g.edges() {
            if !comp.contains(e.u) || !comp.contains(e.v) {
                continue;
            }
            let (i, j) = (local[e.u], local[e.v]);
            if i == j {
                loop_w[i] = loop_w[i].clone() + e.weight.clone();
            } else {
                pair[i * n + j] = pair[i * n + j].clone() + e.weight.clone();
                pair[j * n + i] = pair[j * n + i].clone() + e.weight.clone();
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
        let deg = verts.iter().map(|&v| g.degree(v).clone()).collect();
        let inv_m = S::one() / g.edge_weight_total().clone();
        let inv_vol_sq = S::one() / g.volume_total().square();
        Self {
            verts,
            n,
            pair,
            loop_w,
            deg,
            adj,
            inv_m,
            inv_vol_sq,
        }
    }

    fn neighbors(&self, mask: u64) -> u64 {
        let mut out = 0;
        let mut bits = mask;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out |= self.adj[i];
            bits &= bits - 1;
        }
        out
    }

    /// `part` can still induce a connected subgraph once the vertices in
    /// `future` have been placed: all its members lie in one component of
    /// the graph induced on `part | future`.
    fn completable(&self, part: u64, future: u64) -> bool {
        let allowed = part | future;
        let mut reach = 1u64 << part.trailing_zeros();
        loop {
            let next = reach | (self.neighbors(reach) & allowed);
            if next == reach {
                break;
            }
            reach = next;
        }
        part & !reach == 0
    }
}

struct PartitionSearch<'c, S: Scalar> {
    cx: &'c ComponentContext<S>,
    masks: Vec<u64>,
    internal: Vec<S>,
    volume: Vec<S>,
    collect_all: bool,
    best: Option<S>,
    best_lists: Vec<Vec<u64>>,
}

impl<S: Scalar> PartitionSearch<'_, S> {
    fn run(&mut self, v: usize) {
        if v == self.cx.n {
            self.visit_leaf();
            return;
        }
        let future: u64 = if v + 1 >= 64 {
            0
        } else {
            (((1u128 << self.cx.n) - 1) as u64) & !((1u64 << (v + 1)) - 1)
        };
        let open = self.masks.len();
        for j in 0..=open {
            if j < open {
                let mut delta = self.cx.loop_w[v].clone();
                let mut bits = self.masks[j];
                while bits != 0 {
                    let u = bits.trailing_zeros() as usize;
                    let w = &self.cx.pair[v * self.cx.n + u];
                    if !w.is_zero() {
                        delta = delta + w.clone();
                    }
                    bits &= bits - 1;
                }
                let saved_internal = self.internal[j].clone();
                let saved_volume = self.volume[j].clone();
                self.masks[j] |= 1 << v;
                self.internal[j] = saved_internal.clone() + delta;
                self.volume[j] = saved_volume.clone() + self.cx.deg[v].clone();
                if self.all_completable(future) {
                    self.run(v + 1);
                }
                self.masks[j] &= !(1 << v);
                self.internal[j] = saved_internal;
                self.volume[j] = saved_volume;
            } else {
                self.masks.push(1 << v);
                self.internal.push(self.cx.loop_w[v].clone());
                self.volume.push(self.cx.deg[v].clone());
                if self.all_completable(future) {
                    self.run(v + 1);
                }
                self.masks.pop();
                self.internal.pop();
                self.volume.pop();
            }
        }
    }

    fn all_completable(&self, future: u64) -> bool {
        self.masks.iter().all(|&m| self.cx.completable(m, future))
    }

    fn visit_leaf(&mut self) {
        let mut value = S::zero();
        for j in 0..self.masks.len() {
            value = value + self.internal[j].clone() * self.cx.inv_m.clone()
                - self.volume[j].square() * self.cx.inv_vol_sq.clone();
        }
        match &self.best {
            Some(best) if value < *best => {}
            Some(best) if value == *best => {
                if self.collect_all {
                    self.best_lists.push(self.masks.clone());
                }
            }
            _ => {
                self.best = Some(value);
                self.best_lists.clear();
                self.best_lists.push(self.masks.clone());
            }
        }
    }
}

/// Best partial score of one connected component (with the host graph's
/// `e(G)` and `vol(G)`), together with the optimizing part lists (all of
/// them when `collect_all`, otherwise the canonical first).
pub(crate) fn component_optimum<S: Scalar>(
    g: &Graph<S>,
    comp: &VertexSet,
    limits: Limits,
    collect_all: bool,
) -> Result<(S, Vec<Vec<VertexSet>>)> {
    let size = comp.len();
    if size > limits.partition_max.min(63) {
        return Err(Error::SizeLimitExceeded {
            what: "partition enumeration",
            size,
            cap: limits.partition_max.min(63),
        });
    }
    let cx = ComponentContext::build(g, comp);
    let mut search = PartitionSearch {
        cx: &cx,
        masks: Vec::new(),
        internal: Vec::new(),
        volume: Vec::new(),
        collect_all,
        best: None,
        best_lists: Vec::new(),
    };
    search.run(0);
    let best = search.best.expect("component has at least one partition");
    let lists = search
        .best_lists
        .iter()
        .map(|masks| {
            masks
                .iter()
                .map(|&m| {
                    VertexSet::from_indices(
                        g.vertex_count(),
                        (0..cx.n).filter(|&i| m >> i & 1 == 1).map(|i| cx.verts[i]),
                    )
                })
                .collect()
        })
        .collect();
    Ok((best, lists))
}

pub fn maximize<S: Scalar>(g: &Graph<S>) -> Result<ModularityReport<S>> {
    maximize_with_limits(g, Limits::default())
}

pub fn maximize_with_limits<S: Scalar>(
    g: &Graph<S>,
    limits: Limits,
) -> Result<ModularityReport<S>> {
    let n = g.vertex_count();
    if g.edge_weight_total().is_zero() {
        return Ok(ModularityReport {
            q_star: S::zero(),
            optimal: Partition::singletons(n),
            all_optimal: None,
        });
    }
    let mut q_star = S::zero();
    let mut parts: Vec<VertexSet> = Vec::new();
    for comp in g.components() {
        let (value, mut lists) = component_optimum(g, &comp, limits, false)?;
        q_star = q_star + value;
        parts.append(&mut lists[0]);
    }
    Ok(ModularityReport {
        q_star,
        optimal: Partition::new(n, parts)?,
        all_optimal: None,
    })
}

/// Like [`maximize`], with `all_optimal` populated by every partition (with
/// connected parts; isolated vertices as their own parts) attaining `q*`.
pub fn all_optimal<S: Scalar>(g: &Graph<S>) -> Result<ModularityReport<S>> {
    all_optimal_with_limits(g, Limits::default())
}

pub fn all_optimal_with_limits<S: Scalar>(
    g: &Graph<S>,
    limits: Limits,
) -> Result<ModularityReport<S>> {
    let n = g.vertex_count();
    if g.edge_weight_total().is_zero() {
        let optimal = Partition::singletons(n);
        return Ok(ModularityReport {
            q_star: S::zero(),
            optimal: optimal.clone(),
            all_optimal: Some(vec![optimal]),
        });
    }
    let mut q_star = S::zero();
    let mut per_component: Vec<Vec<Vec<VertexSet>>> = Vec::new();
    for comp in g.components() {
        let (value, lists) = component_optimum(g, &comp, limits, true)?;
        q_star = q_star + value;
        per_component.push(lists);
    }
    let mut combos: Vec<Vec<VertexSet>> = vec![Vec::new()];
    for lists in &per_component {
        let mut next = Vec::with_capacity(combos.len() * lists.len());
        for combo in &combos {
            for list in lists {
                let mut extended = combo.clone();
                extended.extend(list.iter().cloned());
                next.push(extended);
            }
        }
        combos = next;
    }
    let partitions: Vec<Partition> = combos
        .into_iter()
        .map(|parts| Partition::new(n, parts))
        .collect::<Result<_>>()?;
    Ok(ModularityReport {
        q_star,
        optimal: partitions[0].clone(),
        all_optimal: Some(partitions),
    })
}

pub fn is_zero_modularity<S: Scalar>(g: &Graph<S>, method: ZeroModularityMethod) -> Result<bool> {
    is_zero_modularity_with_limits(g, method, Limits::default())
}

pub fn is_zero_modularity_with_limits<S: Scalar>(
    g: &Graph<S>,
    method: ZeroModularityMethod,
    limits: Limits,
) -> Result<bool> {
    if g.edge_weight_total().is_zero() {
        return Err(Error::EmptyGraph);
    }
    match method {
        ZeroModularityMethod::Direct => Ok(maximize_with_limits(g, limits)?.q_star.is_zero()),
        ZeroModularityMethod::GeometricMean => {
            scan_bipartitions(g, limits, |cut, e_a, e_b, _, _| {
                cut.square() >= S::from_int(4) * e_a.clone() * e_b.clone()
            })
        }
        ZeroModularityMethod::Products => {
            let total = g.volume_total();
            scan_bipartitions(g, limits, move |cut, _, _, vol_a, vol_b| {
                cut.clone() * total.clone() >= vol_a.clone() * vol_b.clone()
            })
        }
    }
}

/// Checks a predicate on `(cut, e(A), e(A̅), vol(A), vol(A̅))` over every
/// bipartition; both zero-modularity inequalities are symmetric in the two
/// sides, so vertex 0 stays on one side.
fn scan_bipartitions<S, F>(g: &Graph<S>, limits: Limits, mut holds: F) -> Result<bool>
where
    S: Scalar,
    F: FnMut(&S, &S, &S, &S, &S) -> bool,
{
    let n = g.vertex_count();
    if n > limits.subset_max {
        return Err(Error::SizeLimitExceeded {
            what: "subset enumeration",
            size: n,
            cap: limits.subset_max,
        });
    }
    if n < 2 {
        return Ok(true);
    }
    let in_a = |mask: u64, v: usize| v > 0 && mask >> (v - 1) & 1 == 1;
    for mask in 1..(1u64 << (n - 1)) {
        let mut cut = S::zero();
        let mut e_a = S::zero();
        for e in g.edges() {
            match (in_a(mask, e.u), in_a(mask, e.v)) {
                (true, true) => e_a = e_a + e.weight.clone(),
                (false, false) => {}
                _ => cut = cut + e.weight.clone(),
            }
        }
        let e_b = g.edge_weight_total().clone() - e_a.clone() - cut.clone();
        let mut vol_a = S::zero();
        for v in 1..n {
            if mask >> (v - 1) & 1 == 1 {
                vol_a = vol_a + g.degree(v).clone();
            }
        }
        let vol_b = g.volume_total() - vol_a.clone();
        if !holds(&cut, &e_a, &e_b, &vol_a, &vol_b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f(alpha) = alpha^2 floor(1/alpha) + (1 - alpha floor(1/alpha))^2`: the
/// maximum of a sum of squares over pieces of size at most `alpha` summing
/// to 1.
pub fn f_of_alpha<S: Scalar>(alpha: &S) -> Result<S> {
    if !alpha.is_positive_value() || *alpha > S::one() {
        return Err(Error::OutOfRange("f is defined for 0 < alpha <= 1"));
    }
    let blocks = (S::one() / alpha.clone()).floor();
    Ok(alpha.square() * blocks.clone() + (S::one() - alpha.clone() * blocks).square())
}
