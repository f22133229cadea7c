//! Deterministic graph generators: the benchmark families plus a few stock
//! shapes used throughout the tests.
//!
//! Vertex labelings are fixed so that witnesses and serialized outputs are
//! reproducible; each generator documents its labeling.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

/// Complete graph on `0..n`.
pub fn complete<S: Scalar>(n: usize) -> Graph<S> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v, S::one()));
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Path `0 - 1 - .. - (n-1)`.
pub fn path<S: Scalar>(n: usize) -> Graph<S> {
    let edges = (0..n.saturating_sub(1)).map(|i| (i, i + 1, S::one()));
    Graph::from_edges(n, edges).unwrap()
}

/// Cycle on `0..n` (n >= 3).
pub fn cycle<S: Scalar>(n: usize) -> Graph<S> {
    assert!(n >= 3);
    let edges = (0..n).map(|i| (i, (i + 1) % n, S::one()));
    Graph::from_edges(n, edges).unwrap()
}

/// Star with center `0` and `t` leaves.
pub fn star<S: Scalar>(t: usize) -> Graph<S> {
    let edges = (1..=t).map(|v| (0, v, S::one()));
    Graph::from_edges(t + 1, edges).unwrap()
}

/// Disjoint union; the i-th input graph's vertices are shifted past all
/// earlier ones.
pub fn disjoint_union<S: Scalar>(parts: &[Graph<S>]) -> Graph<S> {
    let n: usize = parts.iter().map(|g| g.vertex_count()).sum();
    let mut edges = Vec::new();
    let mut offset = 0;
    for g in parts {
        for e in g.edges() {
            edges.push((e.u + offset, e.v + offset, e.weight.clone()));
        }
        offset += g.vertex_count();
    }
    Graph::from_edges(n, edges).unwrap()
}

/// `h` plus `m - e(h)` disjoint unit edges on fresh vertices
/// `(n_h + 2i, n_h + 2i + 1)`. Requires integer weights so the number of
/// padding edges is well defined.
pub fn g_h_padding<S: Scalar>(h: &Graph<S>, m: u64) -> Result<Graph<S>> {
    if h.edges().iter().any(|e| e.weight != e.weight.floor()) {
        return Err(Error::OutOfRange("padding requires integer edge weights"));
    }
    let e_h = h.edge_weight_total();
    let target = S::from_int(m as i64);
    if *e_h > target {
        return Err(Error::TooManyEdgesInH);
    }
    let extra = (target - e_h.clone()).floor_u64().ok_or(Error::OutOfRange(
        "edge total does not fit a machine integer",
    ))?;
    Ok(append_disjoint_edges(h, extra))
}

fn append_disjoint_edges<S: Scalar>(h: &Graph<S>, count: u64) -> Graph<S> {
    let base = h.vertex_count();
    let n = base + 2 * count as usize;
    let mut edges: Vec<(usize, usize, S)> = h
        .edges()
        .iter()
        .map(|e| (e.u, e.v, e.weight.clone()))
        .collect();
    for i in 0..count as usize {
        edges.push((base + 2 * i, base + 2 * i + 1, S::one()));
    }
    Graph::from_edges(n, edges).unwrap()
}

fn binom2(s: u64) -> u64 {
    s * (s - 1) / 2
}

/// Largest `s` with `s^2 <= value`.
fn isqrt_of<S: Scalar>(value: &S) -> u64 {
    let mut s = 0u64;
    while S::from_int(((s + 1) * (s + 1)) as i64) <= *value {
        s += 1;
    }
    s
}

/// `m`-edge union of cliques and edges: as many cliques on
/// `floor(sqrt(2 alpha m))` vertices as the budget admits, then the largest
/// clique fitting the remainder, then disjoint unit edges. Cliques are laid
/// out consecutively from vertex 0.
pub fn g_alpha<S: Scalar>(alpha: &S, m: u64) -> Result<Graph<S>> {
    if !alpha.is_positive_value() || *alpha >= S::one() {
        return Err(Error::OutOfRange("alpha must satisfy 0 < alpha < 1"));
    }
    if m < 2 {
        return Err(Error::OutOfRange("m must be at least 2"));
    }
    let two_alpha_m = alpha.double() * S::from_int(m as i64);
    let s = isqrt_of(&two_alpha_m);
    if s < 2 {
        return Err(Error::DegenerateParameters);
    }
    let mut sizes: Vec<u64> = Vec::new();
    let mut remaining = m;
    while remaining >= binom2(s) {
        sizes.push(s);
        remaining -= binom2(s);
    }
    if remaining >= 1 {
        let mut t = 2;
        while binom2(t + 1) <= remaining {
            t += 1;
        }
        sizes.push(t);
        remaining -= binom2(t);
    }
    let mut blocks: Vec<Graph<S>> = sizes.iter().map(|&k| complete(k as usize)).collect();
    for _ in 0..remaining {
        blocks.push(complete(2));
    }
    let g = disjoint_union(&blocks);
    debug_assert_eq!(*g.edge_weight_total(), S::from_int(m as i64));
    Ok(g)
}

/// Windmill: center `0`, leaves `1..=2l`, star edges `(0, i)` and a perfect
/// matching `(2i-1, 2i)` on the leaves.
pub fn windmill<S: Scalar>(l: u64) -> Result<Graph<S>> {
    if l < 2 {
        return Err(Error::OutOfRange("windmill needs l >= 2"));
    }
    let l = l as usize;
    let mut edges = Vec::new();
    for i in 1..=2 * l {
        edges.push((0, i, S::one()));
    }
    for i in 1..=l {
        edges.push((2 * i - 1, 2 * i, S::one()));
    }
    Ok(Graph::from_edges(2 * l + 1, edges).unwrap())
}

/// Clique `0..k` with `l` leaves per clique vertex; the leaves of clique
/// vertex `i` are `k + i*l .. k + (i+1)*l`.
pub fn clique_with_leaves<S: Scalar>(k: u64, l: u64) -> Result<Graph<S>> {
    if k < 2 || l < 1 {
        return Err(Error::OutOfRange("clique-with-leaves needs k >= 2, l >= 1"));
    }
    let (k, l) = (k as usize, l as usize);
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            edges.push((u, v, S::one()));
        }
    }
    for i in 0..k {
        for j in 0..l {
            edges.push((i, k + i * l + j, S::one()));
        }
    }
    Ok(Graph::from_edges(k * (l + 1), edges).unwrap())
}

/// `h` plus `floor(e(h) (1 - alpha) / alpha)` disjoint unit edges on fresh
/// vertices.
pub fn with_disjoint_edges<S: Scalar>(h: &Graph<S>, alpha: &S) -> Result<Graph<S>> {
    if !alpha.is_positive_value() || *alpha > S::one() {
        return Err(Error::OutOfRange("alpha must satisfy 0 < alpha <= 1"));
    }
    let e_h = h.edge_weight_total().clone();
    if e_h.is_zero() {
        return Err(Error::EmptyGraph);
    }
    let extra = (e_h * (S::one() - alpha.clone()) / alpha.clone())
        .floor_u64()
        .ok_or(Error::OutOfRange(
            "padding count does not fit a machine integer",
        ))?;
    Ok(append_disjoint_edges(h, extra))
}

/// The weighted counterpart of [`with_disjoint_edges`] applied to a
/// loop-clique; kept as a named constructor since the pair travels together.
pub fn g_w<S: Scalar>(hw: &Graph<S>, alpha: &S) -> Result<Graph<S>> {
    with_disjoint_edges(hw, alpha)
}

/// Weighted clique with loops: vertices `0..k`, every pair joined with
/// weight `b/(k-1)`, and a loop of weight `a/2` at each vertex. Regular with
/// weighted degree `a + b`.
pub fn weighted_clique_loops<S: Scalar>(a: &S, b: &S, k: u64) -> Result<Graph<S>> {
    if !a.is_positive_value() || !b.is_positive_value() {
        return Err(Error::OutOfRange("a and b must be positive"));
    }
    if k < 2 {
        return Err(Error::OutOfRange("clique needs k >= 2"));
    }
    let k = k as usize;
    let pair = b.clone() / S::from_int((k - 1) as i64);
    let loop_w = a.half();
    let mut edges = Vec::new();
    for u in 0..k {
        edges.push((u, u, loop_w.clone()));
        for v in u + 1..k {
            edges.push((u, v, pair.clone()));
        }
    }
    Ok(Graph::from_edges(k, edges).unwrap())
}

/// k-ary tree of depth two: root `0`, inner vertices `1..=k`, and the leaves
/// of inner vertex `i` at `k + (i-1)*k + 1 ..= k + i*k`.
pub fn kary_depth2<S: Scalar>(k: u64) -> Result<Graph<S>> {
    if k < 2 {
        return Err(Error::OutOfRange("k-ary tree needs k >= 2"));
    }
    let k = k as usize;
    let mut edges = Vec::new();
    for i in 1..=k {
        edges.push((0, i, S::one()));
        for j in 1..=k {
            edges.push((i, k + (i - 1) * k + j, S::one()));
        }
    }
    Ok(Graph::from_edges(k * k + k + 1, edges).unwrap())
}

/// Pendant collapse: every leaf is deleted and replaced by loop weight at its
/// neighbor; each isolated edge keeps its smaller endpoint with a loop of the
/// edge's weight. Surviving vertices are compacted preserving id order.
/// Returns the transformed graph and the old-to-new vertex map.
pub fn collapse_pendants<S: Scalar>(g: &Graph<S>) -> (Graph<S>, Vec<Option<usize>>) {
    let n = g.vertex_count();
    let mut entries = vec![0usize; n]; // incident edge entries, loops included
    let mut has_loop = vec![false; n];
    let mut only_neighbor = vec![usize::MAX; n];
    for e in g.edges() {
        if e.u == e.v {
            entries[e.u] += 1;
            has_loop[e.u] = true;
        } else {
            entries[e.u] += 1;
            entries[e.v] += 1;
            only_neighbor[e.u] = e.v;
            only_neighbor[e.v] = e.u;
        }
    }
    let is_leaf =
        |v: usize| -> bool { entries[v] == 1 && !has_loop[v] && only_neighbor[v] != usize::MAX };

    let mut dropped = vec![false; n];
    let mut extra_loop = vec![S::zero(); n];
    for e in g.edges() {
        if e.u == e.v {
            continue;
        }
        let (u, v) = (e.u, e.v);
        match (is_leaf(u), is_leaf(v)) {
            // Isolated edge: keep the smaller endpoint as a unit of loop weight.
            (true, true) => {
                dropped[v] = true;
                extra_loop[u] = extra_loop[u].clone() + e.weight.clone();
            }
            (true, false) => {
                dropped[u] = true;
                extra_loop[v] = extra_loop[v].clone() + e.weight.clone();
            }
            (false, true) => {
                dropped[v] = true;
                extra_loop[u] = extra_loop[u].clone() + e.weight.clone();
            }
            (false, false) => {}
        }
    }

    let mut map = vec![None; n];
    let mut next = 0;
    for v in 0..n {
        if !dropped[v] {
            map[v] = Some(next);
            next += 1;
        }
    }
    let mut edges = Vec::new();
    for e in g.edges() {
        if let (Some(u), Some(v)) = (map[e.u], map[e.v]) {
            edges.push((u, v, e.weight.clone()));
        }
    }
    for v in 0..n {
        if !extra_loop[v].is_zero() {
            let nv = map[v].expect("loop recipient survives");
            edges.push((nv, nv, extra_loop[v].clone()));
        }
    }
    (Graph::from_edges(next, edges).unwrap(), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint, Ratio};

    #[test]
    fn padding_counts() {
        let k3 = complete::<Ratio>(3);
        assert_eq!(g_h_padding(&k3, 3).unwrap(), k3);
        let g = g_h_padding(&k3, 10).unwrap();
        assert_eq!(g.vertex_count(), 17);
        assert_eq!(g.edge_weight_total(), &rint(10));
        assert_eq!(g_h_padding(&k3, 2).unwrap_err(), Error::TooManyEdgesInH);
    }

    #[test]
    fn g_alpha_block_structure() {
        // m = 20, alpha = 1/2: three K_4 blocks, a K_2, one leftover edge.
        let g = g_alpha(&rat(1, 2), 20).unwrap();
        assert_eq!(g.edge_weight_total(), &rint(20));
        let sizes: Vec<usize> = g.components().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![4, 4, 4, 2, 2]);

        // m = 200: two 14-cliques, a 6-clique, three edges.
        let g = g_alpha(&rat(1, 2), 200).unwrap();
        assert_eq!(g.edge_weight_total(), &rint(200));
        let sizes: Vec<usize> = g.components().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![14, 14, 6, 2, 2, 2]);

        assert_eq!(
            g_alpha(&rat(1, 100), 20).unwrap_err(),
            Error::DegenerateParameters
        );
    }

    #[test]
    fn windmill_counts() {
        let w2 = windmill::<Ratio>(2).unwrap();
        assert_eq!(w2.vertex_count(), 5);
        assert_eq!(w2.edge_weight_total(), &rint(6));
        assert!(windmill::<Ratio>(1).is_err());
    }

    #[test]
    fn clique_with_leaves_counts() {
        let h = clique_with_leaves::<Ratio>(3, 2).unwrap();
        assert_eq!(h.vertex_count(), 9);
        assert_eq!(h.edge_weight_total(), &rint(9));
        let g = with_disjoint_edges(&h, &rat(1, 2)).unwrap();
        assert_eq!(g.edge_weight_total(), &rint(18));
        assert_eq!(g.vertex_count(), 27);
    }

    #[test]
    fn weighted_clique_regularity() {
        let hw = weighted_clique_loops(&rint(1), &rint(1), 3).unwrap();
        assert_eq!(hw.edge_weight_total(), &rint(3));
        for v in 0..3 {
            assert_eq!(hw.degree(v), &rint(2));
        }
    }

    #[test]
    fn kary_counts() {
        let g = kary_depth2::<Ratio>(4).unwrap();
        assert_eq!(g.vertex_count(), 21);
        assert_eq!(g.edge_weight_total(), &rint(20));
    }

    #[test]
    fn collapse_examples() {
        // An isolated edge becomes a single unit loop.
        let k2 = complete::<Ratio>(2);
        let (c, map) = collapse_pendants(&k2);
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.edge_weight_total(), &rint(1));
        assert_eq!(c.degree(0), &rint(2));
        assert_eq!(map, vec![Some(0), None]);

        // H(3,2) collapses onto the weighted 3-clique with loops of weight 2.
        let h = clique_with_leaves::<Ratio>(3, 2).unwrap();
        let (c, _) = collapse_pendants(&h);
        let hw = weighted_clique_loops(&rint(4), &rint(2), 3).unwrap();
        assert_eq!(c, hw);

        // No pendants, no isolated edges: unchanged.
        let c4 = cycle::<Ratio>(4);
        let (c, _) = collapse_pendants(&c4);
        assert_eq!(c, c4);
    }

    #[test]
    fn clique_union_connected_subgraphs_stay_small() {
        // Each block is a clique on floor(sqrt(2 alpha m)) vertices, so no
        // connected subgraph can exceed alpha * m edges; anything larger
        // necessarily spans two components.
        for (alpha, m) in [(rat(1, 2), 20u64), (rat(1, 4), 60), (rat(1, 2), 200)] {
            let g = g_alpha(&alpha, m).unwrap();
            let budget = alpha * rint(m as i64);
            for comp in g.components() {
                assert!(g.internal_edges(&comp) <= budget);
            }
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let a = g_alpha(&rat(1, 4), 100).unwrap().to_text();
        let b = g_alpha(&rat(1, 4), 100).unwrap().to_text();
        assert_eq!(a, b);
        let a = kary_depth2::<Ratio>(6).unwrap().to_text();
        let b = kary_depth2::<Ratio>(6).unwrap().to_text();
        assert_eq!(a, b);
    }
}
