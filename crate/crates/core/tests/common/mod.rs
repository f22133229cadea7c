//! Shared helpers for the integration suites.
#![allow(dead_code)] // each test target compiles its own copy

use modex::{Graph, Ratio};

/// Every labeled graph on `n` vertices whose edge set makes it connected
/// (unit weights, no loops).
pub fn connected_labeled_graphs(n: usize) -> Vec<Graph<Ratio>> {
    let mut slots = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            slots.push((u, v));
        }
    }
    let mut out = Vec::new();
    for mask in 0u64..(1 << slots.len()) {
        let pairs: Vec<(usize, usize)> = slots
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let g = Graph::<Ratio>::from_pairs(n, &pairs).unwrap();
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

/// Plain enumeration of every partition (restricted-growth strings, no
/// pruning): the implementation-independent oracle.
pub fn oracle_each_partition(n: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(ids: &mut Vec<usize>, max_used: usize, n: usize, f: &mut impl FnMut(&[usize])) {
        if ids.len() == n {
            f(ids);
            return;
        }
        for j in 0..=max_used + 1 {
            ids.push(j);
            rec(ids, max_used.max(j), n, f);
            ids.pop();
        }
    }
    if n == 0 {
        f(&[]);
        return;
    }
    let mut ids = vec![0];
    rec(&mut ids, 0, n, f);
}

pub fn oracle_qstar(g: &Graph<Ratio>) -> Ratio {
    use modex::modularity::score;
    use modex::Partition;
    let mut best: Option<Ratio> = None;
    oracle_each_partition(g.vertex_count(), &mut |ids| {
        let q = score(g, &Partition::from_part_ids(ids)).unwrap().q;
        best = Some(match best.take() {
            None => q,
            Some(b) => b.max(q),
        });
    });
    best.unwrap()
}
