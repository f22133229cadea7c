//! Weighted multigraph with loops, plus the set/cut/volume primitives every
//! other module is built on.
//!
//! Conventions: a loop at `v` counts twice toward the degree of `v` and once
//! toward edge totals; `vol(G) = 2 e(G)` holds exactly. Graphs are immutable
//! after construction, so every operation here is a pure function.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::set::VertexSet;
use crate::Ratio;

#[derive(Debug, Clone, PartialEq)]
pub struct Edge<S> {
    pub u: usize,
    pub v: usize,
    pub weight: S,
}

#[derive(Debug, Clone)]
pub struct Graph<S: Scalar = Ratio> {
    n: usize,
    edges: Vec<Edge<S>>,
    degree: Vec<S>,
    edge_weight: S,
}

impl<S: Scalar> Graph<S> {
    /// Builds a graph from `(u, v, weight)` triples. Parallel entries are
    /// kept as given; endpoints are normalized to `u <= v`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, S)>,
    {
        let mut out = Vec::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { line: None });
            }
            if !w.is_positive_value() {
                return Err(Error::NonPositiveWeight { line: None });
            }
            let (u, v) = if u <= v { (u, v) } else { (v, u) };
            out.push(Edge { u, v, weight: w });
        }
        Ok(Self::from_checked(n, out))
    }

    /// Unit-weight convenience constructor.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::from_edges(n, pairs.iter().map(|&(u, v)| (u, v, S::one())))
    }

    fn from_checked(n: usize, edges: Vec<Edge<S>>) -> Self {
        let mut degree = vec![S::zero(); n];
        let mut edge_weight = S::zero();
        for e in &edges {
            edge_weight = edge_weight + e.weight.clone();
            if e.u == e.v {
                degree[e.u] = degree[e.u].clone() + e.weight.double();
            } else {
                degree[e.u] = degree[e.u].clone() + e.weight.clone();
                degree[e.v] = degree[e.v].clone() + e.weight.clone();
            }
        }
        Self {
            n,
            edges,
            degree,
            edge_weight,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge<S>] {
        &self.edges
    }

    /// Total edge weight `e(G)`, loops counted once.
    pub fn edge_weight_total(&self) -> &S {
        &self.edge_weight
    }

    /// `vol(G) = 2 e(G)`.
    pub fn volume_total(&self) -> S {
        self.edge_weight.double()
    }

    /// Weighted degree, loops counted twice.
    pub fn degree(&self, v: usize) -> &S {
        &self.degree[v]
    }

    pub fn has_zero_degree_vertex(&self) -> bool {
        self.degree.iter().any(|d| d.is_zero())
    }

    pub fn positive_degree_count(&self) -> usize {
        self.degree.iter().filter(|d| !d.is_zero()).count()
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// `vol(s)`: sum of weighted degrees over `s`.
    pub fn volume(&self, s: &VertexSet) -> S {
        assert_eq!(s.universe(), self.n);
        s.iter()
            .fold(S::zero(), |acc, v| acc + self.degree[v].clone())
    }

    /// `e(s)`: weight of edges with both endpoints in `s`; a loop inside `s`
    /// counts its weight once.
    pub fn internal_edges(&self, s: &VertexSet) -> S {
        assert_eq!(s.universe(), self.n);
        let mut total = S::zero();
        for e in &self.edges {
            if s.contains(e.u) && s.contains(e.v) {
                total = total + e.weight.clone();
            }
        }
        total
    }

    /// `e(s, V \ s)`: weight of edges with exactly one endpoint in `s`;
    /// loops never cross.
    pub fn cut(&self, s: &VertexSet) -> S {
        assert_eq!(s.universe(), self.n);
        let mut total = S::zero();
        for e in &self.edges {
            if s.contains(e.u) != s.contains(e.v) {
                total = total + e.weight.clone();
            }
        }
        total
    }

    /// Weight of edges with one endpoint in `a` and the other in `b`
    /// (disjoint sets).
    pub fn cut_between(&self, a: &VertexSet, b: &VertexSet) -> S {
        debug_assert!(a.is_disjoint(b));
        let mut total = S::zero();
        for e in &self.edges {
            let split =
                (a.contains(e.u) && b.contains(e.v)) || (b.contains(e.u) && a.contains(e.v));
            if split {
                total = total + e.weight.clone();
            }
        }
        total
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            if e.u != e.v {
                adj[e.u].push(e.v);
                adj[e.v].push(e.u);
            }
        }
        adj
    }

    /// Connected components in increasing order of smallest vertex id;
    /// isolated vertices are singleton components.
    pub fn components(&self) -> Vec<VertexSet> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = VertexSet::empty(self.n);
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Connected components of the subgraph induced on `scope`, reported as
    /// global vertex sets in increasing order of smallest member.
    pub fn components_within(&self, scope: &VertexSet) -> Vec<VertexSet> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            if e.u != e.v && scope.contains(e.u) && scope.contains(e.v) {
                adj[e.u].push(e.v);
                adj[e.v].push(e.u);
            }
        }
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in scope.iter() {
            if seen[start] {
                continue;
            }
            let mut comp = VertexSet::empty(self.n);
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Induced subgraph on `s` with compacted ids, together with the map
    /// from new ids back to the original ones.
    pub fn induced(&self, s: &VertexSet) -> Result<(Graph<S>, Vec<usize>)> {
        assert_eq!(s.universe(), self.n);
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        let map: Vec<usize> = s.iter().collect();
        let mut inverse = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            inverse[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| s.contains(e.u) && s.contains(e.v))
            .map(|e| Edge {
                u: inverse[e.u],
                v: inverse[e.v],
                weight: e.weight.clone(),
            })
            .collect();
        Ok((Graph::from_checked(map.len(), edges), map))
    }

    fn sorted_edge_view(&self) -> Vec<&Edge<S>> {
        let mut view: Vec<&Edge<S>> = self.edges.iter().collect();
        view.sort_by(|a, b| {
            (a.u, a.v)
                .cmp(&(b.u, b.v))
                .then_with(|| a.weight.partial_cmp(&b.weight).expect("comparable weights"))
        });
        view
    }

    /// Parses the line-oriented edge-list format:
    /// `# comment`, `p <n>` (exactly once, before edges), and
    /// `e <u> <v> [<w>]` with `w` a decimal integer or `num/den` rational
    /// (default 1); `u = v` denotes a loop.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut edges: Vec<Edge<S>> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let syntax = |message: &str| Error::Syntax {
                line: Some(line_no),
                message: message.to_string(),
            };
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("p") => {
                    if n.is_some() {
                        return Err(syntax("duplicate 'p' line"));
                    }
                    let count = tokens
                        .next()
                        .ok_or_else(|| syntax("'p' needs a vertex count"))?
                        .parse::<usize>()
                        .map_err(|_| syntax("invalid vertex count"))?;
                    if tokens.next().is_some() {
                        return Err(syntax("trailing tokens after 'p <n>'"));
                    }
                    n = Some(count);
                }
                Some("e") => {
                    let n = n.ok_or_else(|| syntax("'e' before 'p <n>'"))?;
                    let mut vertex = || -> Result<usize> {
                        tokens
                            .next()
                            .ok_or_else(|| syntax("'e' needs two endpoints"))?
                            .parse::<usize>()
                            .map_err(|_| syntax("invalid vertex id"))
                    };
                    let u = vertex()?;
                    let v = vertex()?;
                    let weight = match tokens.next() {
                        None => S::one(),
                        Some(tok) => {
                            S::parse_weight(tok).ok_or_else(|| syntax("invalid edge weight"))?
                        }
                    };
                    if tokens.next().is_some() {
                        return Err(syntax("trailing tokens after edge"));
                    }
                    if u >= n || v >= n {
                        return Err(Error::VertexOutOfRange {
                            line: Some(line_no),
                        });
                    }
                    if !weight.is_positive_value() {
                        return Err(Error::NonPositiveWeight {
                            line: Some(line_no),
                        });
                    }
                    let (u, v) = if u <= v { (u, v) } else { (v, u) };
                    edges.push(Edge { u, v, weight });
                }
                _ => return Err(syntax("unknown directive")),
            }
        }
        let n = n.ok_or(Error::Syntax {
            line: None,
            message: "missing 'p <n>' header".to_string(),
        })?;
        Ok(Self::from_checked(n, edges))
    }

    /// Serializes to the edge-list format: `p` first, then edges sorted by
    /// `(u, v, weight)` with lowest-terms weights. Equal graphs serialize to
    /// identical bytes.
    pub fn to_text(&self) -> String {
        let mut out = format!("p {}\n", self.n);
        for e in self.sorted_edge_view() {
            out.push_str(&format!("e {} {} {}\n", e.u, e.v, e.weight));
        }
        out
    }
}

impl<S: Scalar> PartialEq for Graph<S> {
    /// Equality up to edge reordering (same vertex count, same multiset of
    /// normalized edge triples).
    fn eq(&self, other: &Self) -> bool {
        if self.n != other.n || self.edges.len() != other.edges.len() {
            return false;
        }
        self.sorted_edge_view()
            .into_iter()
            .zip(other.sorted_edge_view())
            .all(|(a, b)| a == b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::{rat, rint, Ratio};

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, vs.iter().copied())
    }

    #[test]
    fn volume_examples() {
        let k2 = Graph::<Ratio>::from_pairs(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.volume(&set(2, &[0])), rint(1));

        let hw = families::weighted_clique_loops(&rint(1), &rint(1), 3).unwrap();
        assert_eq!(hw.volume(&set(3, &[0])), rint(2));

        let w2 = families::windmill::<Ratio>(2).unwrap();
        assert_eq!(w2.volume(&set(5, &[0])), rint(4));
    }

    #[test]
    fn internal_edge_examples() {
        let k3 = Graph::<Ratio>::from_pairs(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(k3.internal_edges(&k3.full_set()), rint(3));

        let hw = families::weighted_clique_loops(&rint(1), &rint(1), 3).unwrap();
        assert_eq!(hw.internal_edges(&set(3, &[0])), rat(1, 2));

        let w2 = families::windmill::<Ratio>(2).unwrap();
        assert_eq!(w2.internal_edges(&set(5, &[1, 2])), rint(1));
    }

    #[test]
    fn cut_examples() {
        let k2 = Graph::<Ratio>::from_pairs(2, &[(0, 1)]).unwrap();
        assert_eq!(k2.cut(&set(2, &[0])), rint(1));

        let w2 = families::windmill::<Ratio>(2).unwrap();
        assert_eq!(w2.cut(&set(5, &[1, 2])), rint(2));
    }

    #[test]
    fn component_examples() {
        let two_triangles =
            Graph::<Ratio>::from_pairs(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)])
                .unwrap();
        let comps = two_triangles.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], set(6, &[0, 1, 2]));
        assert_eq!(comps[1], set(6, &[3, 4, 5]));

        let h = families::clique_with_leaves::<Ratio>(3, 2).unwrap();
        let g = families::with_disjoint_edges(&h, &rat(1, 2)).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 10);
        assert_eq!(comps[0].len(), 9);
        assert!(comps[1..].iter().all(|c| c.len() == 2));

        let w3 = families::windmill::<Ratio>(3).unwrap();
        assert_eq!(w3.components().len(), 1);
    }

    #[test]
    fn induced_examples() {
        let k4 = families::complete::<Ratio>(4);
        let (tri, map) = k4.induced(&set(4, &[0, 2, 3])).unwrap();
        assert_eq!(tri, families::complete::<Ratio>(3));
        assert_eq!(map, vec![0, 2, 3]);

        // One clique vertex of H(3,2) plus its two leaves induce a 2-edge star.
        let h = families::clique_with_leaves::<Ratio>(3, 2).unwrap();
        let (star, _) = h.induced(&set(9, &[0, 3, 4])).unwrap();
        assert_eq!(star.edge_weight_total(), &rint(2));
        assert_eq!(star.degree(0), &rint(2));

        // Outer vertices of the windmill induce a perfect matching.
        let w2 = families::windmill::<Ratio>(2).unwrap();
        let (m, _) = w2.induced(&set(5, &[1, 2, 3, 4])).unwrap();
        assert_eq!(m.edge_weight_total(), &rint(2));
        assert!(m.degree.iter().all(|d| d == &rint(1)));

        assert_eq!(
            k4.induced(&VertexSet::empty(4)).unwrap_err(),
            Error::EmptySet
        );
    }

    #[test]
    fn parse_examples() {
        let k2 = Graph::<Ratio>::parse("p 2\ne 0 1 1\n").unwrap();
        assert_eq!(k2, Graph::<Ratio>::from_pairs(2, &[(0, 1)]).unwrap());

        let loop_graph = Graph::<Ratio>::parse("p 1\ne 0 0 1/2\n").unwrap();
        assert_eq!(loop_graph.degree(0), &rint(1));
        assert_eq!(loop_graph.edge_weight_total(), &rat(1, 2));

        match Graph::<Ratio>::parse("p 2\ne 0\n") {
            Err(Error::Syntax { line: Some(2), .. }) => {}
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert_eq!(
            Graph::<Ratio>::parse("p 2\ne 0 2\n").unwrap_err(),
            Error::VertexOutOfRange { line: Some(2) }
        );
        assert_eq!(
            Graph::<Ratio>::parse("p 2\ne 0 1 0\n").unwrap_err(),
            Error::NonPositiveWeight { line: Some(2) }
        );
        assert!(matches!(
            Graph::<Ratio>::parse("e 0 1\np 2\n"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn serialization_is_canonical() {
        let a = Graph::<Ratio>::from_edges(3, vec![(2, 1, rint(1)), (0, 1, rat(2, 4))]).unwrap();
        let b = Graph::<Ratio>::from_edges(3, vec![(0, 1, rat(1, 2)), (1, 2, rint(1))]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.to_text(), "p 3\ne 0 1 1/2\ne 1 2 1\n");
        let round = Graph::<Ratio>::parse(&a.to_text()).unwrap();
        assert_eq!(round, a);
    }

    #[test]
    fn handshake_identity() {
        let g = Graph::<Ratio>::parse("p 4\ne 0 0 1/3\ne 0 1 2\ne 1 2\ne 2 3 5/2\n").unwrap();
        assert_eq!(g.volume_total(), g.edge_weight_total().double());
        let s = set(4, &[0, 1]);
        let lhs = g.volume(&s);
        let rhs = g.internal_edges(&s).double() + g.cut(&s);
        assert_eq!(lhs, rhs);
    }
}
