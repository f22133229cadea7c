//! Dense vertex subsets and vertex partitions.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

/// Subset of `{0, .., universe-1}` with bitmask semantics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    universe: usize,
    blocks: Vec<u64>,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            universe,
            blocks: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for b in 0..s.blocks.len() {
            s.blocks[b] = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn singleton(universe: usize, v: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(v);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, iter: I) -> Self {
        let mut s = Self::empty(universe);
        for v in iter {
            s.insert(v);
        }
        s
    }

    fn trim(&mut self) {
        let extra = self.blocks.len() * 64 - self.universe;
        if extra > 0 {
            if let Some(last) = self.blocks.last_mut() {
                *last &= u64::MAX >> extra;
            }
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, v: usize) {
        assert!(
            v < self.universe,
            "vertex {v} outside universe {}",
            self.universe
        );
        self.blocks[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        assert!(v < self.universe);
        self.blocks[v / 64] &= !(1 << (v % 64));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe && self.blocks[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    /// Nonempty proper subset of the universe.
    pub fn is_proper_nonempty(&self) -> bool {
        let k = self.len();
        k > 0 && k < self.universe
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(i, &block)| {
            let base = i * 64;
            std::iter::successors(if block == 0 { None } else { Some(block) }, |&b| {
                let b = b & (b - 1);
                if b == 0 {
                    None
                } else {
                    Some(b)
                }
            })
            .map(move |b| base + b.trailing_zeros() as usize)
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn complement(&self) -> Self {
        let mut out = Self::full(self.universe);
        for (o, s) in out.blocks.iter_mut().zip(&self.blocks) {
            *o &= !s;
        }
        out
    }

    pub fn union(&self, other: &Self) -> Self {
        assert_eq!(self.universe, other.universe);
        let mut out = self.clone();
        for (o, s) in out.blocks.iter_mut().zip(&other.blocks) {
            *o |= s;
        }
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.universe, other.universe);
        let mut out = self.clone();
        for (o, s) in out.blocks.iter_mut().zip(&other.blocks) {
            *o &= s;
        }
        out
    }

    pub fn difference(&self, other: &Self) -> Self {
        assert_eq!(self.universe, other.universe);
        let mut out = self.clone();
        for (o, s) in out.blocks.iter_mut().zip(&other.blocks) {
            *o &= !s;
        }
        out
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & b == 0)
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    /// Compares characteristic vectors as numbers (vertex `v` is bit `v`);
    /// the canonical representative of a family of sets is the smallest.
    pub fn mask_cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.universe, other.universe);
        for (a, b) in self.blocks.iter().rev().zip(other.blocks.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mask_cmp(other)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in self.iter() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for v in self.iter() {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// Disjoint cover of `{0, .., universe-1}` by nonempty parts, kept in
/// canonical order (parts sorted by smallest member).
#[derive(Clone, PartialEq, Eq)]
pub struct Partition {
    universe: usize,
    parts: Vec<VertexSet>,
    part_of: Vec<usize>,
}

impl Partition {
    pub fn new(universe: usize, mut parts: Vec<VertexSet>) -> Result<Self> {
        let mut part_of = vec![usize::MAX; universe];
        for part in &parts {
            if part.universe() != universe || part.is_empty() {
                return Err(Error::PartitionMismatch);
            }
            for v in part.iter() {
                if part_of[v] != usize::MAX {
                    return Err(Error::PartitionMismatch);
                }
                part_of[v] = 0;
            }
        }
        if part_of.contains(&usize::MAX) {
            return Err(Error::PartitionMismatch);
        }
        parts.sort_by_key(|p| p.first().unwrap());
        for (i, part) in parts.iter().enumerate() {
            for v in part.iter() {
                part_of[v] = i;
            }
        }
        Ok(Self {
            universe,
            parts,
            part_of,
        })
    }

    /// Builds a partition from a part id per vertex.
    pub fn from_part_ids(ids: &[usize]) -> Self {
        let universe = ids.len();
        let mut seen: Vec<(usize, VertexSet)> = Vec::new();
        for (v, &id) in ids.iter().enumerate() {
            match seen.iter_mut().find(|(i, _)| *i == id) {
                Some((_, set)) => set.insert(v),
                None => seen.push((id, VertexSet::singleton(universe, v))),
            }
        }
        let parts = seen.into_iter().map(|(_, s)| s).collect();
        Self::new(universe, parts).expect("part ids always form a partition")
    }

    pub fn one_part(universe: usize) -> Self {
        if universe == 0 {
            return Self {
                universe,
                parts: vec![],
                part_of: vec![],
            };
        }
        Self::new(universe, vec![VertexSet::full(universe)]).unwrap()
    }

    pub fn singletons(universe: usize) -> Self {
        let parts = (0..universe)
            .map(|v| VertexSet::singleton(universe, v))
            .collect();
        Self {
            universe,
            parts,
            part_of: (0..universe).collect(),
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    /// True when the members of `set` touch more than one part.
    pub fn splits(&self, set: &VertexSet) -> bool {
        let mut found = None;
        for v in set.iter() {
            match found {
                None => found = Some(self.part_of[v]),
                Some(p) if p != self.part_of[v] => return true,
                _ => {}
            }
        }
        false
    }

    pub fn contains_part(&self, set: &VertexSet) -> bool {
        self.parts.iter().any(|p| p == set)
    }

    /// Nonempty intersections of the parts with `set`, in part order.
    pub fn restrict(&self, set: &VertexSet) -> Vec<VertexSet> {
        self.parts
            .iter()
            .map(|p| p.intersection(set))
            .filter(|p| !p.is_empty())
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for part in &self.parts {
            if !first {
                write!(f, " | ")?;
            }
            write!(f, "{part}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition[{self}]")
    }
}
