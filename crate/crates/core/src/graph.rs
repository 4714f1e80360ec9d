//! Small simple undirected graphs (order at most 64) with bit-packed adjacency.
//!
//! Every row of the adjacency matrix is a single `u64`, so neighbourhoods,
//! vertex subsets and the set operations used by the enumerator are one
//! machine word each. Graphs are immutable: surgery returns a new graph.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported graph order.
pub const MAX_ORDER: usize = 64;

#[inline(always)]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline(always)]
pub(crate) const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A subset of `{0, .., 63}` packed into one word.
///
/// Ordering is the numeric order of the packed value, which is the canonical
/// output order of the enumerators.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// `{0, .., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        VertexSet(low_bits(n))
    }

    #[inline]
    pub const fn singleton(v: usize) -> Self {
        VertexSet(bit(v))
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & bit(v) != 0
    }

    #[inline]
    pub const fn with(self, v: usize) -> Self {
        VertexSet(self.0 | bit(v))
    }

    #[inline]
    pub const fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !bit(v))
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    #[inline]
    pub const fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member, if any.
    #[inline]
    pub const fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Members in ascending order.
    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(VertexSet::EMPTY, VertexSet::with)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone, Debug)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

// Sets travel as sorted vertex lists.
impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let vertices = Vec::<usize>::deserialize(deserializer)?;
        if let Some(&v) = vertices.iter().find(|&&v| v >= MAX_ORDER) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(vertices.into_iter().collect())
    }
}

/// Coarse structural class of a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    Tree,
    Unicyclic,
    Other,
}

/// Result of [`Graph::classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub class: GraphClass,
    pub components: usize,
}

/// Immutable simple undirected graph on vertices `0..order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        Ok(Graph {
            order: n,
            adj: vec![0; n],
        })
    }

    /// Builds a graph from an edge list. Repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = Graph::empty(n)?.adj;
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        order: n,
                    });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            adj[a] |= bit(b);
            adj[b] |= bit(a);
        }
        Ok(Graph::from_rows_unchecked(n, adj))
    }

    pub(crate) fn from_rows_unchecked(order: usize, adj: Vec<u64>) -> Self {
        let g = Graph { order, adj };
        debug_assert!(g.invariants_hold(), "broken adjacency invariants");
        g
    }

    /// Builds a graph from adjacency rows, validating symmetry and loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        let g = Graph {
            order: n,
            adj: rows,
        };
        if !g.invariants_hold() {
            return Err(Error::Parse {
                what: "adjacency rows",
                input: format!("{:?}", g.adj),
            });
        }
        Ok(g)
    }

    /// Symmetric, loop-free, and confined to `0..order`.
    pub fn invariants_hold(&self) -> bool {
        let mask = low_bits(self.order);
        (0..self.order).all(|i| {
            let row = self.adj[i];
            row & !mask == 0
                && row & bit(i) == 0
                && VertexSet(row).iter().all(|j| self.adj[j] & bit(i) != 0)
        })
    }

    /// The path `0 - 1 - .. - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// The cycle `0 - 1 - .. - (n-1) - 0`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::CycleTooShort(n));
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    /// The star `K_{1,k}` with centre 0.
    pub fn star(k: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=k).map(|i| (0, i)).collect();
        Graph::from_edges(k + 1, &edges)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// All vertices as a set.
    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    /// Raw adjacency rows.
    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.order && b < self.order && self.adj[a] & bit(b) != 0
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order).flat_map(move |i| {
            VertexSet(self.adj[i] & !low_bits(i + 1))
                .iter()
                .map(move |j| (i, j))
        })
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order,
            })
        }
    }

    fn check_set(&self, s: VertexSet) -> Result<()> {
        match s.difference(self.vertices()).first() {
            None => Ok(()),
            Some(v) => Err(Error::VertexOutOfRange {
                vertex: v,
                order: self.order,
            }),
        }
    }

    /// `N(v)`. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// `N(v)`, range checked.
    pub fn open_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.neighbors(v))
    }

    /// `N[v] = N(v) ∪ {v}`, range checked.
    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet> {
        self.check_vertex(v)?;
        Ok(self.neighbors(v).with(v))
    }

    /// `|N(v)|`. Panics if `v` is out of range.
    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Induced subgraph on `V \ removed`, relabelled compactly in the original
    /// vertex order. The second component maps each new label to its old one.
    pub fn delete_vertices(&self, removed: VertexSet) -> Result<(Graph, Vec<usize>)> {
        self.check_set(removed)?;
        let kept = self.vertices().difference(removed);
        if kept.is_empty() {
            return Err(Error::RemovesAllVertices);
        }
        let map = kept.to_vec();
        Ok((self.induced_on(&map), map))
    }

    /// Subgraph induced by `map`, where vertex `i` of the result is `map[i]`.
    fn induced_on(&self, map: &[usize]) -> Graph {
        let adj = map
            .iter()
            .map(|&old| {
                map.iter()
                    .enumerate()
                    .filter(|&(_, &o)| self.adj[old] & bit(o) != 0)
                    .fold(0u64, |row, (new, _)| row | bit(new))
            })
            .collect();
        Graph::from_rows_unchecked(map.len(), adj)
    }

    /// Graph with `self` on `0..|G|` and `other` shifted by `|G|`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.order + other.order;
        if n > MAX_ORDER {
            return Err(Error::OrderOutOfRange(n));
        }
        let shift = self.order;
        let adj = self
            .adj
            .iter()
            .copied()
            .chain(other.adj.iter().map(|r| r << shift))
            .collect();
        Ok(Graph::from_rows_unchecked(n, adj))
    }

    /// Appends `extra` new vertices (labelled `order..order+extra`) and adds
    /// the given edges, which may touch old and new vertices.
    pub fn extended(&self, extra: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let n = self.order + extra;
        let mut all: Vec<(usize, usize)> = self.edges().collect();
        all.extend_from_slice(edges);
        Graph::from_edges(n, &all)
    }

    /// Same graph plus edge `a b`.
    pub fn with_edge(&self, a: usize, b: usize) -> Result<Graph> {
        self.extended(0, &[(a, b)])
    }

    /// Same graph minus edge `a b` (a no-op if absent).
    pub fn without_edge(&self, a: usize, b: usize) -> Result<Graph> {
        self.check_vertex(a)?;
        self.check_vertex(b)?;
        let mut adj = self.adj.clone();
        adj[a] &= !bit(b);
        adj[b] &= !bit(a);
        Ok(Graph::from_rows_unchecked(self.order, adj))
    }

    /// Relabels by `perm`: old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        let mut seen = VertexSet::EMPTY;
        if perm.len() != self.order {
            return Err(Error::Parse {
                what: "permutation",
                input: format!("{perm:?}"),
            });
        }
        for &p in perm {
            if p >= self.order || seen.contains(p) {
                return Err(Error::Parse {
                    what: "permutation",
                    input: format!("{perm:?}"),
                });
            }
            seen = seen.with(p);
        }
        let edges: Vec<_> = self.edges().map(|(a, b)| (perm[a], perm[b])).collect();
        Graph::from_edges(self.order, &edges)
    }

    /// Vertices reachable from `start`.
    pub fn component_of(&self, start: usize) -> VertexSet {
        self.component_within(start, self.vertices())
    }

    /// Vertices reachable from `start` through vertices of `allowed`.
    pub fn component_within(&self, start: usize, allowed: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = frontier
                .iter()
                .fold(VertexSet::EMPTY, |acc, v| acc.union(self.neighbors(v)))
                .intersection(allowed)
                .difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    pub fn component_count(&self) -> usize {
        let mut left = self.vertices();
        let mut count = 0;
        while let Some(v) = left.first() {
            left = left.difference(self.component_of(v));
            count += 1;
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0) == self.vertices()
    }

    /// Tree iff connected with `n-1` edges; unicyclic iff connected with `n` edges.
    pub fn classify(&self) -> Classification {
        let components = self.component_count();
        let m = self.edge_count();
        let class = match (components, m) {
            (1, m) if m + 1 == self.order => GraphClass::Tree,
            (1, m) if m == self.order => GraphClass::Unicyclic,
            _ => GraphClass::Other,
        };
        Classification { class, components }
    }

    pub fn is_tree(&self) -> bool {
        self.classify().class == GraphClass::Tree
    }

    pub fn is_unicyclic(&self) -> bool {
        self.classify().class == GraphClass::Unicyclic
    }

    /// Vertices left after repeatedly stripping vertices of degree one.
    fn peel_leaves(&self) -> VertexSet {
        let mut alive = self.vertices();
        loop {
            let leaves: VertexSet = alive
                .iter()
                .filter(|&v| self.neighbors(v).intersection(alive).len() == 1)
                .collect();
            if leaves.is_empty() {
                return alive;
            }
            alive = alive.difference(leaves);
        }
    }

    /// The vertices on the unique cycle of a unicyclic graph.
    pub fn cycle_vertices(&self) -> Result<VertexSet> {
        if !self.is_unicyclic() {
            return Err(Error::WrongClass {
                expected: "unicyclic graph",
            });
        }
        Ok(self.peel_leaves())
    }

    /// Vertices of degree one.
    pub fn leaves(&self) -> VertexSet {
        (0..self.order).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Neighbours of leaves.
    pub fn support_vertices(&self) -> VertexSet {
        self.leaves()
            .iter()
            .fold(VertexSet::EMPTY, |acc, v| acc.union(self.neighbors(v)))
    }

    /// A tree whose non-leaf vertices induce a path.
    pub fn is_caterpillar(&self) -> bool {
        if !self.is_tree() {
            return false;
        }
        let spine = self.vertices().difference(self.leaves());
        // The spine of a tree is connected, so it is a path iff no spine
        // vertex has three spine neighbours.
        spine
            .iter()
            .all(|v| self.neighbors(v).intersection(spine).len() <= 2)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.order)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}
