//! Canonical codes and isomorphism-free generators for trees, caterpillars
//! and connected unicyclic graphs.
//!
//! Rooted trees use the AHU parenthesis code. Free trees are coded from
//! their centroid(s). A unicyclic graph is a cycle with a rooted tree hanging
//! from every cycle vertex, so its code is the cycle length followed by the
//! smallest rotation or reflection of the sequence of hanging-tree codes.
//! AHU codes are balanced parenthesis strings and hence prefix-free, which
//! makes comparing concatenations the same as comparing sequences.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Default order caps of the generators.
pub const DEFAULT_TREE_CAP: usize = 14;
pub const DEFAULT_UNICYCLIC_CAP: usize = 13;

/// Largest order accepted by [`is_isomorphic_bruteforce`].
pub const BRUTEFORCE_ISO_CAP: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeKind {
    RootedTree,
    FreeTree,
    Unicyclic,
}

/// Byte string identifying a graph of a given kind up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    pub kind: CodeKind,
    pub bytes: Vec<u8>,
}

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        // codes are built from ASCII only
        std::str::from_utf8(&self.bytes).expect("canonical codes are ASCII")
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// AHU code of the tree hanging from `v` away from `parent`, never entering
/// `blocked`.
fn hanging_code(g: &Graph, v: usize, parent: Option<usize>, blocked: VertexSet) -> Vec<u8> {
    let mut children: Vec<Vec<u8>> = g
        .neighbors(v)
        .difference(blocked)
        .iter()
        .filter(|&c| Some(c) != parent)
        .map(|c| hanging_code(g, c, Some(v), blocked))
        .collect();
    children.sort_unstable();
    let mut out = Vec::with_capacity(2 + children.iter().map(Vec::len).sum::<usize>());
    out.push(b'(');
    for c in children {
        out.extend_from_slice(&c);
    }
    out.push(b')');
    out
}

fn require_tree(g: &Graph) -> Result<()> {
    if g.is_tree() {
        Ok(())
    } else {
        Err(Error::WrongClass { expected: "tree" })
    }
}

/// AHU code of the tree `g` rooted at `root`.
pub fn ahu_code(g: &Graph, root: usize) -> Result<CanonicalCode> {
    require_tree(g)?;
    if root >= g.order() {
        return Err(Error::VertexOutOfRange {
            vertex: root,
            order: g.order(),
        });
    }
    Ok(CanonicalCode {
        kind: CodeKind::RootedTree,
        bytes: hanging_code(g, root, None, VertexSet::EMPTY),
    })
}

/// The one or two centroids of a tree.
pub fn centroids(g: &Graph) -> Result<VertexSet> {
    require_tree(g)?;
    let n = g.order();
    Ok((0..n)
        .filter(|&v| {
            let rest = g.vertices().without(v);
            g.neighbors(v)
                .iter()
                .all(|u| 2 * g.component_within(u, rest).len() <= n)
        })
        .collect())
}

/// Free-tree code: the smaller of the codes rooted at the centroids.
pub fn tree_code(g: &Graph) -> Result<CanonicalCode> {
    let bytes = centroids(g)?
        .iter()
        .map(|c| hanging_code(g, c, None, VertexSet::EMPTY))
        .min()
        .expect("every tree has a centroid");
    Ok(CanonicalCode {
        kind: CodeKind::FreeTree,
        bytes,
    })
}

/// Cycle vertices of a unicyclic graph in cyclic order, starting from the
/// smallest label.
pub fn cycle_order(g: &Graph) -> Result<Vec<usize>> {
    let cycle = g.cycle_vertices()?;
    let start = cycle.first().expect("a cycle is never empty");
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = g.neighbors(start).intersection(cycle).first().unwrap();
    while cur != start {
        order.push(cur);
        let next = g
            .neighbors(cur)
            .intersection(cycle)
            .without(prev)
            .first()
            .unwrap();
        prev = cur;
        cur = next;
    }
    Ok(order)
}

/// Code of a connected unicyclic graph: `C<r>:` followed by the least
/// rotation/reflection of the hanging-tree codes around the cycle.
pub fn unicyclic_code(g: &Graph) -> Result<CanonicalCode> {
    let cycle = cycle_order(g).map_err(|_| Error::WrongClass {
        expected: "unicyclic graph",
    })?;
    let on_cycle: VertexSet = cycle.iter().copied().collect();
    let codes: Vec<Vec<u8>> = cycle
        .iter()
        .map(|&c| hanging_code(g, c, None, on_cycle.without(c)))
        .collect();
    let body = least_dihedral_concat(&codes);
    let mut bytes = format!("C{}:", cycle.len()).into_bytes();
    bytes.extend_from_slice(&body);
    Ok(CanonicalCode {
        kind: CodeKind::Unicyclic,
        bytes,
    })
}

/// Lexicographically least concatenation over all rotations and reflections.
fn least_dihedral_concat(codes: &[Vec<u8>]) -> Vec<u8> {
    let r = codes.len();
    let mut best: Option<Vec<u8>> = None;
    for start in 0..r {
        for step in [1, r - 1] {
            let candidate: Vec<u8> = (0..r)
                .flat_map(|i| codes[(start + i * step) % r].iter().copied())
                .collect();
            if best.as_ref().is_none_or(|b| candidate < *b) {
                best = Some(candidate);
            }
        }
    }
    best.unwrap_or_default()
}

/// Isomorphism test by backtracking over degree-compatible assignments.
pub fn is_isomorphic_bruteforce(g: &Graph, h: &Graph) -> Result<bool> {
    for x in [g, h] {
        if x.order() > BRUTEFORCE_ISO_CAP {
            return Err(Error::CapExceeded {
                what: "brute-force isomorphism",
                order: x.order(),
                cap: BRUTEFORCE_ISO_CAP,
            });
        }
    }
    let n = g.order();
    if n != h.order() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let degrees = |x: &Graph| {
        let mut d: Vec<usize> = (0..n).map(|v| x.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if degrees(g) != degrees(h) {
        return Ok(false);
    }
    let mut image = vec![usize::MAX; n];
    Ok(extend_map(g, h, 0, &mut image, VertexSet::EMPTY))
}

fn extend_map(g: &Graph, h: &Graph, v: usize, image: &mut [usize], used: VertexSet) -> bool {
    if v == g.order() {
        return true;
    }
    for w in h.vertices().difference(used) {
        if h.degree(w) != g.degree(v) {
            continue;
        }
        let consistent = (0..v).all(|u| g.has_edge(u, v) == h.has_edge(image[u], w));
        if consistent {
            image[v] = w;
            if extend_map(g, h, v + 1, image, used.with(w)) {
                return true;
            }
        }
    }
    false
}

/// Rooted trees of each size up to a bound, one per isomorphism class, all
/// rooted at vertex 0 and sorted by AHU code.
#[derive(Clone, Debug)]
pub struct RootedTreeTable {
    by_size: Vec<Vec<(CanonicalCode, Graph)>>,
}

impl RootedTreeTable {
    /// Builds every size in `1..=max_size`.
    pub fn new(max_size: usize) -> Result<Self> {
        let mut by_size: Vec<Vec<(CanonicalCode, Graph)>> = vec![Vec::new()];
        if max_size == 0 {
            return Ok(RootedTreeTable { by_size });
        }
        let k1 = Graph::empty(1)?;
        by_size.push(vec![(ahu_code(&k1, 0)?, k1)]);
        for size in 2..=max_size {
            let mut seen = BTreeMap::new();
            for (_, t) in &by_size[size - 1] {
                for v in 0..t.order() {
                    let grown = t.extended(1, &[(v, t.order())])?;
                    seen.entry(ahu_code(&grown, 0)?).or_insert(grown);
                }
            }
            by_size.push(seen.into_iter().collect());
        }
        Ok(RootedTreeTable { by_size })
    }

    pub fn max_size(&self) -> usize {
        self.by_size.len() - 1
    }

    /// Rooted trees with exactly `size` vertices.
    pub fn of_size(&self, size: usize) -> &[(CanonicalCode, Graph)] {
        self.by_size.get(size).map_or(&[], Vec::as_slice)
    }
}

/// Generator configuration: the largest order each class may be asked for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorCaps {
    pub trees: usize,
    pub unicyclic: usize,
}

impl Default for GeneratorCaps {
    fn default() -> Self {
        GeneratorCaps {
            trees: DEFAULT_TREE_CAP,
            unicyclic: DEFAULT_UNICYCLIC_CAP,
        }
    }
}

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OrderOutOfRange(0));
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what,
            order: n,
            cap,
        });
    }
    Ok(())
}

/// All trees of order `n` up to isomorphism, sorted by [`tree_code`].
pub fn generate_trees_capped(n: usize, cap: usize) -> Result<Vec<Graph>> {
    check_cap("tree generation", n, cap)?;
    let mut level: Vec<(CanonicalCode, Graph)> =
        vec![(tree_code(&Graph::empty(1)?)?, Graph::empty(1)?)];
    for _ in 2..=n {
        let mut seen = BTreeMap::new();
        for (_, t) in &level {
            for v in 0..t.order() {
                let grown = t.extended(1, &[(v, t.order())])?;
                seen.entry(tree_code(&grown)?).or_insert(grown);
            }
        }
        level = seen.into_iter().collect();
    }
    Ok(level.into_iter().map(|(_, g)| g).collect())
}

pub fn generate_trees(n: usize) -> Result<Vec<Graph>> {
    generate_trees_capped(n, DEFAULT_TREE_CAP)
}

/// Caterpillars of order `n`, in tree order.
pub fn generate_caterpillars_capped(n: usize, cap: usize) -> Result<Vec<Graph>> {
    Ok(generate_trees_capped(n, cap)?
        .into_iter()
        .filter(Graph::is_caterpillar)
        .collect())
}

pub fn generate_caterpillars(n: usize) -> Result<Vec<Graph>> {
    generate_caterpillars_capped(n, DEFAULT_TREE_CAP)
}

/// Connected unicyclic graphs of order `n` up to isomorphism, ordered by
/// cycle length and then by [`unicyclic_code`]. Cycle vertices are labelled
/// `0..r` in cyclic order.
pub fn generate_unicyclic_capped(n: usize, cap: usize) -> Result<Vec<Graph>> {
    check_cap("unicyclic generation", n, cap)?;
    if n < 3 {
        return Ok(Vec::new());
    }
    let table = RootedTreeTable::new(n - 2)?;
    let mut out = Vec::new();
    for r in 3..=n {
        let mut seen: BTreeMap<CanonicalCode, Graph> = BTreeMap::new();
        let mut sizes = vec![1usize; r];
        sizes[0] = n - r + 1;
        loop {
            attach_all(&table, &sizes, &mut seen)?;
            if !next_composition(&mut sizes) {
                break;
            }
        }
        out.extend(seen.into_values());
    }
    Ok(out)
}

pub fn generate_unicyclic(n: usize) -> Result<Vec<Graph>> {
    generate_unicyclic_capped(n, DEFAULT_UNICYCLIC_CAP)
}

/// Steps through compositions of a fixed total into `len` positive parts,
/// in reverse lexicographic order starting from `[total-len+1, 1, .., 1]`.
fn next_composition(parts: &mut [usize]) -> bool {
    let len = parts.len();
    // rightmost position before the last one that can give a unit away
    let Some(i) = (0..len - 1).rev().find(|&i| parts[i] > 1) else {
        return false;
    };
    let tail: usize = parts[i + 1..].iter().sum();
    parts[i] -= 1;
    parts[i + 1] = tail + 1 - (len - i - 2);
    for p in &mut parts[i + 2..] {
        *p = 1;
    }
    true
}

/// Hangs every combination of rooted trees with the given sizes on a cycle.
fn attach_all(
    table: &RootedTreeTable,
    sizes: &[usize],
    seen: &mut BTreeMap<CanonicalCode, Graph>,
) -> Result<()> {
    let r = sizes.len();
    let mut choice = vec![0usize; r];
    loop {
        let mut edges: Vec<(usize, usize)> = (0..r).map(|i| (i, (i + 1) % r)).collect();
        let mut next = r;
        for (pos, (&size, &idx)) in sizes.iter().zip(&choice).enumerate() {
            let tree = &table.of_size(size)[idx].1;
            // tree vertex 0 is the cycle vertex, others get fresh labels
            let label = |v: usize| if v == 0 { pos } else { next + v - 1 };
            edges.extend(tree.edges().map(|(a, b)| (label(a), label(b))));
            next += size - 1;
        }
        let g = Graph::from_edges(next, &edges)?;
        seen.entry(unicyclic_code(&g)?).or_insert(g);

        // odometer over the per-position choices
        let mut pos = r;
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < table.of_size(sizes[pos]).len() {
                break;
            }
            choice[pos] = 0;
        }
    }
}
