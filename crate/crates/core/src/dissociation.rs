//! Maximal dissociation sets: predicates, a subset-filter oracle, and the
//! optimized enumerator used for counting.
//!
//! A set `S` is a dissociation set when `G[S]` has maximum degree at most one,
//! and maximal when no vertex outside `S` can be added.
//!
//! The enumerator assigns every vertex one of three states, from the highest
//! label down: `Out`, `Free` (in `S` with no neighbour in `S`) or `Matched`
//! (in `S` with exactly one neighbour in `S`). A vertex's closed
//! neighbourhood is fully decided at a known step, and at that step we can
//! already tell whether a `Matched` vertex found its partner and whether an
//! `Out` vertex is blocked; either failure cuts the branch.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Largest order accepted by [`enumerate_mds_naive`].
pub const NAIVE_ORDER_CAP: usize = 24;

/// True iff every vertex of `s` has at most one neighbour in `s`.
pub fn is_dissociation(g: &Graph, s: VertexSet) -> bool {
    s.iter().all(|v| g.neighbors(v).intersection(s).len() <= 1)
}

/// Whether `s ∪ {v}` is still a dissociation set, assuming `s` is one.
pub fn addable(g: &Graph, s: VertexSet, v: usize) -> Result<bool> {
    if v >= g.order() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: g.order(),
        });
    }
    if s.contains(v) {
        return Err(Error::AlreadyInSet(v));
    }
    Ok(addable_unchecked(g, s, v))
}

#[inline]
fn addable_unchecked(g: &Graph, s: VertexSet, v: usize) -> bool {
    let inside = g.neighbors(v).intersection(s);
    match inside.len() {
        0 => true,
        1 => {
            let w = inside.first().unwrap();
            g.neighbors(w).intersection(s).is_empty()
        }
        _ => false,
    }
}

/// True iff `s` is a dissociation set and no outside vertex is addable.
pub fn is_maximal_dissociation(g: &Graph, s: VertexSet) -> bool {
    s.is_subset(g.vertices())
        && is_dissociation(g, s)
        && g.vertices()
            .difference(s)
            .iter()
            .all(|v| !addable_unchecked(g, s, v))
}

/// Every maximal dissociation set, by filtering all `2^n` subsets.
/// Output is ascending by packed value.
pub fn enumerate_mds_naive(g: &Graph) -> Result<Vec<VertexSet>> {
    if g.order() > NAIVE_ORDER_CAP {
        return Err(Error::CapExceeded {
            what: "the subset-filter oracle",
            order: g.order(),
            cap: NAIVE_ORDER_CAP,
        });
    }
    Ok((0..1u64 << g.order())
        .map(VertexSet::from_bits)
        .filter(|&s| is_maximal_dissociation(g, s))
        .collect())
}

/// Membership requirement on one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexStatus {
    /// `v ∉ S`
    Excluded,
    /// `v ∈ S`
    InAny,
    /// `v ∈ S` with no neighbour in `S`
    InDegree0,
    /// `v ∈ S` with exactly one neighbour in `S`
    InDegree1,
}

impl VertexStatus {
    fn allowed(self) -> u8 {
        match self {
            VertexStatus::Excluded => OUT,
            VertexStatus::InAny => FREE | MATCHED,
            VertexStatus::InDegree0 => FREE,
            VertexStatus::InDegree1 => MATCHED,
        }
    }
}

impl fmt::Display for VertexStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexStatus::Excluded => "excluded",
            VertexStatus::InAny => "in",
            VertexStatus::InDegree0 => "in0",
            VertexStatus::InDegree1 => "in1",
        })
    }
}

/// A constraint on one vertex, written `v=excluded|in|in0|in1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexConstraint {
    pub vertex: usize,
    pub status: VertexStatus,
}

impl VertexConstraint {
    pub const fn new(vertex: usize, status: VertexStatus) -> Self {
        VertexConstraint { vertex, status }
    }
    pub const fn excluded(vertex: usize) -> Self {
        Self::new(vertex, VertexStatus::Excluded)
    }
    pub const fn in_any(vertex: usize) -> Self {
        Self::new(vertex, VertexStatus::InAny)
    }
    pub const fn degree0(vertex: usize) -> Self {
        Self::new(vertex, VertexStatus::InDegree0)
    }
    pub const fn degree1(vertex: usize) -> Self {
        Self::new(vertex, VertexStatus::InDegree1)
    }
}

impl fmt::Display for VertexConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.vertex, self.status)
    }
}

impl FromStr for VertexConstraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "vertex constraint",
            input: s.to_string(),
        };
        let (v, status) = s.split_once('=').ok_or_else(bad)?;
        let vertex = v.trim().parse().map_err(|_| bad())?;
        let status = match status.trim() {
            "excluded" => VertexStatus::Excluded,
            "in" => VertexStatus::InAny,
            "in0" => VertexStatus::InDegree0,
            "in1" => VertexStatus::InDegree1,
            _ => return Err(bad()),
        };
        Ok(VertexConstraint { vertex, status })
    }
}

const OUT: u8 = 1;
const FREE: u8 = 2;
const MATCHED: u8 = 4;
const ANY: u8 = OUT | FREE | MATCHED;

/// Per-vertex admissible states, validated against the graph.
fn state_masks(g: &Graph, constraints: &[VertexConstraint]) -> Result<Vec<u8>> {
    let mut allowed = vec![ANY; g.order()];
    let mut seen = VertexSet::EMPTY;
    for c in constraints {
        if c.vertex >= g.order() {
            return Err(Error::VertexOutOfRange {
                vertex: c.vertex,
                order: g.order(),
            });
        }
        if seen.contains(c.vertex) {
            return Err(Error::DuplicateConstraint(c.vertex));
        }
        seen = seen.with(c.vertex);
        allowed[c.vertex] = c.status.allowed();
    }
    Ok(allowed)
}

struct Search<'a, F> {
    g: &'a Graph,
    allowed: Vec<u8>,
    // closes[v]: vertices whose closed neighbourhood is fully decided once v is
    closes: Vec<VertexSet>,
    visit: F,
}

impl<F: FnMut(VertexSet, VertexSet)> Search<'_, F> {
    /// `in_set`: decided members; `matched`: members declared degree one;
    /// `paired`: matched members whose partner is already decided.
    fn descend(&mut self, v: usize, in_set: VertexSet, matched: VertexSet, paired: VertexSet) {
        let nbrs = self.g.neighbors(v);
        let allowed = self.allowed[v];
        if allowed & OUT != 0 && self.closes_ok(v, in_set, matched, paired) {
            self.step(v, in_set, matched, paired);
        }
        let inside = nbrs.intersection(in_set);
        if allowed & FREE != 0 && inside.is_empty() {
            let in_set = in_set.with(v);
            if self.closes_ok(v, in_set, matched, paired) {
                self.step(v, in_set, matched, paired);
            }
        }
        if allowed & MATCHED != 0 {
            let (ok, paired) = match inside.len() {
                0 => (true, paired),
                1 => {
                    let w = inside.first().unwrap();
                    (
                        matched.contains(w) && !paired.contains(w),
                        paired.with(v).with(w),
                    )
                }
                _ => (false, paired),
            };
            if ok {
                let (in_set, matched) = (in_set.with(v), matched.with(v));
                if self.closes_ok(v, in_set, matched, paired) {
                    self.step(v, in_set, matched, paired);
                }
            }
        }
    }

    #[inline]
    fn step(&mut self, v: usize, in_set: VertexSet, matched: VertexSet, paired: VertexSet) {
        if v == 0 {
            debug_assert_eq!(matched, paired);
            // Independent of the pruning above: every leaf is re-checked.
            if is_maximal_dissociation(self.g, in_set) {
                (self.visit)(in_set, matched);
            }
        } else {
            self.descend(v - 1, in_set, matched, paired);
        }
    }

    /// Checks every vertex whose closed neighbourhood became fully decided
    /// with `v`.
    #[inline]
    fn closes_ok(
        &self,
        v: usize,
        in_set: VertexSet,
        matched: VertexSet,
        paired: VertexSet,
    ) -> bool {
        self.closes[v].iter().all(|u| {
            if matched.contains(u) {
                paired.contains(u)
            } else if in_set.contains(u) {
                true
            } else {
                let inside = self.g.neighbors(u).intersection(in_set);
                match inside.len() {
                    0 => false,
                    1 => matched.contains(inside.first().unwrap()),
                    _ => true,
                }
            }
        })
    }
}

/// Calls `visit(set, degree_one_members)` for every maximal dissociation set
/// satisfying `constraints`. Visit order is unspecified.
pub fn for_each_mds<F>(g: &Graph, constraints: &[VertexConstraint], visit: F) -> Result<()>
where
    F: FnMut(VertexSet, VertexSet),
{
    let allowed = state_masks(g, constraints)?;
    let n = g.order();
    let mut closes = vec![VertexSet::EMPTY; n];
    for u in 0..n {
        let last = g.neighbors(u).with(u).first().unwrap();
        closes[last] = closes[last].with(u);
    }
    let mut search = Search {
        g,
        allowed,
        closes,
        visit,
    };
    search.descend(n - 1, VertexSet::EMPTY, VertexSet::EMPTY, VertexSet::EMPTY);
    Ok(())
}

/// Every maximal dissociation set of `g`, ascending by packed value.
pub fn enumerate_mds(g: &Graph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    for_each_mds(g, &[], |s, _| out.push(s)).expect("no constraints");
    out.sort_unstable();
    out
}

/// `φ(G)`, the number of maximal dissociation sets.
pub fn phi(g: &Graph) -> u64 {
    phi_refined(g, &[]).expect("no constraints")
}

/// Number of maximal dissociation sets meeting every constraint.
pub fn phi_refined(g: &Graph, constraints: &[VertexConstraint]) -> Result<u64> {
    let mut count = 0u64;
    for_each_mds(g, constraints, |_, _| count += 1)?;
    Ok(count)
}

/// `φ(G - removed)`, where deleting every vertex leaves the empty graph whose
/// only maximal dissociation set is `∅`.
pub fn phi_after_deletion(g: &Graph, removed: VertexSet) -> Result<u64> {
    phi_refined_after_deletion(g, removed, &[])
}

/// Refined count on `G - removed`, with constraints given in `G`'s labels.
pub fn phi_refined_after_deletion(
    g: &Graph,
    removed: VertexSet,
    constraints: &[VertexConstraint],
) -> Result<u64> {
    if let Some(c) = constraints.iter().find(|c| removed.contains(c.vertex)) {
        return Err(Error::VertexOutOfRange {
            vertex: c.vertex,
            order: g.order() - removed.len(),
        });
    }
    if removed == g.vertices() {
        return Ok(1);
    }
    let (h, map) = g.delete_vertices(removed)?;
    let relabelled: Vec<_> = constraints
        .iter()
        .map(|c| {
            let new =
                map.iter()
                    .position(|&old| old == c.vertex)
                    .ok_or(Error::VertexOutOfRange {
                        vertex: c.vertex,
                        order: g.order(),
                    })?;
            Ok(VertexConstraint::new(new, c.status))
        })
        .collect::<Result<_>>()?;
    phi_refined(&h, &relabelled)
}

/// `(φ(G,v̄), φ(G,v⁰), φ(G,v¹))` for one vertex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexCounts {
    pub excluded: u64,
    pub degree0: u64,
    pub degree1: u64,
}

impl VertexCounts {
    pub fn sum(&self) -> u64 {
        self.excluded + self.degree0 + self.degree1
    }
}

/// `φ(G)` together with the per-vertex decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MdsProfile {
    pub total: u64,
    pub per_vertex: Vec<VertexCounts>,
}

/// One enumeration pass tallying, for every vertex, how many maximal
/// dissociation sets exclude it or contain it with induced degree 0 or 1.
pub fn mds_profile(g: &Graph) -> MdsProfile {
    let n = g.order();
    let mut total = 0u64;
    let mut free = vec![0u64; n];
    let mut matched_count = vec![0u64; n];
    for_each_mds(g, &[], |s, matched| {
        total += 1;
        for v in s.difference(matched) {
            free[v] += 1;
        }
        for v in matched {
            matched_count[v] += 1;
        }
    })
    .expect("no constraints");
    let per_vertex = (0..n)
        .map(|v| VertexCounts {
            excluded: total - free[v] - matched_count[v],
            degree0: free[v],
            degree1: matched_count[v],
        })
        .collect();
    MdsProfile { total, per_vertex }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    // a=0 b=1 c=2 d=3 along the path
    fn p3() -> Graph {
        Graph::path(3).unwrap()
    }
    fn p4() -> Graph {
        Graph::path(4).unwrap()
    }
    fn c3() -> Graph {
        Graph::cycle(3).unwrap()
    }

    #[test]
    fn dissociation_predicate() {
        assert!(is_dissociation(&p3(), set(&[0, 2])));
        assert!(is_dissociation(&p3(), set(&[0, 1])));
        assert!(!is_dissociation(&p3(), set(&[0, 1, 2])));
        assert!(is_dissociation(&p3(), VertexSet::EMPTY));
    }

    #[test]
    fn addable_predicate() {
        assert!(addable(&c3(), set(&[0]), 1).unwrap());
        assert!(!addable(&p4(), set(&[1, 2]), 0).unwrap());
        assert!(!addable(&p4(), set(&[0, 2, 3]), 1).unwrap());
        assert_eq!(addable(&p4(), set(&[1]), 1), Err(Error::AlreadyInSet(1)));
        assert!(addable(&p4(), set(&[1]), 9).is_err());
    }

    #[test]
    fn maximality_predicate() {
        assert!(is_maximal_dissociation(&c3(), set(&[0, 1])));
        assert!(!is_maximal_dissociation(&c3(), set(&[0])));
        assert!(is_maximal_dissociation(&p4(), set(&[1, 2])));
        assert!(!is_maximal_dissociation(&p4(), set(&[0, 1, 2])));
    }

    #[test]
    fn naive_oracle_small_cases() {
        // P4: {b,c}=0b0110, {a,b,d}=0b1011, {a,c,d}=0b1101
        assert_eq!(
            enumerate_mds_naive(&p4()).unwrap(),
            vec![set(&[1, 2]), set(&[0, 1, 3]), set(&[0, 2, 3])]
        );
        assert_eq!(
            enumerate_mds_naive(&Graph::empty(1).unwrap()).unwrap(),
            vec![set(&[0])]
        );
        assert_eq!(
            enumerate_mds_naive(&c3()).unwrap(),
            vec![set(&[0, 1]), set(&[0, 2]), set(&[1, 2])]
        );
        assert!(matches!(
            enumerate_mds_naive(&Graph::path(25).unwrap()),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn enumerator_matches_oracle_on_small_graphs() {
        for g in [
            p4(),
            c3(),
            Graph::cycle(6).unwrap(),
            Graph::cycle(12).unwrap(),
            Graph::star(5).unwrap(),
        ] {
            assert_eq!(enumerate_mds(&g), enumerate_mds_naive(&g).unwrap(), "{g:?}");
        }
        assert_eq!(enumerate_mds(&Graph::cycle(6).unwrap()).len(), 5);
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&c3()), 3);
        let u31 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]).unwrap();
        assert_eq!(phi(&u31), 4);
        assert_eq!(phi(&Graph::path(5).unwrap()), 4);
        assert_eq!(phi(&Graph::empty(1).unwrap()), 1);
        assert_eq!(phi(&Graph::empty(3).unwrap()), 1);
    }

    #[test]
    fn refined_examples() {
        assert_eq!(
            phi_refined(&c3(), &[VertexConstraint::degree0(0)]).unwrap(),
            0
        );
        assert_eq!(
            phi_refined(&c3(), &[VertexConstraint::excluded(0)]).unwrap(),
            1
        );
        assert_eq!(
            phi_refined(&p3(), &[VertexConstraint::degree0(1)]).unwrap(),
            0
        );
        assert_eq!(phi_refined(&p4(), &[]).unwrap(), phi(&p4()));
        assert_eq!(
            phi_refined(&p4(), &[VertexConstraint::in_any(0)]).unwrap(),
            2
        );
        assert_eq!(
            phi_refined(
                &p4(),
                &[VertexConstraint::in_any(0), VertexConstraint::degree0(3)]
            )
            .unwrap(),
            1
        );
        assert_eq!(
            phi_refined(
                &p4(),
                &[VertexConstraint::excluded(0), VertexConstraint::in_any(0)]
            ),
            Err(Error::DuplicateConstraint(0))
        );
        assert!(phi_refined(&p4(), &[VertexConstraint::excluded(7)]).is_err());
    }

    #[test]
    fn profile_examples() {
        let prof = mds_profile(&c3());
        assert_eq!(prof.total, 3);
        for counts in &prof.per_vertex {
            assert_eq!(
                *counts,
                VertexCounts {
                    excluded: 1,
                    degree0: 0,
                    degree1: 2
                }
            );
        }
        let k1 = mds_profile(&Graph::empty(1).unwrap());
        assert_eq!(
            k1.per_vertex,
            vec![VertexCounts {
                excluded: 0,
                degree0: 1,
                degree1: 0
            }]
        );

        // P4 vertex a: {b,c} excludes it; {a,b,d} has a matched; {a,c,d} has a free
        let a = mds_profile(&p4()).per_vertex[0];
        assert_eq!(
            a,
            VertexCounts {
                excluded: 1,
                degree0: 1,
                degree1: 1
            }
        );
        assert_eq!(a.sum(), 3);
    }

    #[test]
    fn deletion_counts() {
        let c3 = c3();
        assert_eq!(phi_after_deletion(&c3, VertexSet::full(3)).unwrap(), 1);
        assert_eq!(phi_after_deletion(&c3, set(&[0])).unwrap(), 1);
        let c6 = Graph::cycle(6).unwrap();
        assert_eq!(
            phi_after_deletion(&c6, set(&[0])).unwrap(),
            phi(&Graph::path(5).unwrap())
        );
        // constraint on vertex 5 of C6 becomes vertex 4 of P5 (an end)
        assert_eq!(
            phi_refined_after_deletion(&c6, set(&[0]), &[VertexConstraint::degree0(5)]).unwrap(),
            phi_refined(&Graph::path(5).unwrap(), &[VertexConstraint::degree0(4)]).unwrap()
        );
        assert!(
            phi_refined_after_deletion(&c6, set(&[0]), &[VertexConstraint::degree0(0)]).is_err()
        );
    }

    #[test]
    fn constraint_parsing() {
        let c: VertexConstraint = "0=in0".parse().unwrap();
        assert_eq!(c, VertexConstraint::degree0(0));
        assert_eq!(
            "3=excluded".parse::<VertexConstraint>().unwrap(),
            VertexConstraint::excluded(3)
        );
        assert_eq!(
            "2=in".parse::<VertexConstraint>().unwrap(),
            VertexConstraint::in_any(2)
        );
        assert_eq!(
            "2=in1".parse::<VertexConstraint>().unwrap().to_string(),
            "2=in1"
        );
        assert!("2=in2".parse::<VertexConstraint>().is_err());
        assert!("x=in".parse::<VertexConstraint>().is_err());
        assert!("5".parse::<VertexConstraint>().is_err());
    }
}
