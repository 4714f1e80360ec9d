//! Independent oracles shared by the integration tests. Nothing here uses the
//! library's canonical codes or generators.
#![allow(dead_code)]

use std::collections::HashMap;

use mdsets::geniso::is_isomorphic_bruteforce;
use mdsets::Graph;
use rand::Rng;

/// Labeled tree with the given Prüfer sequence on `seq.len() + 2` vertices.
pub fn prufer_tree(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, &edges).unwrap()
}

/// Sorted degree sequence plus, per vertex, the sorted degrees of its
/// neighbours. Isomorphic graphs share the key.
fn invariant(g: &Graph) -> Vec<Vec<usize>> {
    let mut key: Vec<Vec<usize>> = (0..g.order())
        .map(|v| {
            let mut row = vec![g.degree(v)];
            let mut around: Vec<usize> = g.neighbors(v).iter().map(|u| g.degree(u)).collect();
            around.sort_unstable();
            row.extend(around);
            row
        })
        .collect();
    key.sort();
    key
}

/// One representative per isomorphism class, by brute-force isomorphism
/// within invariant buckets.
pub struct IsoDedup {
    buckets: HashMap<Vec<Vec<usize>>, Vec<Graph>>,
    count: usize,
}

impl IsoDedup {
    pub fn new() -> Self {
        IsoDedup {
            buckets: HashMap::new(),
            count: 0,
        }
    }

    pub fn insert(&mut self, g: Graph) -> bool {
        let bucket = self.buckets.entry(invariant(&g)).or_default();
        if bucket
            .iter()
            .any(|h| is_isomorphic_bruteforce(h, &g).unwrap())
        {
            return false;
        }
        bucket.push(g);
        self.count += 1;
        true
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn into_graphs(self) -> Vec<Graph> {
        self.buckets.into_values().flatten().collect()
    }
}

/// Every tree of order `n` up to isomorphism, from all `n^(n-2)` Prüfer
/// sequences.
pub fn oracle_trees(n: usize) -> Vec<Graph> {
    if n == 1 {
        return vec![Graph::empty(1).unwrap()];
    }
    if n == 2 {
        return vec![Graph::path(2).unwrap()];
    }
    let mut seen = IsoDedup::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        seen.insert(prufer_tree(&seq));
        let mut i = 0;
        while i < seq.len() && seq[i] == n - 1 {
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            break;
        }
        seq[i] += 1;
    }
    seen.into_graphs()
}

/// Every connected unicyclic graph of order `n` up to isomorphism: each
/// oracle tree plus each possible extra edge.
pub fn oracle_unicyclic(n: usize) -> Vec<Graph> {
    let mut seen = IsoDedup::new();
    for t in oracle_trees(n) {
        for a in 0..n {
            for b in a + 1..n {
                if !t.has_edge(a, b) {
                    seen.insert(t.with_edge(a, b).unwrap());
                }
            }
        }
    }
    seen.into_graphs()
}

/// A random connected graph: a random labeled tree plus each remaining pair
/// independently with probability `density`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, density: f64) -> Graph {
    let tree = if n <= 2 {
        if n == 1 {
            Graph::empty(1).unwrap()
        } else {
            Graph::path(2).unwrap()
        }
    } else {
        let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
        prufer_tree(&seq)
    };
    let mut g = tree;
    for a in 0..n {
        for b in a + 1..n {
            if !g.has_edge(a, b) && rng.gen_bool(density) {
                g = g.with_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// φ by brute force over all subsets, written against the definition only.
pub fn phi_by_definition(g: &Graph) -> u64 {
    let n = g.order();
    let inside = |s: u64, v: usize| s >> v & 1 == 1;
    let degree_in = |s: u64, v: usize| (0..n).filter(|&u| inside(s, u) && g.has_edge(u, v)).count();
    let dissociation = |s: u64| (0..n).all(|v| !inside(s, v) || degree_in(s, v) <= 1);
    (0u64..1 << n)
        .filter(|&s| dissociation(s) && (0..n).all(|v| inside(s, v) || !dissociation(s | 1 << v)))
        .count() as u64
}
