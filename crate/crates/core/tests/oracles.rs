mod common;

use mdsets::dissociation::{enumerate_mds, enumerate_mds_naive, phi};
use mdsets::families::{enumerate_u_rt_class, u_rt};
use mdsets::geniso::{
    generate_caterpillars, generate_trees, generate_unicyclic, is_isomorphic_bruteforce, tree_code,
    unicyclic_code,
};
use mdsets::{Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{oracle_trees, oracle_unicyclic, phi_by_definition, prufer_tree, IsoDedup};

#[test]
fn prufer_decoding_gives_trees() {
    let star = prufer_tree(&[0, 0, 0]);
    assert_eq!(star.degree(0), 4);
    let path = prufer_tree(&[1, 2]);
    assert_eq!(path, Graph::path(4).unwrap());
    for seq in [[3, 3, 1, 0], [0, 1, 2, 3], [5, 5, 5, 5]] {
        assert!(prufer_tree(&seq).is_tree());
    }
}

#[test]
fn tree_counts_match_the_prufer_oracle() {
    for (n, expected) in (1..=8).zip([1, 1, 1, 2, 3, 6, 11, 23]) {
        assert_eq!(oracle_trees(n).len(), expected, "oracle n={n}");
        assert_eq!(
            generate_trees(n).unwrap().len(),
            expected,
            "generator n={n}"
        );
    }
}

#[test]
fn unicyclic_counts_match_the_edge_addition_oracle() {
    for (n, expected) in (3..=8).zip([1, 2, 5, 13, 33, 89]) {
        let oracle = oracle_unicyclic(n);
        assert_eq!(oracle.len(), expected, "oracle n={n}");
        assert!(oracle.iter().all(Graph::is_unicyclic));
        assert_eq!(
            generate_unicyclic(n).unwrap().len(),
            expected,
            "generator n={n}"
        );
    }
    assert_eq!(
        generate_unicyclic(3).unwrap(),
        vec![Graph::cycle(3).unwrap()]
    );
}

#[test]
fn every_oracle_class_is_generated() {
    for n in 3..=7 {
        let generated = generate_unicyclic(n).unwrap();
        for g in oracle_unicyclic(n) {
            let hits = generated
                .iter()
                .filter(|h| is_isomorphic_bruteforce(h, &g).unwrap())
                .count();
            assert_eq!(hits, 1, "n={n}");
        }
    }
}

#[test]
fn unicyclic_code_agrees_with_bruteforce_isomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut graphs = Vec::new();
    for n in 3..=7 {
        for g in generate_unicyclic(n).unwrap() {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            graphs.push(g.permuted(&perm).unwrap());
            graphs.push(g);
        }
    }
    for a in &graphs {
        for b in &graphs {
            if a.order() != b.order() {
                continue;
            }
            let same_code = unicyclic_code(a).unwrap() == unicyclic_code(b).unwrap();
            assert_eq!(same_code, is_isomorphic_bruteforce(a, b).unwrap());
        }
    }
}

#[test]
fn tree_code_agrees_with_bruteforce_isomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut graphs = Vec::new();
    for n in 1..=8 {
        for g in generate_trees(n).unwrap() {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            graphs.push(g.permuted(&perm).unwrap());
            graphs.push(g);
        }
    }
    for a in &graphs {
        for b in &graphs {
            if a.order() == b.order() {
                let same_code = tree_code(a).unwrap() == tree_code(b).unwrap();
                assert_eq!(same_code, is_isomorphic_bruteforce(a, b).unwrap());
            }
        }
    }
}

#[test]
fn caterpillars_are_the_trees_whose_leaf_deletion_is_a_path() {
    for n in 1..=9 {
        let expected = generate_trees(n)
            .unwrap()
            .into_iter()
            .filter(|t| {
                let leaves = if t.order() <= 2 {
                    VertexSet::EMPTY
                } else {
                    t.leaves()
                };
                if leaves == t.vertices() {
                    return true;
                }
                let (spine, _) = t.delete_vertices(leaves).unwrap();
                spine.is_connected() && (0..spine.order()).all(|v| spine.degree(v) <= 2)
            })
            .count();
        assert_eq!(generate_caterpillars(n).unwrap().len(), expected, "n={n}");
    }
}

#[test]
fn u_rt_classes_match_pattern_dedupe() {
    for (r, t) in [(4, 2), (5, 2), (6, 3), (6, 2), (5, 5)] {
        let mut seen = IsoDedup::new();
        for mask in 0u32..1 << r {
            if mask.count_ones() as usize == t {
                let pattern: Vec<usize> = (0..r).filter(|&i| mask >> i & 1 == 1).collect();
                seen.insert(u_rt(r, t, &pattern).unwrap());
            }
        }
        assert_eq!(
            enumerate_u_rt_class(r, t).unwrap().len(),
            seen.len(),
            "r={r} t={t}"
        );
    }
    assert_eq!(enumerate_u_rt_class(4, 2).unwrap().len(), 2);
    let adjacent = u_rt(4, 2, &[0, 1]).unwrap();
    let opposite = u_rt(4, 2, &[0, 2]).unwrap();
    assert!(!is_isomorphic_bruteforce(&adjacent, &opposite).unwrap());
}

#[test]
fn enumerator_matches_definition_on_small_graphs() {
    for n in 1..=7 {
        let mut graphs = generate_trees(n).unwrap();
        if n >= 3 {
            graphs.extend(generate_unicyclic(n).unwrap());
        }
        for g in &graphs {
            assert_eq!(phi(g), phi_by_definition(g));
            assert_eq!(enumerate_mds(g), enumerate_mds_naive(g).unwrap());
        }
    }
}

#[test]
fn random_connected_graphs_agree_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for i in 0..300 {
        let n = 1 + i % 11;
        let g = common::random_connected(&mut rng, n, 0.3);
        assert!(g.is_connected());
        assert_eq!(enumerate_mds(&g), enumerate_mds_naive(&g).unwrap());
        if n <= 8 {
            assert_eq!(phi(&g), phi_by_definition(&g));
        }
    }
}

#[test]
fn long_cycles_match_naive_counts() {
    for n in [12, 15, 18] {
        let c = Graph::cycle(n).unwrap();
        assert_eq!(
            phi(&c),
            enumerate_mds_naive(&c).unwrap().len() as u64,
            "n={n}"
        );
    }
}
