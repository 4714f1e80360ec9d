use std::collections::BTreeSet;

use mdsets::corpus::{read_corpus_file, CorpusCache, CorpusClass, CorpusSource};
use mdsets::dissociation::{phi, phi_after_deletion, phi_refined, VertexConstraint};
use mdsets::families::{enumerate_u_rt_class, extremal_unicyclic, spider_t, u_pq};
use mdsets::geniso::GeneratorCaps;
use mdsets::verify::{code_of, to_csv, to_json, SuiteOptions, VerificationReport, Verifier};
use mdsets::{Graph, VertexSet};

fn verifier() -> Verifier {
    Verifier::new(4).unwrap()
}

fn minimizer_codes(r: &VerificationReport) -> BTreeSet<String> {
    r.minimizers.iter().map(|e| e.code.clone()).collect()
}

fn codes(graphs: &[Graph]) -> BTreeSet<String> {
    graphs
        .iter()
        .map(|g| code_of(g).unwrap().to_string())
        .collect()
}

#[test]
fn main_theorem_minimizers() {
    let v = verifier();
    let r = v.check_main_theorem(7).unwrap();
    assert!(r.passed());
    assert_eq!((r.graphs, r.min_phi, r.bound), (33, Some(5), Some(5)));
    assert_eq!(minimizer_codes(&r), codes(&[u_pq(2, 2).unwrap()]));

    let r = v.check_main_theorem(6).unwrap();
    assert_eq!((r.min_phi, r.minimizers.len()), (Some(5), 3));
    assert_eq!(minimizer_codes(&r), codes(&extremal_unicyclic(6).unwrap()));

    let r = v.check_main_theorem(8).unwrap();
    assert_eq!((r.min_phi, r.minimizers.len()), (Some(6), 2));
    assert_eq!(
        minimizer_codes(&r),
        r.expected_minimizers
            .iter()
            .map(|e| e.code.clone())
            .collect()
    );
    assert!(r.minimizers.windows(2).all(|w| w[0].code < w[1].code));
    assert!(v.check_main_theorem(2).is_err());
}

#[test]
fn tree_theorem_minimizers() {
    let v = verifier();
    let r = v.check_tree_theorem(4).unwrap();
    assert_eq!(r.min_phi, Some(3));
    assert_eq!(minimizer_codes(&r), codes(&[Graph::path(4).unwrap()]));
    let r = v.check_tree_theorem(5).unwrap();
    assert_eq!((r.min_phi, r.minimizers.len()), (Some(4), 2));
    let r = v.check_tree_theorem(3).unwrap();
    assert_eq!((r.min_phi, r.minimizers.len()), (Some(3), 1));
    assert!(r.passed());
}

#[test]
fn path_and_caterpillar_corollaries() {
    let v = verifier();
    assert!(phi(&Graph::path(6).unwrap()) > 4);
    let r = v.check_path_corollary(20).unwrap();
    assert!(r.passed());
    let mut orders: Vec<usize> = r
        .minimizers
        .iter()
        .map(|e| e.graph6.as_bytes()[0] as usize - 63)
        .collect();
    orders.sort();
    assert_eq!(orders, vec![3, 4, 5]);

    let r = v.check_caterpillar_corollary(9).unwrap();
    assert!(r.passed());
    assert_eq!(r.minimizers.len(), 6);
    for g in [spider_t(4, 2).unwrap(), spider_t(1, 1).unwrap()] {
        assert!(minimizer_codes(&r).contains(&code_of(&g).unwrap().to_string()));
    }
}

#[test]
fn cycle_lemma_gaps() {
    let v = verifier();
    let r = v.check_cycle_lemma(4, 20).unwrap();
    assert!(r.passed());
    assert_eq!(r.observations.len(), 1);
    let gap = |n: usize| phi(&Graph::cycle(n).unwrap()) - phi(&Graph::path(n - 1).unwrap());
    assert_eq!(gap(6), 1);
    assert!(gap(4) > 1);
    assert!(gap(10) >= 2);
    assert!(v.check_cycle_lemma(3, 8).is_err());
}

#[test]
fn leaf_removal_examples() {
    for g in enumerate_u_rt_class(3, 2).unwrap() {
        let total = phi(&g);
        for y in g.leaves() {
            let closed = g.closed_neighborhood(y).unwrap();
            assert!(total >= phi_after_deletion(&g, closed).unwrap() + 2);
        }
    }
    let g = enumerate_u_rt_class(5, 1).unwrap().remove(0);
    let y = g.leaves().first().unwrap();
    let (rest, _) = g
        .delete_vertices(g.closed_neighborhood(y).unwrap())
        .unwrap();
    assert!(rest.is_caterpillar());
    assert_eq!(rest.order(), 4);

    let v = verifier();
    for n in 5..=10 {
        let r = v.check_leaf_removal_lemma(n).unwrap();
        assert!(r.passed(), "n={n}");
        assert_eq!(r.violations_of("excluded_support_identity").count(), 0);
    }
}

#[test]
fn surgery_on_a_triangle() {
    let u = Graph::cycle(3).unwrap();
    let g1 = u.extended(2, &[(0, 3), (0, 4)]).unwrap();
    let g2 = g1.without_edge(0, 4).unwrap().with_edge(3, 4).unwrap();
    assert!(phi(&g1) >= phi(&g2));

    let v = verifier();
    let r = v.check_surgery_lemma(8, 3).unwrap();
    assert!(r.passed());
    assert_eq!(r.violations_of("claim1_excluded").count(), 0);
    let equalities: Vec<_> = r.observations_of("equality_instance").collect();
    assert!(!equalities.is_empty());
    assert!(equalities.iter().all(|f| f.lhs == f.rhs));
    assert!(v.check_surgery_lemma(8, 1).is_err());
}

#[test]
fn pendant_path_on_the_extremal_graph() {
    // U(2,2): the leg 0-1-2 is a pendant path with w = 0.
    let g = u_pq(2, 2).unwrap();
    assert_eq!(g.degree(1), 2);
    let removed = VertexSet::from_iter([1, 2]);
    assert!(phi(&g) > phi_after_deletion(&g, removed).unwrap());
    let (h, _) = g.delete_vertices(removed).unwrap();
    assert_eq!(
        phi_refined(&g, &[VertexConstraint::degree0(0)]).unwrap(),
        phi_refined(&h, &[VertexConstraint::degree0(0)]).unwrap()
    );

    let v = verifier();
    for n in 5..=10 {
        let r = v.check_pendant_path_lemma(n).unwrap();
        assert!(r.passed(), "n={n}");
    }
}

#[test]
fn case3_closed_forms() {
    let v = verifier();
    let r = v.check_case3_subcases(9).unwrap();
    assert!(r.passed());
    let orbit = |r: &VerificationReport, role: &str| -> Vec<u64> {
        r.observations_of("orbit")
            .filter(|f| f.rule.contains(role))
            .map(|f| f.lhs)
            .collect()
    };
    assert_eq!(orbit(&r, "role=leaf"), vec![13]);
    assert_eq!(orbit(&r, "role=center"), vec![6]);
    assert_eq!(r.min_phi, Some(6));

    let r = v.check_case3_subcases(10).unwrap();
    assert!(r.passed());
    assert_eq!(orbit(&r, "role=triangle"), vec![8]);
    let leaves: BTreeSet<u64> = orbit(&r, "role=leaf").into_iter().collect();
    assert_eq!(leaves, BTreeSet::from([8, 16]));
    assert!(v.check_case3_subcases(8).is_err());
}

#[test]
fn identity_suite_over_small_unicyclic_graphs() {
    let v = verifier();
    let mut corpus = Vec::new();
    for n in 3..=8 {
        corpus.extend(v.corpus(CorpusClass::Unicyclic, n).unwrap());
    }
    let r = v.check_identity_suite(&corpus, 50, 1).unwrap();
    assert!(r.passed());
    assert_eq!(r.graphs, corpus.len() + 50);
    assert_eq!((r.n_min, r.n_max), (3, 8));
}

#[test]
fn reports_do_not_depend_on_worker_count() {
    let options = SuiteOptions {
        k_max: 3,
        union_pairs: 40,
        seed: 7,
    };
    let one = Verifier::new(1)
        .unwrap()
        .run_suite("all", 3, 9, &options)
        .unwrap();
    let many = Verifier::new(6)
        .unwrap()
        .run_suite("all", 3, 9, &options)
        .unwrap();
    assert_eq!(to_json(&one).unwrap(), to_json(&many).unwrap());
    assert_eq!(to_csv(&one).unwrap(), to_csv(&many).unwrap());
    assert!(one.iter().all(|r| r.runtime_ms.is_none()));
    assert!(Verifier::new(0).is_err());
}

#[test]
fn timing_is_opt_in() {
    let v = Verifier::new(2).unwrap().record_timing(true);
    let r = v.check_main_theorem(5).unwrap();
    assert!(r.runtime_ms.is_some());
}

#[test]
fn unknown_suites_are_rejected() {
    assert!(verifier()
        .run_suite("bogus", 3, 5, &SuiteOptions::default())
        .is_err());
}

#[test]
fn cache_round_trip_and_caps() {
    let dir = tempfile::tempdir().unwrap();
    let cache = CorpusCache::new(
        dir.path(),
        GeneratorCaps {
            trees: 9,
            unicyclic: 7,
        },
    );
    let fresh = cache.corpus(CorpusClass::Unicyclic, 6).unwrap();
    let path = cache.entry_path(CorpusClass::Unicyclic, 6);
    assert!(path.exists());
    let (header, stored) = read_corpus_file(&path).unwrap();
    assert_eq!((header.count, header.order), (13, 6));
    assert_eq!(stored, fresh);
    assert_eq!(cache.corpus(CorpusClass::Unicyclic, 6).unwrap(), fresh);
    assert!(cache.corpus(CorpusClass::Unicyclic, 8).is_err());
    assert!(cache.corpus(CorpusClass::Tree, 10).is_err());

    // An entry locked by another writer is left alone.
    let lock = cache
        .entry_path(CorpusClass::Tree, 5)
        .with_extension("g6.lock");
    std::fs::write(&lock, "").unwrap();
    assert_eq!(cache.corpus(CorpusClass::Tree, 5).unwrap().len(), 3);
    assert!(!cache.entry_path(CorpusClass::Tree, 5).exists());
}
