//! The lower bounds and their equality characterizations: the unicyclic
//! theorem, the tree bound, and the path, caterpillar and cycle statements.

use std::collections::BTreeSet;
use std::time::Instant;

use super::{code_of, entry, sorted_entries, Verifier};
use crate::corpus::CorpusClass;
use crate::dissociation::phi;
use crate::error::{Error, Result};
use crate::families::{extremal_caterpillars, extremal_trees, extremal_unicyclic};
use crate::geniso::CanonicalCode;
use crate::graph::Graph;
use crate::verify::{Finding, VerificationReport};

fn require(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Precondition(what.to_string()))
    }
}

impl Verifier {
    /// Every unicyclic graph of order `n` has `φ ≥ ⌊n/2⌋+2`, with equality
    /// exactly on `extremal_unicyclic(n)`.
    pub fn check_main_theorem(&self, n: usize) -> Result<VerificationReport> {
        let started = Instant::now();
        require(n >= 3, "the unicyclic theorem needs n >= 3")?;
        let corpus = self.corpus(CorpusClass::Unicyclic, n)?;
        let expected = extremal_unicyclic(n)?;
        let report = self.extremal_report(
            "main",
            n,
            n,
            &corpus,
            |g| (g.order() / 2 + 2) as u64,
            &expected,
        )?;
        Ok(self.finish(report, started))
    }

    /// Every tree of order `n` has `φ ≥ ⌈n/2⌉+1`, with equality exactly on
    /// `extremal_trees(n)`.
    pub fn check_tree_theorem(&self, n: usize) -> Result<VerificationReport> {
        let started = Instant::now();
        require(n >= 3, "the tree bound needs n >= 3")?;
        let corpus = self.corpus(CorpusClass::Tree, n)?;
        let expected = extremal_trees(n)?;
        let report = self.extremal_report("trees", n, n, &corpus, tree_bound, &expected)?;
        Ok(self.finish(report, started))
    }

    /// `φ(Pₙ) ≥ ⌈n/2⌉+1` for `3 ≤ n ≤ n_max`, with equality exactly at
    /// `n ∈ {3,4,5}`.
    pub fn check_path_corollary(&self, n_max: usize) -> Result<VerificationReport> {
        let started = Instant::now();
        require(n_max >= 3, "the path statement needs n_max >= 3")?;
        let mut corpus = Vec::new();
        for n in 3..=n_max {
            corpus.extend(self.corpus(CorpusClass::Path, n)?);
        }
        let expected = [3, 4, 5]
            .into_iter()
            .filter(|&n| n <= n_max)
            .map(Graph::path)
            .collect::<Result<Vec<_>>>()?;
        let report = self.extremal_report("paths", 3, n_max, &corpus, tree_bound, &expected)?;
        Ok(self.finish(report, started))
    }

    /// Over all caterpillars of order `3..=n_max`, `φ = ⌈n/2⌉+1` holds exactly
    /// on the six extremal spiders (those of order at most `n_max`).
    pub fn check_caterpillar_corollary(&self, n_max: usize) -> Result<VerificationReport> {
        let started = Instant::now();
        require(n_max >= 3, "the caterpillar statement needs n_max >= 3")?;
        let mut corpus = Vec::new();
        for n in 3..=n_max {
            corpus.extend(self.corpus(CorpusClass::Caterpillar, n)?);
        }
        let expected: Vec<Graph> = extremal_caterpillars()
            .into_iter()
            .filter(|g| g.order() <= n_max)
            .collect();
        let report =
            self.extremal_report("caterpillars", 3, n_max, &corpus, tree_bound, &expected)?;
        Ok(self.finish(report, started))
    }

    /// `φ(Cₙ) ≥ φ(Pₙ₋₁)+1` with equality only at `n = 6`, and
    /// `φ(Cₙ) ≥ φ(Pₙ₋₁)+2` for `n > 6`.
    pub fn check_cycle_lemma(&self, n_min: usize, n_max: usize) -> Result<VerificationReport> {
        let started = Instant::now();
        require(n_min >= 4, "the cycle statement needs n >= 4")?;
        require(n_min <= n_max, "empty order range")?;
        let orders: Vec<usize> = (n_min..=n_max).collect();
        let rows = self.par_map(&orders, |&n| -> Result<_> {
            let cycle = Graph::cycle(n)?;
            let path = Graph::path(n - 1)?;
            Ok((cycle.clone(), phi(&cycle), phi(&path)))
        });
        let mut report = VerificationReport::new("cycle", n_min, n_max);
        for (&n, row) in orders.iter().zip(rows) {
            let (cycle, c, p) = row?;
            report.graphs += 1;
            if c < p + 1 {
                report
                    .violations
                    .push(Finding::new(&cycle, "cycle_difference", c, p + 1));
            }
            if c == p + 1 {
                report
                    .observations
                    .push(Finding::new(&cycle, "cycle_equality", c, p + 1));
                if n != 6 {
                    report.violations.push(Finding::new(
                        &cycle,
                        "cycle_equality_outside_prediction",
                        c,
                        p + 1,
                    ));
                }
            } else if n == 6 {
                report
                    .violations
                    .push(Finding::new(&cycle, "cycle_equality_missing", c, p + 1));
            }
            if n > 6 && c < p + 2 {
                report
                    .violations
                    .push(Finding::new(&cycle, "cycle_gap", c, p + 2));
            }
        }
        Ok(self.finish(report, started))
    }

    /// Shared body of the bound-with-equality-set suites: checks `φ(G) ≥
    /// bound(G)` on the corpus and compares the graphs attaining the bound
    /// with `expected` by canonical code.
    fn extremal_report(
        &self,
        suite: &str,
        n_min: usize,
        n_max: usize,
        corpus: &[Graph],
        bound: impl Fn(&Graph) -> u64 + Sync + Send,
        expected: &[Graph],
    ) -> Result<VerificationReport> {
        let rows = self.par_map(corpus, |g| -> Result<(u64, CanonicalCode)> {
            Ok((phi(g), code_of(g)?))
        });
        let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
        let mut report = VerificationReport::new(suite, n_min, n_max);
        report.graphs = corpus.len();
        if n_min == n_max {
            report.bound = corpus.first().map(&bound);
        }
        report.min_phi = rows.iter().map(|(p, _)| *p).min();

        let expected_codes: BTreeSet<CanonicalCode> =
            expected.iter().map(code_of).collect::<Result<_>>()?;
        let mut attaining = BTreeSet::new();
        let mut seen = BTreeSet::new();
        for (g, (p, code)) in corpus.iter().zip(&rows) {
            let b = bound(g);
            seen.insert(code.clone());
            if *p < b {
                report
                    .violations
                    .push(Finding::new(g, "lower_bound", *p, b));
            }
            if *p == b {
                attaining.insert(code.clone());
                if !expected_codes.contains(code) {
                    report
                        .violations
                        .push(Finding::new(g, "equality_outside_prediction", *p, b));
                }
            }
        }
        for g in expected {
            let code = code_of(g)?;
            let (p, b) = (phi(g), bound(g));
            if p != b {
                report
                    .violations
                    .push(Finding::new(g, "predicted_graph_misses_bound", p, b));
            } else if !seen.contains(&code) {
                report.violations.push(Finding::new(
                    g,
                    "predicted_graph_missing_from_corpus",
                    p,
                    b,
                ));
            }
        }

        report.minimizers = match report.min_phi {
            Some(m) => sorted_entries(
                corpus
                    .iter()
                    .zip(&rows)
                    .filter(|(_, (p, _))| *p == m)
                    .map(|(g, _)| g),
            )?,
            None => Vec::new(),
        };
        if n_min != n_max {
            // Over a range the interesting set is the equality set, not the
            // smallest value.
            report.minimizers = corpus
                .iter()
                .zip(&rows)
                .filter(|(_, (_, code))| attaining.contains(code))
                .map(|(g, _)| entry(g))
                .collect::<Result<Vec<_>>>()?;
            report.minimizers.sort();
        }
        report.expected_minimizers = sorted_entries(expected)?;
        Ok(report)
    }
}

fn tree_bound(g: &Graph) -> u64 {
    (g.order().div_ceil(2) + 1) as u64
}
