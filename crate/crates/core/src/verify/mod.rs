//! Exhaustive verification suites.
//!
//! Every suite produces a [`VerificationReport`]. A suite passes iff it has no
//! violations; all comparisons are exact integer comparisons. Work is split
//! per graph across a private thread pool and merged in input order, so the
//! report does not depend on the number of workers.

mod lemmas;
mod report;
mod theorem;

use std::time::Instant;

use rayon::prelude::*;

use crate::corpus::{CorpusClass, CorpusSource, Generated};
use crate::error::{Error, Result};
use crate::geniso::{tree_code, unicyclic_code, CanonicalCode, GeneratorCaps};
use crate::graph::Graph;

pub use report::{to_csv, to_json, Finding, GraphEntry, SummaryRow, VerificationReport};

/// Names accepted by [`Verifier::run_suite`].
pub const SUITES: [&str; 10] = [
    "main",
    "trees",
    "paths",
    "caterpillars",
    "cycle",
    "leaf-removal",
    "surgery",
    "pendant-path",
    "subcases",
    "identities",
];

/// Seed for the random disjoint-union pairs of the identity suite.
pub const DEFAULT_UNION_SEED: u64 = 0x6d64_7365_7473;

/// Runs suites on a fixed-size worker pool.
pub struct Verifier {
    pool: rayon::ThreadPool,
    source: Box<dyn CorpusSource>,
    timing: bool,
}

impl Verifier {
    /// A verifier with `jobs` workers that generates corpora on demand.
    pub fn new(jobs: usize) -> Result<Self> {
        Self::with_source(jobs, Box::new(Generated::default()))
    }

    pub fn with_source(jobs: usize, source: Box<dyn CorpusSource>) -> Result<Self> {
        if jobs == 0 {
            return Err(Error::Precondition("parallelism must be at least 1".into()));
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Precondition(e.to_string()))?;
        Ok(Verifier {
            pool,
            source,
            timing: false,
        })
    }

    /// Fill `runtime_ms` in reports. Off by default so that reports are
    /// byte-identical across runs.
    pub fn record_timing(mut self, on: bool) -> Self {
        self.timing = on;
        self
    }

    pub fn caps(&self) -> GeneratorCaps {
        self.source.caps()
    }

    pub fn corpus(&self, class: CorpusClass, n: usize) -> Result<Vec<Graph>> {
        self.source.corpus(class, n)
    }

    fn par_map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        self.pool.install(|| items.par_iter().map(f).collect())
    }

    fn finish(&self, mut report: VerificationReport, started: Instant) -> VerificationReport {
        if self.timing {
            report.runtime_ms = Some(started.elapsed().as_millis() as u64);
        }
        report
    }

    /// Runs one named suite over an inclusive order range, producing one or
    /// more reports. Orders below a suite's minimum are skipped.
    pub fn run_suite(
        &self,
        suite: &str,
        lo: usize,
        hi: usize,
        options: &SuiteOptions,
    ) -> Result<Vec<VerificationReport>> {
        let reports = match suite {
            "main" => (lo.max(3)..=hi)
                .map(|n| self.check_main_theorem(n))
                .collect::<Result<_>>()?,
            "trees" => (lo.max(3)..=hi)
                .map(|n| self.check_tree_theorem(n))
                .collect::<Result<_>>()?,
            "paths" => vec![self.check_path_corollary(hi)?],
            "caterpillars" => vec![self.check_caterpillar_corollary(hi)?],
            "cycle" => vec![self.check_cycle_lemma(lo.max(4), hi)?],
            "leaf-removal" => (lo.max(5)..=hi)
                .map(|n| self.check_leaf_removal_lemma(n))
                .collect::<Result<_>>()?,
            "surgery" => vec![self.check_surgery_lemma(hi, options.k_max)?],
            "pendant-path" => (lo.max(5)..=hi)
                .map(|n| self.check_pendant_path_lemma(n))
                .collect::<Result<_>>()?,
            "subcases" => (lo.max(9)..=hi)
                .map(|n| self.check_case3_subcases(n))
                .collect::<Result<_>>()?,
            "identities" => {
                let mut corpus = Vec::new();
                for n in lo.max(3)..=hi {
                    corpus.extend(self.corpus(CorpusClass::Unicyclic, n)?);
                }
                vec![self.check_identity_suite(&corpus, options.union_pairs, options.seed)?]
            }
            "all" => {
                let mut all = Vec::new();
                for name in SUITES {
                    all.extend(self.run_suite(name, lo, hi, options)?);
                }
                all
            }
            other => {
                return Err(Error::Parse {
                    what: "suite name",
                    input: other.to_string(),
                });
            }
        };
        Ok(reports)
    }
}

/// Knobs shared by [`Verifier::run_suite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Largest number of added leaves in the surgery suite.
    pub k_max: usize,
    /// Random disjoint-union pairs in the identity suite.
    pub union_pairs: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            k_max: 3,
            union_pairs: 200,
            seed: DEFAULT_UNION_SEED,
        }
    }
}

/// Canonical code of a tree or unicyclic graph.
pub fn code_of(g: &Graph) -> Result<CanonicalCode> {
    if g.is_tree() {
        tree_code(g)
    } else {
        unicyclic_code(g)
    }
}

pub(crate) fn entry(g: &Graph) -> Result<GraphEntry> {
    Ok(GraphEntry::new(g, &code_of(g)?))
}

pub(crate) fn sorted_entries<'a>(
    graphs: impl IntoIterator<Item = &'a Graph>,
) -> Result<Vec<GraphEntry>> {
    let mut out = graphs.into_iter().map(entry).collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}
