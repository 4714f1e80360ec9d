use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geniso::CanonicalCode;
use crate::graph::Graph;
use crate::graph6;

/// A graph as it appears in a report.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphEntry {
    pub code: String,
    pub graph6: String,
}

impl GraphEntry {
    pub fn new(g: &Graph, code: &CanonicalCode) -> Self {
        GraphEntry {
            code: code.to_string(),
            graph6: graph6::encode_string(g),
        }
    }
}

/// One checked relation `lhs (rule) rhs` on one graph. Used both for
/// violations and for recorded observations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub graph6: String,
    pub rule: String,
    pub lhs: u64,
    pub rhs: u64,
}

impl Finding {
    pub fn new(g: &Graph, rule: impl Into<String>, lhs: u64, rhs: u64) -> Self {
        Finding {
            graph6: graph6::encode_string(g),
            rule: rule.into(),
            lhs,
            rhs,
        }
    }
}

/// Outcome of one suite over one order or order range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub n_min: usize,
    pub n_max: usize,
    /// Graphs (or instances) examined.
    pub graphs: usize,
    pub bound: Option<u64>,
    pub min_phi: Option<u64>,
    /// Sorted by canonical code.
    pub minimizers: Vec<GraphEntry>,
    pub expected_minimizers: Vec<GraphEntry>,
    pub violations: Vec<Finding>,
    /// Recorded, not asserted.
    pub observations: Vec<Finding>,
    pub runtime_ms: Option<u64>,
    pub engine_version: String,
}

impl VerificationReport {
    pub fn new(suite: &str, n_min: usize, n_max: usize) -> Self {
        VerificationReport {
            suite: suite.to_string(),
            n_min,
            n_max,
            graphs: 0,
            bound: None,
            min_phi: None,
            minimizers: Vec::new(),
            expected_minimizers: Vec::new(),
            violations: Vec::new(),
            observations: Vec::new(),
            runtime_ms: None,
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Violations whose rule starts with `prefix`.
    pub fn violations_of<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Finding> + 'a {
        self.violations
            .iter()
            .filter(move |f| f.rule.starts_with(prefix))
    }

    pub fn observations_of<'a>(
        &'a self,
        prefix: &'a str,
    ) -> impl Iterator<Item = &'a Finding> + 'a {
        self.observations
            .iter()
            .filter(move |f| f.rule.starts_with(prefix))
    }

    pub fn summary(&self) -> SummaryRow {
        SummaryRow {
            suite: self.suite.clone(),
            n: if self.n_min == self.n_max {
                self.n_min.to_string()
            } else {
                format!("{}..{}", self.n_min, self.n_max)
            },
            graphs: self.graphs,
            min_phi: self.min_phi,
            bound: self.bound,
            pass: self.passed(),
        }
    }
}

/// One CSV line per report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub suite: String,
    pub n: String,
    pub graphs: usize,
    pub min_phi: Option<u64>,
    pub bound: Option<u64>,
    pub pass: bool,
}

pub fn to_json(reports: &[VerificationReport]) -> Result<String> {
    serde_json::to_string_pretty(reports).map_err(|e| Error::Parse {
        what: "report",
        input: e.to_string(),
    })
}

/// CSV summary with header `suite,n,graphs,min_phi,bound,pass`.
pub fn to_csv(reports: &[VerificationReport]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in reports {
        writer.serialize(r.summary()).map_err(|e| Error::Parse {
            what: "report",
            input: e.to_string(),
        })?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Parse {
        what: "report",
        input: e.to_string(),
    })?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
