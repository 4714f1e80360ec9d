//! Named graph families: spiders `T(p,q)`, triangle-spiders `U(p,q)`, cycles
//! with pendants `U_{r,t}`, and the predicted extremal graphs.
//!
//! `T(p,q)` is the spider with `p` legs at centre 0, of which the first `q`
//! have length two and the remaining `p - q` have length one. Leg vertices
//! are labelled in leg order, inner vertex before outer. `U(p,q)` appends two
//! adjacent vertices joined to the centre.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::geniso::{tree_code, unicyclic_code, CanonicalCode};
use crate::graph::{Graph, VertexSet, MAX_ORDER};

fn check_pq(p: usize, q: usize) -> Result<()> {
    if p < q {
        return Err(Error::InvalidFamily(format!("T({p},{q}) needs p >= q")));
    }
    Ok(())
}

/// The spider `T(p,q)` of order `p + q + 1`.
pub fn spider_t(p: usize, q: usize) -> Result<Graph> {
    check_pq(p, q)?;
    let n = p + q + 1;
    if n > MAX_ORDER {
        return Err(Error::OrderOutOfRange(n));
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    for _ in 0..q {
        edges.push((0, next));
        edges.push((next, next + 1));
        next += 2;
    }
    for _ in q..p {
        edges.push((0, next));
        next += 1;
    }
    Graph::from_edges(n, &edges)
}

/// `U(p,q)`: a triangle sharing the centre of `T(p,q)`. The two extra
/// triangle vertices are the last two labels.
pub fn u_pq(p: usize, q: usize) -> Result<Graph> {
    let t = spider_t(p, q)?;
    let a = t.order();
    t.extended(2, &[(0, a), (0, a + 1), (a, a + 1)])
}

/// `C_r` with one pendant leaf on each position of `pattern`. Leaves are
/// labelled `r..r+t` in ascending position order.
pub fn u_rt(r: usize, t: usize, pattern: &[usize]) -> Result<Graph> {
    if r < 3 {
        return Err(Error::InvalidFamily(format!("U_{{{r},{t}}} needs r >= 3")));
    }
    if t > r || pattern.len() != t {
        return Err(Error::InvalidFamily(format!(
            "U_{{{r},{t}}} needs {t} <= {r} pendant positions, got {pattern:?}"
        )));
    }
    let positions: VertexSet = pattern.iter().copied().collect();
    if positions.len() != t || pattern.iter().any(|&i| i >= r) {
        return Err(Error::InvalidFamily(format!(
            "pendant positions {pattern:?} must be distinct and below {r}"
        )));
    }
    let c = Graph::cycle(r)?;
    let edges: Vec<_> = positions
        .iter()
        .enumerate()
        .map(|(k, i)| (i, r + k))
        .collect();
    c.extended(t, &edges)
}

/// `U_{r,t}` with pendants on positions `0..t`.
pub fn u_rt_default(r: usize, t: usize) -> Result<Graph> {
    u_rt(r, t, &(0..t).collect::<Vec<_>>())
}

/// One member of `𝒰_{r,t}` per isomorphism class, sorted by code.
pub fn enumerate_u_rt_class(r: usize, t: usize) -> Result<Vec<Graph>> {
    if r < 3 || t > r {
        return Err(Error::InvalidFamily(format!(
            "class U_{{{r},{t}}} is empty"
        )));
    }
    if r + t > MAX_ORDER {
        return Err(Error::OrderOutOfRange(r + t));
    }
    let mut seen: BTreeMap<CanonicalCode, Graph> = BTreeMap::new();
    for bits in 0u64..1 << r {
        if bits.count_ones() as usize != t {
            continue;
        }
        let pattern = VertexSet::from_bits(bits).to_vec();
        let g = u_rt(r, t, &pattern)?;
        seen.entry(unicyclic_code(&g)?).or_insert(g);
    }
    Ok(seen.into_values().collect())
}

/// Unicyclic graphs of order `n` predicted to attain `⌊n/2⌋ + 2`.
pub fn extremal_unicyclic(n: usize) -> Result<Vec<Graph>> {
    if n < 3 {
        return Err(Error::InvalidFamily(format!(
            "extremal unicyclic graphs need n >= 3, got {n}"
        )));
    }
    let mut out = if n % 2 == 1 {
        vec![u_pq((n - 3) / 2, (n - 3) / 2)?]
    } else {
        vec![u_pq((n - 2) / 2, (n - 4) / 2)?]
    };
    match n {
        6 => {
            out.push(u_rt_default(6, 0)?);
            out.push(u_rt_default(5, 1)?);
        }
        8 => out.push(u_rt_default(4, 4)?),
        _ => {}
    }
    Ok(out)
}

/// Trees of order `n` predicted to attain `⌈n/2⌉ + 1`, without isomorphic
/// repeats.
pub fn extremal_trees(n: usize) -> Result<Vec<Graph>> {
    if n < 3 {
        return Err(Error::InvalidFamily(format!(
            "extremal trees need n >= 3, got {n}"
        )));
    }
    let candidates = if n.is_multiple_of(2) {
        vec![spider_t(n / 2, (n - 2) / 2)?]
    } else {
        vec![
            spider_t((n - 1) / 2, (n - 1) / 2)?,
            spider_t(n.div_ceil(2), (n - 3) / 2)?,
        ]
    };
    // at n = 3 both formulas give P3
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for g in candidates {
        let code = tree_code(&g)?;
        if !seen.contains(&code) {
            seen.push(code);
            out.push(g);
        }
    }
    Ok(out)
}

/// The six caterpillars with `φ = ⌈n/2⌉ + 1`.
pub fn extremal_caterpillars() -> Vec<Graph> {
    [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (4, 2)]
        .into_iter()
        .map(|(p, q)| spider_t(p, q).expect("valid parameters"))
        .collect()
}

/// A parsed family name: `T(p,q)`, `U(p,q)`, `Urt(r,t)` or `Urt(r,t,[i,..])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    SpiderTree {
        p: usize,
        q: usize,
    },
    TriangleSpider {
        p: usize,
        q: usize,
    },
    CyclePendant {
        r: usize,
        t: usize,
        pattern: Vec<usize>,
    },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            FamilySpec::SpiderTree { p, q } => spider_t(*p, *q),
            FamilySpec::TriangleSpider { p, q } => u_pq(*p, *q),
            FamilySpec::CyclePendant { r, t, pattern } => u_rt(*r, *t, pattern),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::SpiderTree { p, q } => write!(f, "T({p},{q})"),
            FamilySpec::TriangleSpider { p, q } => write!(f, "U({p},{q})"),
            FamilySpec::CyclePendant { r, t, pattern } => {
                let list: Vec<String> = pattern.iter().map(usize::to_string).collect();
                write!(f, "Urt({r},{t},[{}])", list.join(","))
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "family spec",
            input: input.to_string(),
        };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let open = compact.find('(').ok_or_else(bad)?;
        let (name, rest) = compact.split_at(open);
        let inner = rest
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (head, pattern) = match inner.split_once(",[") {
            Some((head, list)) => {
                let list = list.strip_suffix(']').ok_or_else(bad)?;
                let items = if list.is_empty() {
                    Vec::new()
                } else {
                    list.split(',')
                        .map(|x| x.parse().map_err(|_| bad()))
                        .collect::<Result<_>>()?
                };
                (head, Some(items))
            }
            None => (inner, None),
        };
        let nums: Vec<usize> = head
            .split(',')
            .map(|x| x.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let [a, b] = nums[..] else {
            return Err(bad());
        };
        let spec = match (name, pattern) {
            ("T", None) => FamilySpec::SpiderTree { p: a, q: b },
            ("U", None) => FamilySpec::TriangleSpider { p: a, q: b },
            ("Urt", None) => FamilySpec::CyclePendant {
                r: a,
                t: b,
                pattern: (0..b).collect(),
            },
            ("Urt", Some(pattern)) => FamilySpec::CyclePendant {
                r: a,
                t: b,
                pattern,
            },
            _ => return Err(bad()),
        };
        Ok(spec)
    }
}
