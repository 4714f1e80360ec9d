//! Graph corpora: generation by class, graph6 files with a `#` header, and an
//! on-disk cache keyed by class, order and generator version.
//!
//! File layout:
//!
//! ```text
//! # class=unicyclic order=5 count=5 generator=1
//! Dhc
//! ...
//! ```

use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geniso::{
    generate_caterpillars_capped, generate_trees_capped, generate_unicyclic_capped, GeneratorCaps,
};
use crate::graph::Graph;
use crate::graph6;

/// Bumped whenever generator output (labels or order) changes, which
/// invalidates cached corpora.
pub const GENERATOR_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusClass {
    Tree,
    Caterpillar,
    Unicyclic,
    Cycle,
    Path,
}

impl CorpusClass {
    pub const ALL: [CorpusClass; 5] = [
        CorpusClass::Tree,
        CorpusClass::Caterpillar,
        CorpusClass::Unicyclic,
        CorpusClass::Cycle,
        CorpusClass::Path,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CorpusClass::Tree => "tree",
            CorpusClass::Caterpillar => "caterpillar",
            CorpusClass::Unicyclic => "unicyclic",
            CorpusClass::Cycle => "cycle",
            CorpusClass::Path => "path",
        }
    }
}

impl fmt::Display for CorpusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorpusClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CorpusClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse {
                what: "graph class",
                input: s.to_string(),
            })
    }
}

/// Every graph of `class` and order `n`, one per isomorphism class.
pub fn generate(class: CorpusClass, n: usize, caps: GeneratorCaps) -> Result<Vec<Graph>> {
    match class {
        CorpusClass::Tree => generate_trees_capped(n, caps.trees),
        CorpusClass::Caterpillar => generate_caterpillars_capped(n, caps.trees),
        CorpusClass::Unicyclic => generate_unicyclic_capped(n, caps.unicyclic),
        CorpusClass::Cycle => Ok(vec![Graph::cycle(n)?]),
        CorpusClass::Path => Ok(vec![Graph::path(n)?]),
    }
}

/// Metadata line at the top of a corpus file.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusHeader {
    pub class: CorpusClass,
    pub order: usize,
    pub count: usize,
    pub generator: u32,
}

impl fmt::Display for CorpusHeader {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "# class={} order={} count={} generator={}",
            self.class, self.order, self.count, self.generator
        )
    }
}

impl FromStr for CorpusHeader {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "corpus header",
            input: line.to_string(),
        };
        let body = line.trim().strip_prefix('#').ok_or_else(bad)?;
        let (mut class, mut order, mut count, mut generator) = (None, None, None, None);
        for field in body.split_whitespace() {
            let (key, value) = field.split_once('=').ok_or_else(bad)?;
            match key {
                "class" => class = Some(value.parse()?),
                "order" => order = Some(value.parse().map_err(|_| bad())?),
                "count" => count = Some(value.parse().map_err(|_| bad())?),
                "generator" => generator = Some(value.parse().map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        Ok(CorpusHeader {
            class: class.ok_or_else(bad)?,
            order: order.ok_or_else(bad)?,
            count: count.ok_or_else(bad)?,
            generator: generator.ok_or_else(bad)?,
        })
    }
}

fn io_error(path: &Path, e: io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

/// Writes a header line and one graph6 record per line.
pub fn write_corpus<W: Write>(
    mut out: W,
    class: CorpusClass,
    n: usize,
    graphs: &[Graph],
) -> io::Result<()> {
    let header = CorpusHeader {
        class,
        order: n,
        count: graphs.len(),
        generator: GENERATOR_VERSION,
    };
    writeln!(out, "{header}")?;
    for g in graphs {
        out.write_all(&graph6::encode(g))?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

/// Reads a corpus, checking the header against the records.
pub fn read_corpus<R: BufRead>(input: R) -> Result<(CorpusHeader, Vec<Graph>)> {
    let mut lines = input.lines();
    let read = |l: io::Result<String>| {
        l.map_err(|e| Error::Io {
            path: "<corpus>".to_string(),
            message: e.to_string(),
        })
    };
    let first = lines.next().ok_or(Error::Parse {
        what: "corpus file",
        input: String::new(),
    })?;
    let header: CorpusHeader = read(first)?.parse()?;
    let mut graphs = Vec::with_capacity(header.count);
    for line in lines {
        let line = read(line)?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let g = graph6::decode_str(&line)?;
        if g.order() != header.order {
            return Err(Error::Parse {
                what: "corpus record",
                input: line,
            });
        }
        graphs.push(g);
    }
    if graphs.len() != header.count {
        return Err(Error::Parse {
            what: "corpus file",
            input: format!(
                "header promises {} graphs, found {}",
                header.count,
                graphs.len()
            ),
        });
    }
    Ok((header, graphs))
}

pub fn write_corpus_file(
    path: &Path,
    class: CorpusClass,
    n: usize,
    graphs: &[Graph],
) -> Result<()> {
    let file = File::create(path).map_err(|e| io_error(path, e))?;
    write_corpus(BufWriter::new(file), class, n, graphs).map_err(|e| io_error(path, e))
}

pub fn read_corpus_file(path: &Path) -> Result<(CorpusHeader, Vec<Graph>)> {
    let file = File::open(path).map_err(|e| io_error(path, e))?;
    read_corpus(BufReader::new(file))
}

/// Where verification suites get their graphs from.
pub trait CorpusSource: Send + Sync {
    fn corpus(&self, class: CorpusClass, n: usize) -> Result<Vec<Graph>>;
    fn caps(&self) -> GeneratorCaps;
}

/// Generates every corpus on demand.
#[derive(Clone, Copy, Debug, Default)]
pub struct Generated {
    pub caps: GeneratorCaps,
}

impl CorpusSource for Generated {
    fn corpus(&self, class: CorpusClass, n: usize) -> Result<Vec<Graph>> {
        generate(class, n, self.caps)
    }

    fn caps(&self) -> GeneratorCaps {
        self.caps
    }
}

/// Generated corpora cached as graph6 files under a directory.
///
/// A writer first creates `<entry>.lock` exclusively; if that fails another
/// process owns the entry and the corpus is generated in memory instead.
#[derive(Clone, Debug)]
pub struct CorpusCache {
    dir: PathBuf,
    caps: GeneratorCaps,
}

impl CorpusCache {
    pub fn new(dir: impl Into<PathBuf>, caps: GeneratorCaps) -> Self {
        CorpusCache {
            dir: dir.into(),
            caps,
        }
    }

    pub fn entry_path(&self, class: CorpusClass, n: usize) -> PathBuf {
        self.dir
            .join(format!("{class}-n{n}-g{GENERATOR_VERSION}.g6"))
    }

    fn store(&self, path: &Path, class: CorpusClass, n: usize, graphs: &[Graph]) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| io_error(&self.dir, e))?;
        let lock = path.with_extension("g6.lock");
        match OpenOptions::new().write(true).create_new(true).open(&lock) {
            Ok(_) => {}
            Err(e) if e.kind() == io::ErrorKind::AlreadyExists => return Ok(()),
            Err(e) => return Err(io_error(&lock, e)),
        }
        let tmp = path.with_extension("g6.tmp");
        let written = write_corpus_file(&tmp, class, n, graphs)
            .and_then(|_| fs::rename(&tmp, path).map_err(|e| io_error(path, e)));
        let _ = fs::remove_file(&lock);
        written
    }
}

fn check_caps(class: CorpusClass, n: usize, caps: GeneratorCaps) -> Result<()> {
    let (what, cap) = match class {
        CorpusClass::Tree | CorpusClass::Caterpillar => ("tree generation", caps.trees),
        CorpusClass::Unicyclic => ("unicyclic generation", caps.unicyclic),
        CorpusClass::Cycle | CorpusClass::Path => return Ok(()),
    };
    if n > cap {
        return Err(Error::CapExceeded {
            what,
            order: n,
            cap,
        });
    }
    Ok(())
}

impl CorpusSource for CorpusCache {
    fn corpus(&self, class: CorpusClass, n: usize) -> Result<Vec<Graph>> {
        check_caps(class, n, self.caps)?;
        let path = self.entry_path(class, n);
        if path.exists() {
            let (header, graphs) = read_corpus_file(&path)?;
            if header.class == class && header.order == n && header.generator == GENERATOR_VERSION {
                return Ok(graphs);
            }
        }
        let graphs = generate(class, n, self.caps)?;
        self.store(&path, class, n, &graphs)?;
        Ok(graphs)
    }

    fn caps(&self) -> GeneratorCaps {
        self.caps
    }
}
