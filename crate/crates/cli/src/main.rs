use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use mdsets::corpus::{self, CorpusCache, CorpusClass, CorpusSource, Generated};
use mdsets::dissociation::{enumerate_mds, phi, phi_refined, VertexConstraint};
use mdsets::families::FamilySpec;
use mdsets::geniso::{GeneratorCaps, DEFAULT_TREE_CAP, DEFAULT_UNICYCLIC_CAP};
use mdsets::graph6;
use mdsets::verify::{
    to_csv, to_json, SuiteOptions, VerificationReport, Verifier, DEFAULT_UNION_SEED, SUITES,
};
use mdsets::Graph;

/// Maximal dissociation sets: counting, enumeration, generation and
/// verification of the unicyclic lower bound.
#[derive(Parser)]
#[command(name = "mdsets", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count maximal dissociation sets, optionally under vertex constraints.
    Phi {
        #[command(flatten)]
        input: GraphInput,
        /// `v=excluded`, `v=in`, `v=in0` or `v=in1`; may be repeated.
        #[arg(long = "constraint", value_name = "V=STATUS")]
        constraints: Vec<VertexConstraint>,
    },
    /// List every maximal dissociation set, one per line.
    Mds {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Write every graph of a class and order as a graph6 corpus file.
    Gen {
        #[arg(long, value_parser = parse_class)]
        class: CorpusClass,
        #[arg(long, short = 'n')]
        order: usize,
        #[arg(long, short = 'o')]
        output: PathBuf,
        #[command(flatten)]
        caps: Caps,
    },
    /// Run verification suites and report violations.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Graph in graph6 format.
    #[arg(long)]
    graph6: Option<String>,
    /// `T(p,q)`, `U(p,q)`, `Urt(r,t)` or `Urt(r,t,[i,...])`.
    #[arg(long)]
    family: Option<FamilySpec>,
}

impl GraphInput {
    fn graph(&self) -> Result<Graph> {
        match (&self.graph6, &self.family) {
            (Some(text), _) => Ok(graph6::decode_str(text)?),
            (_, Some(spec)) => Ok(spec.build()?),
            _ => bail!("either --graph6 or --family is required"),
        }
    }
}

#[derive(Args, Clone, Copy)]
struct Caps {
    /// Largest tree (and caterpillar) order the generators accept.
    #[arg(long, default_value_t = DEFAULT_TREE_CAP)]
    tree_cap: usize,
    /// Largest unicyclic order the generators accept.
    #[arg(long, default_value_t = DEFAULT_UNICYCLIC_CAP)]
    unicyclic_cap: usize,
}

impl From<Caps> for GeneratorCaps {
    fn from(c: Caps) -> Self {
        GeneratorCaps {
            trees: c.tree_cap,
            unicyclic: c.unicyclic_cap,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of the suite names, or `all`.
    #[arg(long, value_parser = parse_suite)]
    suite: String,
    /// A single order `n` or an inclusive range `a..b`.
    #[arg(long, value_parser = parse_orders)]
    orders: (usize, usize),
    /// Worker threads.
    #[arg(long, env = "MDSETS_JOBS", default_value_t = default_jobs())]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Report file; standard output when absent.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
    /// Directory of cached graph6 corpora.
    #[arg(long, env = "MDSETS_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[command(flatten)]
    caps: Caps,
    /// Largest number of leaves added in the surgery suite.
    #[arg(long, default_value_t = 3)]
    k_max: usize,
    /// Random disjoint-union pairs in the identity suite.
    #[arg(long, default_value_t = 200)]
    pairs: usize,
    #[arg(long, default_value_t = DEFAULT_UNION_SEED)]
    seed: u64,
    /// Record wall-clock time per report (makes reports nondeterministic).
    #[arg(long)]
    timing: bool,
}

fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn parse_class(s: &str) -> Result<CorpusClass, String> {
    s.parse().map_err(|e: mdsets::Error| e.to_string())
}

fn parse_suite(s: &str) -> Result<String, String> {
    if s == "all" || SUITES.contains(&s) {
        Ok(s.to_string())
    } else {
        Err(format!(
            "unknown suite `{s}`; expected one of {} or all",
            SUITES.join(", ")
        ))
    }
}

fn parse_orders(s: &str) -> Result<(usize, usize), String> {
    let number = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad order `{t}`"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (number(a)?, number(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = number(s)?;
            (n, n)
        }
    };
    if lo == 0 || lo > hi {
        return Err(format!("empty or invalid order range `{s}`"));
    }
    Ok((lo, hi))
}

fn cmd_phi(input: &GraphInput, constraints: &[VertexConstraint]) -> Result<()> {
    let g = input.graph()?;
    let mut out = io::stdout().lock();
    writeln!(out, "phi {}", phi(&g))?;
    if !constraints.is_empty() {
        let label: Vec<String> = constraints
            .iter()
            .map(|c| format!("{}={}", c.vertex, c.status))
            .collect();
        writeln!(
            out,
            "phi[{}] {}",
            label.join(","),
            phi_refined(&g, constraints)?
        )?;
    }
    Ok(())
}

fn cmd_mds(input: &GraphInput) -> Result<()> {
    let g = input.graph()?;
    let sets = enumerate_mds(&g);
    let mut out = io::BufWriter::new(io::stdout().lock());
    for s in &sets {
        writeln!(out, "{s}")?;
    }
    writeln!(out, "count {}", sets.len())?;
    Ok(())
}

fn cmd_gen(class: CorpusClass, n: usize, output: &Path, caps: Caps) -> Result<()> {
    let graphs = corpus::generate(class, n, caps.into())?;
    corpus::write_corpus_file(output, class, n, &graphs)?;
    println!("{}", graphs.len());
    Ok(())
}

fn render_text(reports: &[VerificationReport]) -> String {
    let mut text = String::new();
    let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
    for r in reports {
        let row = r.summary();
        text.push_str(&format!(
            "{} n={} graphs={} min_phi={} bound={} minimizers={} observations={} violations={} {}\n",
            row.suite,
            row.n,
            row.graphs,
            opt(row.min_phi),
            opt(row.bound),
            r.minimizers.len(),
            r.observations.len(),
            r.violations.len(),
            if row.pass { "PASS" } else { "FAIL" },
        ));
        for v in &r.violations {
            text.push_str(&format!(
                "  violation {} {} lhs={} rhs={}\n",
                v.rule, v.graph6, v.lhs, v.rhs
            ));
        }
    }
    text
}

/// Returns whether every report passed.
fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let caps: GeneratorCaps = args.caps.into();
    let source: Box<dyn CorpusSource> = match &args.cache_dir {
        Some(dir) => Box::new(CorpusCache::new(dir, caps)),
        None => Box::new(Generated { caps }),
    };
    let verifier = Verifier::with_source(args.jobs, source)?.record_timing(args.timing);
    let options = SuiteOptions {
        k_max: args.k_max,
        union_pairs: args.pairs,
        seed: args.seed,
    };
    let (lo, hi) = args.orders;
    let reports = verifier.run_suite(&args.suite, lo, hi, &options)?;
    let rendered = match args.format {
        Format::Json => to_json(&reports)? + "\n",
        Format::Csv => to_csv(&reports)?,
        Format::Text => render_text(&reports),
    };
    match &args.output {
        Some(path) => {
            fs::write(path, rendered).with_context(|| format!("writing {}", path.display()))?
        }
        None => io::stdout().lock().write_all(rendered.as_bytes())?,
    }
    Ok(reports.iter().all(VerificationReport::passed))
}

fn run(cli: Cli) -> Result<bool> {
    match &cli.command {
        Command::Phi { input, constraints } => cmd_phi(input, constraints).map(|_| true),
        Command::Mds { input } => cmd_mds(input).map(|_| true),
        Command::Gen {
            class,
            order,
            output,
            caps,
        } => cmd_gen(*class, *order, output, *caps).map(|_| true),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
