//! Command-line front end. Exit codes: 0 for a true verdict or success,
//! 1 for a false verdict or failed certification, 2 for usage, parse or
//! infeasibility errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bounds::{self, Density, KnownFamily};
use crate::constructions::{self as cons, FamilySpec};
use crate::graph::Graph;
use crate::graph6;
use crate::predicates::{self, PredicateKind, PredicateReport};
use crate::search::{self, DensityProfile, ResultCache, SearchOptions, SearchResult, CACHE_ENV};
use crate::verify::{self, Suite, SuiteReport};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "domsat", version, about = "Domination-saturation of small graphs")]
pub struct Cli {
    /// Emit JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    /// Search result cache (JSON lines). Defaults to $DOMSAT_CACHE when set.
    #[arg(long, global = true, value_name = "PATH")]
    pub cache: Option<PathBuf>,
    /// Worker threads for search and verification.
    #[arg(long, global = true, value_name = "K")]
    pub threads: Option<usize>,
    /// Reserved; every run is deterministic.
    #[arg(long, global = true)]
    pub seedless: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one predicate for a graph and pattern.
    Check {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        graph: String,
        #[arg(long, value_parser = parse_predicate)]
        predicate: PredicateKind,
    },
    /// Build a family member and optionally certify it.
    Construct(ConstructArgs),
    /// Density bounds for a pattern, or the known density of a family.
    Bounds {
        #[arg(long, required_unless_present = "family")]
        pattern: Option<String>,
        /// clique, path, cycle, star, star_plus or kt_path_sat
        #[arg(long, conflicts_with = "pattern", requires = "r")]
        family: Option<String>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Exact minimum edge count by exhaustive search.
    Compute {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_predicate, default_value = "dom-sat")]
        predicate: PredicateKind,
        /// Disable pruning (slower; same answer).
        #[arg(long)]
        no_prune: bool,
        #[arg(long, default_value_t = search::MAX_SEARCH_ORDER)]
        max_order: usize,
    },
    /// Minimum edge counts for every n up to a bound.
    Profile {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_parser = parse_predicate, default_value = "dom-sat")]
        predicate: PredicateKind,
    },
    /// Run a property battery.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
    },
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    /// near-matching, dom-turan, turan, path, cycle-gadget, star, star-plus,
    /// bridge or neighborhood
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Cycle gadget: loop length (default r-3).
    #[arg(long)]
    pub loop_len: Option<usize>,
    /// Cycle gadget: clique size used with --loop-len (default r).
    #[arg(long)]
    pub clique: Option<usize>,
    /// Cycle gadget: loop count used with --loop-len (default from --n, else 2).
    #[arg(long)]
    pub loops: Option<usize>,
    /// Pattern for the bridge and neighborhood families.
    #[arg(long)]
    pub pattern: Option<String>,
    /// Put a divisibility remainder into one larger final block.
    #[arg(long)]
    pub pad: bool,
    /// Run the family's claimed predicate; exit 1 if it fails.
    #[arg(long)]
    pub certify: bool,
}

fn parse_predicate(s: &str) -> Result<PredicateKind, String> {
    s.parse().map_err(|e: predicates::PredicateError| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: verify::UnknownSuite| e.to_string())
}

/// A failure that maps to exit code 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn decode(what: &str, text: &str) -> Result<Graph, Usage> {
    graph6::decode(text).map_err(|e| Usage(format!("--{what} {text:?}: {e}")))
}

fn need(name: &str, v: Option<usize>) -> Result<usize, Usage> {
    v.ok_or_else(|| Usage(format!("--{name} is required for this family")))
}

struct Io<'a> {
    out: &'a mut Vec<u8>,
    err: &'a mut Vec<u8>,
    json: bool,
}

impl Io<'_> {
    fn json<T: Serialize>(&mut self, value: &T) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(value).expect("output serializes");
        writeln!(self.out, "{text}")
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_TRUE };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let mut out_buf = Vec::new();
    let mut err_buf = Vec::new();
    let mut io = Io {
        out: &mut out_buf,
        err: &mut err_buf,
        json: cli.json,
    };
    let outcome = match cli.threads {
        Some(0) => Err(Usage("--threads must be at least 1".into())),
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(|| dispatch(&cli, &mut io)),
            Err(e) => Err(Usage(e.to_string())),
        },
        None => dispatch(&cli, &mut io),
    };
    let code = match outcome {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err_buf, "error: {msg}");
            EXIT_USAGE
        }
    };
    let _ = out.write_all(&out_buf);
    let _ = err.write_all(&err_buf);
    code
}

fn open_cache(cli: &Cli) -> Result<Option<ResultCache>, Usage> {
    let path = cli
        .cache
        .clone()
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    Ok(match path {
        Some(p) => Some(ResultCache::open(p)?),
        None => None,
    })
}

fn dispatch(cli: &Cli, io: &mut Io) -> Result<i32, Usage> {
    match &cli.command {
        Command::Check {
            pattern,
            graph,
            predicate,
        } => {
            let f = decode("pattern", pattern)?;
            let g = decode("graph", graph)?;
            let report = predicates::evaluate(*predicate, &g, &f)?;
            if io.json {
                io.json(&report)?;
            } else {
                print_report(io, &report)?;
            }
            Ok(if report.verdict { EXIT_TRUE } else { EXIT_FALSE })
        }
        Command::Construct(args) => construct(args, io),
        Command::Bounds { pattern, family, r } => {
            if let Some(p) = pattern {
                let set = bounds::structural_bounds(&decode("pattern", p)?);
                if io.json {
                    io.json(&set)?;
                } else {
                    print_bounds(io, &set)?;
                }
            } else {
                let family: KnownFamily = family.as_deref().unwrap_or_default().parse()?;
                let r = need("r", *r)?;
                let known = bounds::known_density(family, r)?;
                if io.json {
                    io.json(&known)?;
                } else {
                    writeln!(io.out, "{family:?} r={r}: {known}")?;
                }
            }
            Ok(EXIT_TRUE)
        }
        Command::Compute {
            pattern,
            n,
            predicate,
            no_prune,
            max_order,
        } => {
            let f = decode("pattern", pattern)?;
            let options = SearchOptions {
                prune: !no_prune,
                max_order: *max_order,
            };
            let mut cache = open_cache(cli)?;
            let result = match cache.as_mut() {
                Some(c) => search::min_edges_cached(&f, *n, *predicate, &options, c)?,
                None => search::min_edges(&f, *n, *predicate, &options)?,
            };
            if io.json {
                io.json(&result)?;
            } else {
                print_search(io, &result)?;
            }
            writeln!(io.err, "elapsed: {:.3}s", result.elapsed.as_secs_f64())?;
            Ok(EXIT_TRUE)
        }
        Command::Profile {
            pattern,
            n_max,
            predicate,
        } => {
            let f = decode("pattern", pattern)?;
            let mut cache = open_cache(cli)?;
            let profile = search::density_profile(&f, *n_max, *predicate, &SearchOptions::default(), cache.as_mut())?;
            let report = ProfileReport::new(&f, profile);
            if io.json {
                io.json(&report)?;
            } else {
                print_profile(io, &report)?;
            }
            Ok(EXIT_TRUE)
        }
        Command::Verify { suite } => {
            let report = verify::run_suite(*suite);
            if io.json {
                io.json(&report)?;
            } else {
                print_suite(io, &report)?;
            }
            Ok(if report.passed() { EXIT_TRUE } else { EXIT_FALSE })
        }
    }
}

fn family_spec(args: &ConstructArgs) -> Result<FamilySpec, Usage> {
    let pattern = |args: &ConstructArgs| -> Result<Graph, Usage> {
        let text = args
            .pattern
            .as_deref()
            .ok_or_else(|| Usage("--pattern is required for this family".into()))?;
        decode("pattern", text)
    };
    Ok(match args.family.as_str() {
        "near-matching" => FamilySpec::NearMatching {
            k: need("k", args.k.or(args.n))?,
        },
        "dom-turan" => FamilySpec::DomTuran {
            n: need("n", args.n)?,
            r: need("r", args.r)?,
        },
        "turan" => FamilySpec::Turan {
            n: need("n", args.n)?,
            r: need("r", args.r)?,
        },
        "path" => FamilySpec::Path {
            n: need("n", args.n)?,
            r: need("r", args.r)?,
        },
        "cycle-gadget" => {
            let r = need("r", args.r)?;
            match args.loop_len {
                None => FamilySpec::CycleGadget {
                    n: need("n", args.n)?,
                    r,
                },
                Some(loop_len) => {
                    let clique = args.clique.unwrap_or(r);
                    let loops = match (args.loops, args.n) {
                        (Some(c), _) => c,
                        (None, Some(n)) if n > clique && loop_len > 0 => (n - clique) / loop_len,
                        _ => 2,
                    };
                    FamilySpec::CycleGadgetLoops {
                        r,
                        clique,
                        loop_len,
                        loops,
                    }
                }
            }
        }
        "star" => FamilySpec::Star {
            n: need("n", args.n)?,
            r: need("r", args.r)?,
        },
        "star-plus" => {
            let s = need("s", args.s)?;
            FamilySpec::StarPlus {
                n: args.n.unwrap_or(2 * s - 2),
                s,
            }
        }
        "bridge" => FamilySpec::Bridge {
            pattern: pattern(args)?,
            n: need("n", args.n)?,
        },
        "neighborhood" => FamilySpec::Neighborhood {
            pattern: pattern(args)?,
            n: need("n", args.n)?,
        },
        other => return Err(Usage(format!(
            "unknown family {other:?}; expected near-matching, dom-turan, turan, path, cycle-gadget, star, star-plus, bridge or neighborhood"
        ))),
    })
}

#[derive(Serialize)]
struct ConstructOutput {
    family: String,
    graph6: String,
    n: usize,
    edges: usize,
    density: Density,
    certificate: Option<PredicateReport>,
}

fn construct(args: &ConstructArgs, io: &mut Io) -> Result<i32, Usage> {
    let spec = family_spec(args)?;
    let g = spec.build(args.pad)?;
    let report = if args.certify { spec.certify(&g) } else { None };
    let output = ConstructOutput {
        family: spec.to_string(),
        graph6: graph6::encode(&g),
        n: g.order(),
        edges: g.size(),
        density: Density::new(g.size() as i64, g.order() as i64),
        certificate: report.clone(),
    };
    if io.json {
        io.json(&output)?;
    } else {
        writeln!(io.out, "{}", output.graph6)?;
        writeln!(
            io.err,
            "{}: n = {}, edges = {}, density = {}",
            output.family, output.n, output.edges, output.density
        )?;
        match (&report, args.certify) {
            (Some(r), _) => print_report(io, r)?,
            (None, true) => writeln!(io.out, "no claimed predicate to certify")?,
            (None, false) => {}
        }
    }
    Ok(match report {
        Some(r) if !r.verdict => EXIT_FALSE,
        _ => EXIT_TRUE,
    })
}

fn print_report(io: &mut Io, r: &PredicateReport) -> std::io::Result<()> {
    writeln!(io.out, "{}: {}", r.predicate, r.verdict)?;
    use predicates::Certificate as C;
    match &r.certificate {
        C::None => Ok(()),
        C::ViolatingNonEdge { edge } => writeln!(io.out, "violating non-edge: {edge}"),
        C::UncoveredEdge { edge } => writeln!(io.out, "uncovered edge: {edge}"),
        C::ForbiddenCopy { embedding } => writeln!(io.out, "copy of pattern: {:?}", embedding.map),
        C::ClosureGap { missing } => {
            let list: Vec<String> = missing.iter().map(|e| e.to_string()).collect();
            writeln!(io.out, "closure stops short of: {}", list.join(" "))
        }
        C::ClosureOrder { order } => {
            let list: Vec<String> = order.iter().map(|e| e.to_string()).collect();
            writeln!(io.out, "closure order: {}", list.join(" "))
        }
    }
}

fn print_bounds(io: &mut Io, set: &bounds::BoundSet) -> std::io::Result<()> {
    writeln!(io.out, "pattern {}", set.pattern)?;
    for (side, list) in [("lower", &set.lower), ("upper", &set.upper)] {
        for b in list {
            let source = serde_json::to_value(b.source).expect("tag serializes");
            writeln!(
                io.out,
                "  {side:<5} {:>8}  {:<18} {}",
                b.value.to_string(),
                source.as_str().unwrap_or_default(),
                b.detail
            )?;
        }
    }
    let show = |d: Option<Density>| d.map_or("-".to_string(), |d| d.to_string());
    writeln!(
        io.out,
        "best lower {}, best upper {}",
        show(set.best_lower),
        show(set.best_upper)
    )?;
    for w in &set.warnings {
        writeln!(io.out, "warning: {w}")?;
    }
    Ok(())
}

fn print_search(io: &mut Io, r: &SearchResult) -> std::io::Result<()> {
    writeln!(io.out, "pattern     {}", r.pattern)?;
    writeln!(io.out, "predicate   {}", r.predicate)?;
    writeln!(io.out, "n           {}", r.n)?;
    writeln!(io.out, "min edges   {}", r.min_edges)?;
    writeln!(io.out, "examined    {}", r.graphs_examined)?;
    writeln!(io.out, "witnesses   {}", r.witnesses.len())?;
    for w in &r.witnesses {
        writeln!(io.out, "  {w}")?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ProfileRowOut {
    n: usize,
    min_edges: usize,
    density: Density,
    /// Edge density of `D(n,r)` when the pattern is `K_r`.
    dom_turan_density: Option<Density>,
}

#[derive(Serialize)]
struct ProfileReport {
    pattern: String,
    predicate: PredicateKind,
    rows: Vec<ProfileRowOut>,
    non_decreasing: bool,
    decreases: Vec<(usize, usize)>,
    /// Known asymptotic density when the pattern is a clique.
    reference: Option<Density>,
    final_gap: Option<Density>,
}

impl ProfileReport {
    fn new(f: &Graph, p: DensityProfile) -> ProfileReport {
        let clique_r = (f.is_complete() && f.order() >= 3).then_some(f.order());
        let reference = clique_r.and_then(|r| bounds::dsat_clique_density(r).ok());
        let rows = p
            .rows
            .iter()
            .map(|row| ProfileRowOut {
                n: row.n,
                min_edges: row.min_edges,
                density: row.density,
                dom_turan_density: clique_r
                    .and_then(|r| cons::dom_turan(row.n, r).ok())
                    .map(|g| Density::new(g.size() as i64, row.n as i64)),
            })
            .collect();
        ProfileReport {
            pattern: p.pattern.clone(),
            predicate: p.predicate,
            non_decreasing: p.non_decreasing(),
            decreases: p.decreases(),
            final_gap: reference.and_then(|r| p.final_gap(r)),
            reference,
            rows,
        }
    }
}

fn print_profile(io: &mut Io, p: &ProfileReport) -> std::io::Result<()> {
    writeln!(io.out, "pattern {} ({})", p.pattern, p.predicate)?;
    writeln!(io.out, "{:>4} {:>6} {:>9} {:>9}", "n", "m*", "m*/n", "D(n,r)")?;
    for row in &p.rows {
        let d = row.dom_turan_density.map_or("-".to_string(), |d| d.to_string());
        writeln!(
            io.out,
            "{:>4} {:>6} {:>9} {:>9}",
            row.n,
            row.min_edges,
            row.density.to_string(),
            d
        )?;
    }
    writeln!(io.out, "non-decreasing: {}", p.non_decreasing)?;
    if let (Some(r), Some(g)) = (p.reference, p.final_gap) {
        writeln!(io.out, "asymptotic density {r}; gap at last row {g}")?;
    }
    Ok(())
}

fn print_suite(io: &mut Io, r: &SuiteReport) -> std::io::Result<()> {
    writeln!(io.out, "suite {}", r.suite)?;
    for c in &r.checks {
        let status = if c.passed() { "pass" } else { "FAIL" };
        writeln!(io.out, "  {status}  {:>7} cases  {}", c.cases, c.name)?;
        for f in c.failures.iter().take(5) {
            writeln!(io.out, "        {f}")?;
        }
    }
    writeln!(
        io.out,
        "{}",
        if r.passed() {
            "all checks passed"
        } else {
            "some checks failed"
        }
    )
}
