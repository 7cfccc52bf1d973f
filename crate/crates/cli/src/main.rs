//! `sumfree`: command-line front end with a content-addressed result cache.
//!
//! Exit codes: 0 on success, 1 when a check reports a failure, 2 on usage
//! or parameter errors.

mod cache;
mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Value};
use sumfree::enumerate::Method;
use sumfree::miscount::DEFAULT_ENUM_CAP;

use cache::{Cache, Lookup};
use commands::{GraphArgs, GraphFamily, GroupOp, SetFamily};
use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "sumfree",
    version,
    about = "Sum-free sets, link graphs and maximal independent sets"
)]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    /// Seed for randomised corpora.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Cache directory (overrides SUMFREE_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Report wall time on stderr.
    #[arg(long, global = true)]
    timing: bool,
    /// Output format (default: csv for `constants`, json lines otherwise).
    #[arg(long, global = true, value_enum)]
    output: Option<Format>,
    /// Largest ground set the enumeration commands accept.
    #[arg(long, global = true, default_value_t = 40, value_parser = clap::value_parser!(u32).range(1..=64))]
    max_n: u32,
    /// Largest number of maximal independent sets listed by `mis --sets`.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUM_CAP)]
    enum_cap: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f(n) and f_max(n) for [n].
    Enumerate {
        #[arg(long)]
        n: u32,
        /// Brute force over all subsets instead of the branching search.
        #[arg(long, conflicts_with = "two_step")]
        oracle: bool,
        /// Count maximal sets through link graphs of the lower half.
        #[arg(long)]
        two_step: bool,
        /// List the maximal sum-free sets instead of counting.
        #[arg(long)]
        list: bool,
    },
    /// Count (or list) maximal independent sets.
    #[command(group(ArgGroup::new("source").required(true).args(["graph", "family"])))]
    Mis {
        /// Graph in text format.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_enum)]
        family: Option<GraphFamily>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        /// Comma-separated list, for the `link` family.
        #[arg(long)]
        s: Option<String>,
        /// Also list the sets, by vertex label.
        #[arg(long)]
        sets: bool,
    },
    /// Build L(n, m, S) or the link graph of even numbers on the odd numbers.
    #[command(group(ArgGroup::new("kind").required(true).args(["m", "even"])))]
    Link {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: Option<u32>,
        /// Comma-separated members of S.
        #[arg(long, requires = "m")]
        s: Option<String>,
        #[arg(long)]
        even: Option<u32>,
        #[arg(long, requires = "even")]
        even2: Option<u32>,
        /// Print the graph in text format instead of a record.
        #[arg(long)]
        text: bool,
    },
    /// Emit a family of maximal sum-free sets, one member per record.
    #[command(group(ArgGroup::new("ground").required(true).args(["n", "group"])))]
    Construct {
        #[arg(long, value_enum)]
        family: SetFamily,
        /// Ground set size (or k for z2k).
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        group: Option<String>,
        /// Verify the family instead of listing it.
        #[arg(long)]
        check: bool,
    },
    /// Invariants of a finite abelian group such as Z4xZ2.
    Group {
        #[arg(long)]
        desc: String,
        #[arg(long, value_enum)]
        op: GroupOp,
    },
    /// Run one named check or the whole suite.
    #[command(group(ArgGroup::new("which").required(true).args(["check", "all"])))]
    Verify {
        #[arg(long)]
        check: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Finite ratios by residue class mod 4.
    #[command(group(ArgGroup::new("table").required(true).args(["dprime", "fmax"])))]
    Constants {
        /// Σ MIS(L_m[O]) / 2^(n/4).
        #[arg(long)]
        dprime: bool,
        /// f_max(n) / 2^(n/4).
        #[arg(long)]
        fmax: bool,
        #[arg(long, default_value_t = 4)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
    },
    /// Count s-subsets of [D] with small sumset.
    SumsetCensus {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        r: f64,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
    },
}

impl Command {
    fn default_format(&self) -> Format {
        match self {
            Command::Constants { .. } => Format::Csv,
            _ => Format::Json,
        }
    }

    /// Operation name and canonical parameters for the cache key.
    fn key(&self, cli: &Cli) -> Result<(&'static str, Value)> {
        Ok(match self {
            Command::Enumerate {
                n,
                oracle,
                two_step,
                list,
            } => (
                "enumerate",
                json!({ "n": n, "oracle": oracle, "two_step": two_step, "list": list, "max_n": cli.max_n }),
            ),
            Command::Mis {
                graph,
                family,
                n,
                m,
                s,
                sets,
            } => {
                let text = match graph {
                    Some(p) => Some(commands::read_graph(p)?.0),
                    None => None,
                };
                let family = family.map(|f| commands::value_name(&f));
                let cap = sets.then(|| cli.enum_cap.to_string());
                (
                    "mis",
                    json!({ "graph": text, "family": family, "n": n, "m": m, "s": s, "sets": sets, "cap": cap }),
                )
            }
            Command::Link {
                n,
                m,
                s,
                even,
                even2,
                ..
            } => (
                "link",
                json!({ "n": n, "m": m, "s": s, "even": even, "even2": even2 }),
            ),
            Command::Construct {
                family,
                n,
                group,
                check,
            } => (
                "construct",
                json!({ "family": commands::value_name(family), "n": n, "group": group, "check": check }),
            ),
            Command::Group { desc, op } => (
                "group",
                json!({ "desc": desc, "op": commands::value_name(op) }),
            ),
            Command::Verify { check, .. } => {
                ("verify", json!({ "check": check, "seed": cli.seed }))
            }
            Command::Constants {
                dprime,
                n_min,
                n_max,
                ..
            } => (
                "constants",
                json!({ "dprime": dprime, "n_min": n_min, "n_max": n_max, "max_n": cli.max_n }),
            ),
            Command::SumsetCensus { d, s, r, delta } => (
                "sumset-census",
                json!({ "d": d, "s": s, "r": r, "delta": delta }),
            ),
        })
    }

    fn compute(&self, cli: &Cli) -> Result<Vec<Value>> {
        match self {
            Command::Enumerate {
                n,
                oracle,
                two_step,
                list,
            } => {
                let method = match (oracle, two_step) {
                    (true, _) => Method::Oracle,
                    (_, true) => Method::TwoStep,
                    _ => Method::Branch,
                };
                commands::enumerate(*n, method, *list, cli.max_n)
            }
            Command::Mis {
                graph,
                family,
                n,
                m,
                s,
                sets,
            } => {
                let (name, g) = match (graph, family) {
                    (Some(p), _) => (p.display().to_string(), commands::read_graph(p)?.1),
                    (None, Some(f)) => {
                        let args = GraphArgs {
                            n: *n,
                            m: *m,
                            s: s.clone(),
                        };
                        (commands::value_name(f), commands::family_graph(*f, &args)?)
                    }
                    (None, None) => unreachable!("clap requires a graph source"),
                };
                commands::mis(&g, &name, *sets, cli.enum_cap)
            }
            Command::Link {
                n,
                m,
                s,
                even,
                even2,
                ..
            } => commands::link(*n, *m, s.as_deref(), *even, *even2),
            Command::Construct {
                family,
                n,
                group,
                check,
            } => commands::construct(*family, *n, group.as_deref(), *check),
            Command::Group { desc, op } => commands::group(desc, *op),
            Command::Verify { check, .. } => commands::verify(check.as_deref(), cli.seed),
            Command::Constants {
                dprime,
                n_min,
                n_max,
                ..
            } => {
                if *dprime {
                    commands::dprime_constants(*n_min, *n_max)
                } else {
                    commands::fmax_constants(*n_min, *n_max, cli.max_n)
                }
            }
            Command::SumsetCensus { d, s, r, delta } => commands::sumset_census(*d, *s, *r, *delta),
        }
    }
}

fn records(cli: &Cli) -> Result<(Vec<Value>, &'static str)> {
    let (op, params) = cli.command.key(cli)?;
    if cli.no_cache {
        return Ok((cli.command.compute(cli)?, "computed"));
    }
    let cache = Cache::new(cache::default_dir(cli.cache_dir.clone()));
    let key = cache.key(op, &params);
    match cache.lookup(&key) {
        Lookup::Hit(r) => return Ok((r, "cache hit")),
        Lookup::Miss => {}
        Lookup::Corrupt(why) => eprintln!("warning: discarding corrupt cache entry {key}: {why}"),
    }
    let r = cli.command.compute(cli)?;
    if let Err(e) = cache.store(&key, op, &params, &r) {
        eprintln!(
            "warning: could not write cache in {}: {e}",
            cache.dir().display()
        );
    }
    Ok((r, "computed"))
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w as usize)
            .build_global()?;
    }
    let start = Instant::now();
    let (recs, source) = records(cli)?;
    let mut out = std::io::stdout().lock();
    match &cli.command {
        Command::Link { text: true, .. } => {
            for r in &recs {
                write!(out, "{}", r["text"].as_str().unwrap_or_default())?;
            }
        }
        cmd => output::render(&recs, cli.output.unwrap_or(cmd.default_format()), &mut out)?,
    }
    out.flush()?;
    if cli.timing {
        eprintln!("elapsed: {:.3} s ({source})", start.elapsed().as_secs_f64());
    }
    Ok(recs.iter().all(|r| r["passed"] != json!(false)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
