//! Command-line front end. `run` returns the process exit code:
//! 0 success, 1 invariant failure, 2 usage or domain error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::error::Error;
use crate::graph::CirculantGraph;
use crate::report::{
    build_report, render_table, sweep_row, ReportOptions, CSV_SCHEMA, DEFAULT_MAX_EXHAUSTIVE,
};
use crate::routing::Routing;
use crate::verify::{verify, Status, Suite};
use crate::wavelength::{colour_routing_with_rule, Variant, WrapRule};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "circroute",
    version,
    about = "Routing, wavelength assignment and load bounds for circulant networks C_n(1,s)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Loads, bound brackets, colour counts and verification for one instance.
    Report {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Brute-force oracles run only up to this many nodes.
        #[arg(long, default_value_t = DEFAULT_MAX_EXHAUSTIVE)]
        max_exhaustive: usize,
    },
    /// Run invariant suites against brute-force oracles.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_MAX_EXHAUSTIVE)]
        max_exhaustive: usize,
    },
    /// Write one CSV row per valid (n, s) in a range.
    Sweep {
        /// Inclusive range `A..B` (or `A..=B`).
        #[arg(long)]
        n: String,
        /// `all`, or a comma-separated list of skips.
        #[arg(long, default_value = "all")]
        s: String,
        /// Output file; `-` for standard output.
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_EXHAUSTIVE)]
        max_exhaustive: usize,
    },
    /// Print the routed path from one node to another.
    Route {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Print the colour of every routed path and check it for conflicts.
    Colour {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, value_enum, default_value_t = Variant::Arc)]
        variant: Variant,
        /// Rule for the wrap-around sources of skip-heavy classes.
        #[arg(long, value_enum, default_value_t = WrapRule::Shifted)]
        wrap: WrapRule,
    },
}

/// Parse `A..B` or `A..=B` (both inclusive).
pub fn parse_range(text: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = text
        .split_once("..=")
        .or_else(|| text.split_once(".."))
        .ok_or_else(|| format!("expected A..B, got {text:?}"))?;
    let lo: usize = lo.trim().parse().map_err(|e| format!("bad range start {lo:?}: {e}"))?;
    let hi: usize = hi.trim().parse().map_err(|e| format!("bad range end {hi:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty range {text:?}"));
    }
    Ok((lo, hi))
}

/// `all` or a comma-separated list of skips.
pub fn parse_skips(text: &str) -> Result<Option<Vec<usize>>, String> {
    if text.trim() == "all" {
        return Ok(None);
    }
    let mut skips = text
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("bad skip {p:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    skips.sort_unstable();
    skips.dedup();
    Ok(Some(skips))
}

/// Valid instances of a sweep, in lexicographic `(n, s)` order.
pub fn sweep_instances(lo: usize, hi: usize, skips: Option<&[usize]>) -> Vec<CirculantGraph> {
    crate::graph::valid_instances(lo, hi)
        .filter(|g| skips.is_none_or(|list| list.binary_search(&g.s()).is_ok()))
        .collect()
}

fn usage(err: &mut dyn Write, msg: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: {msg}");
    EXIT_USAGE
}

fn graph(n: usize, s: usize, err: &mut dyn Write) -> Result<CirculantGraph, i32> {
    CirculantGraph::new(n, s).map_err(|e| usage(err, e))
}

/// Parse arguments (including the program name) and run.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INVARIANT
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    match cmd {
        Command::Report {
            n,
            s,
            format,
            max_exhaustive,
        } => {
            let g = match graph(n, s, err) {
                Ok(g) => g,
                Err(code) => return Ok(code),
            };
            let start = Instant::now();
            let opts = ReportOptions {
                max_exhaustive,
                verify: true,
            };
            let doc = match build_report(&g, opts) {
                Ok(doc) => doc,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(EXIT_INVARIANT);
                }
            };
            match format {
                Format::Json => writeln!(out, "{}", doc.to_json())?,
                Format::Table => write!(out, "{}", render_table(&doc))?,
            }
            writeln!(err, "report for {g} took {:.3}s", start.elapsed().as_secs_f64())?;
            Ok(match doc.verification_passed() {
                Some(false) => EXIT_INVARIANT,
                _ => EXIT_OK,
            })
        }

        Command::Verify {
            n,
            s,
            suite,
            max_exhaustive,
        } => {
            let g = match graph(n, s, err) {
                Ok(g) => g,
                Err(code) => return Ok(code),
            };
            if n > max_exhaustive {
                return Ok(usage(
                    err,
                    format!("n = {n} exceeds --max-exhaustive {max_exhaustive}"),
                ));
            }
            let v = verify(&g, suite);
            for c in &v.checks {
                writeln!(
                    out,
                    "[{}] {:?}/{}: {}",
                    c.status,
                    c.suite,
                    c.name,
                    c.detail
                )?;
            }
            let skipped = v.checks.iter().filter(|c| c.status == Status::Skipped).count();
            match v.first_failure() {
                None => {
                    writeln!(
                        out,
                        "{g}: PASS ({} checks, {skipped} skipped)",
                        v.checks.len()
                    )?;
                    Ok(EXIT_OK)
                }
                Some(c) => {
                    writeln!(out, "{g}: FAIL")?;
                    writeln!(out, "first counterexample ({}): {}", c.name, c.detail)?;
                    Ok(EXIT_INVARIANT)
                }
            }
        }

        Command::Sweep {
            n,
            s,
            out: path,
            jobs,
            max_exhaustive,
        } => {
            let (lo, hi) = match parse_range(&n) {
                Ok(r) => r,
                Err(e) => return Ok(usage(err, e)),
            };
            let skips = match parse_skips(&s) {
                Ok(v) => v,
                Err(e) => return Ok(usage(err, e)),
            };
            let mut builder = rayon::ThreadPoolBuilder::new();
            if let Some(j) = jobs {
                if j == 0 {
                    return Ok(usage(err, "--jobs must be positive"));
                }
                builder = builder.num_threads(j);
            }
            let pool = builder
                .build()
                .map_err(|e| io::Error::other(e.to_string()))?;
            let instances = sweep_instances(lo, hi, skips.as_deref());

            let sink: Box<dyn Write> = if path.as_os_str() == "-" {
                Box::new(io::stdout())
            } else {
                match File::create(&path) {
                    Ok(f) => Box::new(f),
                    Err(e) => {
                        writeln!(err, "error: cannot create {}: {e}", path.display())?;
                        return Ok(EXIT_USAGE);
                    }
                }
            };
            let summary = sweep(&pool, &instances, max_exhaustive, sink, err)
                .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
            writeln!(
                err,
                "wrote {} rows to {} ({} with failures)",
                summary.rows,
                path.display(),
                summary.failures
            )?;
            Ok(if summary.failures == 0 {
                EXIT_OK
            } else {
                EXIT_INVARIANT
            })
        }

        Command::Route { n, s, from, to } => {
            let g = match graph(n, s, err) {
                Ok(g) => g,
                Err(code) => return Ok(code),
            };
            if from >= n || to >= n || from == to {
                return Ok(usage(
                    err,
                    format!("need two distinct nodes in 0..{n}, got {from} and {to}"),
                ));
            }
            let rt = Routing::build(&g);
            let path = match rt.path(from, to) {
                Ok(p) => p,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(EXIT_INVARIANT);
                }
            };
            writeln!(out, "path: {path}")?;
            writeln!(out, "class: {}", rt.class(from, to))?;
            writeln!(
                out,
                "length: {} (distance {})",
                path.nodes.len() - 1,
                g.distance(from, to)
            )?;
            Ok(EXIT_OK)
        }

        Command::Colour {
            n,
            s,
            variant,
            wrap,
        } => {
            let g = match graph(n, s, err) {
                Ok(g) => g,
                Err(code) => return Ok(code),
            };
            let rt = Routing::build(&g);
            match colour_routing_with_rule(&rt, variant, wrap) {
                Ok(c) => {
                    writeln!(out, "from,to,class,colour")?;
                    for (x, y) in rt.pairs() {
                        writeln!(out, "{x},{y},\"{}\",\"{}\"", rt.class(x, y), c.colour(x, y))?;
                    }
                    writeln!(
                        out,
                        "# {variant} colouring of {g}: conflict-free, {} colours",
                        c.distinct_count
                    )?;
                    Ok(EXIT_OK)
                }
                Err(e @ Error::ColourConflict { .. }) => {
                    writeln!(out, "# {variant} colouring of {g}: {e}")?;
                    Ok(EXIT_INVARIANT)
                }
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    Ok(EXIT_INVARIANT)
                }
            }
        }
    }
}

pub struct SweepSummary {
    pub rows: usize,
    pub failures: usize,
}

/// Compute rows on `pool` and write them in order, flushing after every `n`.
pub fn sweep(
    pool: &rayon::ThreadPool,
    instances: &[CirculantGraph],
    max_exhaustive: usize,
    sink: Box<dyn Write>,
    progress: &mut dyn Write,
) -> io::Result<SweepSummary> {
    let mut buffered = BufWriter::new(sink);
    writeln!(buffered, "{CSV_SCHEMA}")?;
    let mut csv = csv::WriterBuilder::new()
        .has_headers(true)
        .from_writer(buffered);
    let mut summary = SweepSummary {
        rows: 0,
        failures: 0,
    };
    let total = instances.len();
    for group in instances.chunk_by(|a, b| a.n() == b.n()) {
        let rows: Vec<_> = pool.install(|| {
            group
                .par_iter()
                .map(|g| sweep_row(g, max_exhaustive))
                .collect()
        });
        for row in rows {
            if row.status != "ok" {
                summary.failures += 1;
            }
            csv.serialize(row).map_err(csv_io)?;
            summary.rows += 1;
        }
        csv.flush()?;
        let _ = writeln!(
            progress,
            "n = {}: {}/{} rows",
            group[0].n(),
            summary.rows,
            total
        );
    }
    csv.flush()?;
    Ok(summary)
}

fn csv_io(e: csv::Error) -> io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => io::Error::other(format!("{other:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_skips() {
        assert_eq!(parse_range("5..30"), Ok((5, 30)));
        assert_eq!(parse_range("5..=30"), Ok((5, 30)));
        assert!(parse_range("30..5").is_err());
        assert!(parse_range("5-30").is_err());
        assert_eq!(parse_skips("all"), Ok(None));
        assert_eq!(parse_skips("3, 2,3"), Ok(Some(vec![2, 3])));
        assert!(parse_skips("x").is_err());
        assert_eq!(sweep_instances(5, 30, None).len(), 182);
        assert_eq!(sweep_instances(5, 30, Some(&[2])).len(), 26);
    }
}
