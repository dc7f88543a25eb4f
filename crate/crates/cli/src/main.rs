//! Command-line front end: generation, distance matrices, condition
//! checking, realization, usefulness, girth, and fuzzing.
//!
//! Exit codes: 0 on success (and for `check`, realizable), 1 when a check
//! ran and answered "no" (not realizable, fuzz failures), 2 for usage,
//! format, scope, and validation errors.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use distgraph::io::{self, NumberStyle};
use distgraph::{
    all_pairs_distances, classify, fuzz_roundtrip, girth, realize, useful_edges, Error,
    FamilyRegistry, GraphFamily, Mode, Rational, SampleConfig, Verdict, DEFAULT_GEODESIC_CAP,
};

#[derive(Parser)]
#[command(
    name = "distgraph",
    version,
    about = "Weighted generalized Petersen and Kneser graphs: exact distance matrices and their realization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, Default, ValueEnum)]
enum ModeArg {
    #[default]
    Strict,
    Permissive,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Permissive => Mode::Permissive,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family graph (optionally randomly weighted) as an edge list
    Generate {
        /// Family, e.g. gp:5,2 | kneser:7,3 | odd:4
        #[arg(long)]
        family: String,
        /// Weight distribution, e.g. uniform:1,2 (weights default to 1)
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Denominator of the rational weight grid
        #[arg(long, default_value_t = 1000)]
        grid: u64,
        /// Output path (.json for JSON, otherwise edge-list text); stdout if absent
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print weights as exact decimals (errors when impossible)
        #[arg(long)]
        decimal: bool,
    },
    /// Compute the exact distance matrix of a graph
    Distmat {
        #[arg(long)]
        graph: PathBuf,
        /// Output path (.json for JSON, otherwise CSV); stdout if absent
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        decimal: bool,
    },
    /// Check conditions (a)-(d) of a matrix against a family
    Check {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        family: String,
        #[arg(long, value_enum, default_value_t)]
        mode: ModeArg,
        /// Write the full verdict as JSON
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Reconstruct the weighted family graph realizing a matrix
    Realize {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        family: String,
        #[arg(long, value_enum, default_value_t)]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        decimal: bool,
    },
    /// Classify every edge as useful or useless, with witnesses
    Useful {
        #[arg(long)]
        graph: PathBuf,
        /// Bound on geodesics per vertex pair
        #[arg(long, default_value_t = DEFAULT_GEODESIC_CAP)]
        cap: u64,
    },
    /// Print the girth of a graph
    Girth {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Sample weightings, round-trip them through check and realize
    Fuzz {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Weight distribution for the samples
        #[arg(long, default_value = "uniform:1,2")]
        weights: String,
        #[arg(long, default_value_t = 1000)]
        grid: u64,
        /// Write the fuzz report as JSON
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code_for(&err)
        }
    };
    std::process::exit(code);
}

/// Prints one line to stdout, exiting quietly when the reader has gone away
/// (e.g. piping into `head`).
macro_rules! outln {
    ($($arg:tt)*) => {
        emit(format!($($arg)*))
    };
}

fn emit(line: String) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{line}").is_err() {
        std::process::exit(0);
    }
}

fn emit_raw(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).is_err() {
        std::process::exit(0);
    }
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::NotRealizable { .. } => 1,
        _ => 2,
    }
}

fn run(command: Command) -> Result<i32, Error> {
    match command {
        Command::Generate {
            family,
            weights,
            seed,
            grid,
            out,
            decimal,
        } => {
            let fam = parse_family(&family)?;
            let graph = match weights {
                None => fam.unit_graph(),
                Some(spec) => {
                    let (low, high) = parse_weight_spec(&spec)?;
                    let cfg = SampleConfig::new(fam, low, high, grid, seed)?;
                    distgraph::sample_weights(&cfg)?
                }
            };
            let style = style_of(decimal);
            match out {
                Some(path) => {
                    io::write_graph(&path, &graph, style)?;
                    eprintln!(
                        "wrote {} ({} vertices, {} edges)",
                        path.display(),
                        graph.vertex_count(),
                        graph.edge_count()
                    );
                }
                None => emit_raw(&io::graph_to_json(&graph, style)?),
            }
            Ok(0)
        }
        Command::Distmat {
            graph,
            out,
            decimal,
        } => {
            let g = io::read_graph(&graph)?;
            let d = all_pairs_distances(&g)?;
            let style = style_of(decimal);
            match out {
                Some(path) => {
                    io::write_matrix(&path, &d, style)?;
                    eprintln!("wrote {} ({}x{})", path.display(), d.dim(), d.dim());
                }
                None => emit_raw(&io::matrix_to_csv(&d, style)?),
            }
            Ok(0)
        }
        Command::Check {
            matrix,
            family,
            mode,
            report,
        } => {
            let d = io::read_matrix(&matrix)?;
            let fam = parse_family(&family)?;
            let verdict = classify(&d, fam.as_ref(), mode.into())?;
            print_verdict(&verdict);
            if let Some(path) = report {
                io::write_atomic(&path, &io::to_json_pretty(&verdict))?;
                eprintln!("wrote {}", path.display());
            }
            Ok(if verdict.realizable { 0 } else { 1 })
        }
        Command::Realize {
            matrix,
            family,
            mode,
            out,
            decimal,
        } => {
            let d = io::read_matrix(&matrix)?;
            let fam = parse_family(&family)?;
            match realize(&d, fam.as_ref(), mode.into()) {
                Ok(g) => {
                    let style = style_of(decimal);
                    match out {
                        Some(path) => {
                            io::write_graph(&path, &g, style)?;
                            eprintln!(
                                "wrote {} ({} vertices, {} edges)",
                                path.display(),
                                g.vertex_count(),
                                g.edge_count()
                            );
                        }
                        None => emit_raw(&io::graph_to_json(&g, style)?),
                    }
                    Ok(0)
                }
                Err(Error::NotRealizable { failing }) => {
                    eprintln!("not realizable as {}", fam.id());
                    for condition in &failing {
                        eprintln!(
                            "condition {} fails ({} witnesses)",
                            condition.id,
                            condition.witnesses.len()
                        );
                        for witness in condition.witnesses.iter().take(5) {
                            eprintln!("  - {witness}");
                        }
                        if condition.witnesses.len() > 5 {
                            eprintln!("  ... and {} more", condition.witnesses.len() - 5);
                        }
                    }
                    Ok(1)
                }
                Err(other) => Err(other),
            }
        }
        Command::Useful { graph, cap } => {
            let g = io::read_graph(&graph)?;
            let usefulness = useful_edges(&g, cap)?;
            for (e, status) in usefulness.iter() {
                let weight = g.weight(e).expect("classified edge exists");
                match status {
                    distgraph::EdgeStatus::Useful { witness: (i, j) } => outln!(
                        "{} -- {}\tw={}\tuseful\twitness=({},{})",
                        g.label(e.a()),
                        g.label(e.b()),
                        weight,
                        g.label(*i),
                        g.label(*j)
                    ),
                    distgraph::EdgeStatus::Useless => outln!(
                        "{} -- {}\tw={}\tuseless",
                        g.label(e.a()),
                        g.label(e.b()),
                        weight
                    ),
                }
            }
            Ok(0)
        }
        Command::Girth { graph } => {
            let g = io::read_graph(&graph)?;
            outln!("{}", girth(&g));
            Ok(0)
        }
        Command::Fuzz {
            family,
            trials,
            seed,
            weights,
            grid,
            report,
        } => {
            let fam = parse_family(&family)?;
            let (low, high) = parse_weight_spec(&weights)?;
            let cfg = SampleConfig::new(fam, low, high, grid, seed)?;
            let fuzz_report = fuzz_roundtrip(&cfg, trials)?;
            outln!(
                "family={} trials={} passes={} failures={}",
                fuzz_report.family,
                fuzz_report.trials,
                fuzz_report.passes,
                fuzz_report.failures.len()
            );
            for failure in fuzz_report.failures.iter().take(5) {
                outln!(
                    "  trial {} failed at {:?}: {}",
                    failure.trial,
                    failure.stage,
                    failure.witness
                );
            }
            if let Some(path) = report {
                io::write_atomic(&path, &io::to_json_pretty(&fuzz_report))?;
                eprintln!("wrote {}", path.display());
            }
            Ok(if fuzz_report.all_passed() { 0 } else { 1 })
        }
    }
}

fn style_of(decimal: bool) -> NumberStyle {
    if decimal {
        NumberStyle::Decimal
    } else {
        NumberStyle::Fraction
    }
}

fn parse_family(spec: &str) -> Result<Arc<dyn GraphFamily>, Error> {
    FamilyRegistry::builtin().parse(spec)
}

/// `uniform:<low>,<high>` with rational bounds, e.g. `uniform:1,2` or
/// `uniform:1/2,3/4`.
fn parse_weight_spec(spec: &str) -> Result<(Rational, Rational), Error> {
    let args = spec.strip_prefix("uniform:").ok_or_else(|| {
        Error::InvalidParameter(format!("weights '{spec}': expected uniform:<low>,<high>"))
    })?;
    let (low, high) = args.split_once(',').ok_or_else(|| {
        Error::InvalidParameter(format!("weights '{spec}': expected uniform:<low>,<high>"))
    })?;
    Ok((low.trim().parse()?, high.trim().parse()?))
}

fn print_verdict(verdict: &Verdict) {
    for condition in &verdict.conditions {
        let enforced = if condition.enforced {
            ""
        } else {
            " (not enforced in permissive mode)"
        };
        if condition.holds {
            outln!("condition {}: holds{enforced}", condition.id);
        } else {
            outln!(
                "condition {}: fails ({} witnesses){enforced}",
                condition.id,
                condition.witnesses.len()
            );
            for witness in condition.witnesses.iter().take(5) {
                outln!("  - {witness}");
            }
            if condition.witnesses.len() > 5 {
                outln!("  ... and {} more", condition.witnesses.len() - 5);
            }
        }
    }
    if let Some(frame) = &verdict.frame {
        outln!("frame: outer cycle [{}]", frame.outer.join(", "));
        if !frame.hats.is_empty() {
            let hats: Vec<String> = frame
                .hats
                .iter()
                .map(|(v, hat)| format!("{v}->{hat}"))
                .collect();
            outln!("frame: hats {}", hats.join(", "));
        }
        if let Some(k) = frame.inner_shift {
            outln!("frame: inner shift {k}");
        }
    }
    for note in &verdict.notes {
        outln!("note: {note}");
    }
    outln!("realizable: {}", verdict.realizable);
}
