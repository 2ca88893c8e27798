//! Command-line front end for the bus-graph toolkit.
//!
//! Exit codes: `0` success / feasible, `1` infeasible or violations found
//! (details printed), `2` usage or parse errors, `3` a solver gave up
//! without deciding.

use anyhow::{ensure, Context, Result};
use busgrid::reductions::{
    reduce_nae3sat, reduce_orientation, reduce_partition, ReduceError, ReductionCert,
};
use busgrid::solvers::{
    solve_nae3sat_bruteforce, solve_orientation, solve_partition_bruteforce,
    solve_realizability_small_with, RealizabilityOutcome, RealizabilitySearch,
};
use busgrid::transforms::{compact, expand_duplicates};
use busgrid::{
    embed_reduction, parse_assignment, parse_dimacs, parse_graph, parse_layout, parse_mults,
    render_svg, serialize_assignment, serialize_graph, serialize_layout, validate_graph,
    verify_layout, BusGraph, EmbedError, LayoutRule, Orientation, RenderError, SvgStyle, Violation,
};
use clap::{Parser, Subcommand};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "busgrid",
    version,
    about = "Bus-graph files: verify, reduce, embed, solve, render"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that a layout realizes a graph
    Verify {
        graph: PathBuf,
        layout: PathBuf,
        /// Also enforce declared bus lengths
        #[arg(long)]
        lengths: bool,
    },
    /// Build hard bus-graph instances from source problems
    Reduce {
        #[command(subcommand)]
        from: ReduceCmd,
    },
    /// Draw a reduced NAE-3SAT graph on the grid for a satisfying assignment
    Embed {
        /// Certificate sidecar written by `reduce nae3sat` (.cert.json)
        cert: PathBuf,
        /// Assignment file: whitespace-separated T/F (or 1/0) tokens
        #[arg(long)]
        assignment: PathBuf,
        /// Output layout file
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run an exact solver on a small instance
    Solve {
        #[command(subcommand)]
        what: SolveCmd,
    },
    /// Re-draw a layout on as few grid lines as possible
    Compact { graph: PathBuf, layout: PathBuf },
    /// Materialize duplicate hyperedges of a deduplicated drawing
    Expand {
        graph: PathBuf,
        layout: PathBuf,
        /// Multiplicity overrides (busmults v1)
        mults: PathBuf,
        /// Output file for the expanded layout (default: stdout)
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Output file for the expanded graph
        #[arg(long)]
        graph_out: Option<PathBuf>,
    },
    /// Render a layout to SVG
    Render {
        graph: PathBuf,
        layout: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Render even when the layout does not verify
        #[arg(long)]
        force: bool,
    },
    /// Print size statistics for a graph
    Stats { graph: PathBuf },
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// DIMACS CNF (3 literals per clause, read as not-all-equal clauses)
    /// to a realizability instance; writes `<out>` plus `<out>.cert.json`
    Nae3sat {
        input: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// DIMACS CNF to an orientation-assignment instance
    Orientation {
        input: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Whitespace-separated positive integers to a prescribed-lengths
    /// realizability instance
    Partition {
        input: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum SolveCmd {
    /// Find a feasible bus-orientation assignment
    Orientation { graph: PathBuf },
    /// Complete realizability search for tiny graphs; prints a layout
    Realizability {
        graph: PathBuf,
        /// Candidate placements examined before giving up
        #[arg(long)]
        max_steps: Option<u64>,
        /// Refuse graphs with more buses plus connectors than this
        #[arg(long)]
        max_vertices: Option<usize>,
    },
    /// Brute-force a DIMACS file of not-all-equal clauses (up to 24 vars)
    Nae3sat { input: PathBuf },
    /// Split whitespace-separated integers into two equal-sum halves
    Partition { input: PathBuf },
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes early (`busgrid ... | head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn read_sizes(path: &Path) -> Result<Vec<u64>> {
    read(path)?
        .split('#')
        .next()
        .unwrap_or("")
        .split_whitespace()
        .map(|t| t.parse().with_context(|| format!("expected an integer size, got {t:?}")))
        .collect()
}

fn print_violations(violations: &[Violation]) {
    for v in violations {
        println!("{v}");
    }
}

const OK: ExitCode = ExitCode::SUCCESS;

fn infeasible() -> ExitCode {
    ExitCode::from(1)
}

fn undecided() -> ExitCode {
    ExitCode::from(3)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Verify { graph, layout, lengths } => {
            let g = parse_graph(&read(&graph)?)?;
            let l = parse_layout(&g, &read(&layout)?)?;
            let mut violations = verify_layout(&g, &l);
            if !lengths {
                violations.retain(|v| v.rule != LayoutRule::LengthMismatch);
            }
            if violations.is_empty() {
                println!("ok");
                Ok(OK)
            } else {
                print_violations(&violations);
                Ok(infeasible())
            }
        }
        Cmd::Reduce { from } => reduce(from),
        Cmd::Embed { cert, assignment, out } => {
            let cert: ReductionCert = serde_json::from_str(&read(&cert)?)
                .context("certificate sidecar is not valid JSON for a reduction certificate")?;
            let sigma = parse_assignment(&read(&assignment)?)?;
            let red =
                reduce_nae3sat(&cert.cnf).context("certificate holds a degenerate formula")?;
            ensure!(
                red.cert == cert,
                "certificate does not match its own formula (stale sidecar?)"
            );
            match embed_reduction(&cert, &sigma) {
                Ok(emb) => {
                    write(&out, &serialize_layout(&red.graph, &emb.layout))?;
                    println!("wrote {}", out.display());
                    Ok(OK)
                }
                Err(EmbedError::NotNaeSatisfying { clause }) => {
                    println!("assignment does not not-all-equal satisfy clause {clause}");
                    Ok(infeasible())
                }
                Err(e) => Err(e.into()),
            }
        }
        Cmd::Solve { what } => solve(what),
        Cmd::Compact { graph, layout } => {
            let g = parse_graph(&read(&graph)?)?;
            let l = parse_layout(&g, &read(&layout)?)?;
            match compact(&g, &l) {
                Ok(small) => {
                    print!("{}", serialize_layout(&g, &small));
                    Ok(OK)
                }
                Err(e) => {
                    println!("{e}");
                    Ok(infeasible())
                }
            }
        }
        Cmd::Expand { graph, layout, mults, out, graph_out } => {
            let g = parse_graph(&read(&graph)?)?;
            let l = parse_layout(&g, &read(&layout)?)?;
            let m = parse_mults(&g, &read(&mults)?)?;
            match expand_duplicates(&m, &l) {
                Ok((big_g, big_l)) => {
                    if let Some(p) = &graph_out {
                        write(p, &serialize_graph(&big_g))?;
                    }
                    let text = serialize_layout(&big_g, &big_l);
                    match &out {
                        Some(p) => write(p, &text)?,
                        None => print!("{text}"),
                    }
                    Ok(OK)
                }
                Err(e) => {
                    println!("{e}");
                    Ok(infeasible())
                }
            }
        }
        Cmd::Render { graph, layout, out, force } => {
            let g = parse_graph(&read(&graph)?)?;
            let l = parse_layout(&g, &read(&layout)?)?;
            let style = SvgStyle { force, ..SvgStyle::default() };
            match render_svg(&g, &l, &style) {
                Ok(svg) => {
                    write(&out, &svg)?;
                    println!("wrote {}", out.display());
                    Ok(OK)
                }
                Err(RenderError::Invalid(violations)) => {
                    print_violations(&violations);
                    Ok(infeasible())
                }
            }
        }
        Cmd::Stats { graph } => {
            let g = parse_graph(&read(&graph)?)?;
            stats(&g);
            Ok(OK)
        }
    }
}

fn reduce(from: ReduceCmd) -> Result<ExitCode> {
    match from {
        ReduceCmd::Nae3sat { input, out } => {
            let cnf = parse_dimacs(&read(&input)?)?;
            match reduce_nae3sat(&cnf) {
                Ok(red) => {
                    write(&out, &serialize_graph(&red.graph))?;
                    let cert_path = sidecar(&out);
                    write(&cert_path, &serde_json::to_string_pretty(&red.cert)?)?;
                    println!("wrote {} and {}", out.display(), cert_path.display());
                    Ok(OK)
                }
                Err(e @ ReduceError::UnsatisfiableClause { .. }) => {
                    println!("{e}");
                    Ok(infeasible())
                }
                Err(e) => Err(e.into()),
            }
        }
        ReduceCmd::Orientation { input, out } => {
            let cnf = parse_dimacs(&read(&input)?)?;
            match reduce_orientation(&cnf) {
                Ok(red) => {
                    write(&out, &serialize_graph(&red.graph))?;
                    println!("wrote {}", out.display());
                    Ok(OK)
                }
                Err(e @ ReduceError::UnsatisfiableClause { .. }) => {
                    println!("{e}");
                    Ok(infeasible())
                }
                Err(e) => Err(e.into()),
            }
        }
        ReduceCmd::Partition { input, out } => {
            let sizes = read_sizes(&input)?;
            match reduce_partition(&sizes) {
                Ok(red) => {
                    write(&out, &serialize_graph(&red.graph))?;
                    println!("wrote {} (sizes scaled by {})", out.display(), red.scale);
                    Ok(OK)
                }
                Err(ReduceError::OddTotal { total }) => {
                    println!("odd total size ({total}): no equal split exists");
                    Ok(infeasible())
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

/// `foo.bg` -> `foo.bg.cert.json`.
fn sidecar(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_os_string();
    name.push(".cert.json");
    PathBuf::from(name)
}

fn solve(what: SolveCmd) -> Result<ExitCode> {
    match what {
        SolveCmd::Orientation { graph } => {
            let g = parse_graph(&read(&graph)?)?;
            match solve_orientation(&g) {
                Some(oa) => {
                    for (b, o) in g.buses.iter().zip(&oa.orientations) {
                        let tag = match o {
                            Orientation::Horizontal => "H",
                            Orientation::Vertical => "V",
                        };
                        println!("{} {}", b.name, tag);
                    }
                    Ok(OK)
                }
                None => {
                    println!("infeasible: no orientation assignment admits every connector");
                    Ok(infeasible())
                }
            }
        }
        SolveCmd::Realizability { graph, max_steps, max_vertices } => {
            let g = parse_graph(&read(&graph)?)?;
            let mut opts = RealizabilitySearch::default();
            if let Some(s) = max_steps {
                opts.max_steps = s;
            }
            if let Some(v) = max_vertices {
                opts.max_vertices = v;
            }
            match solve_realizability_small_with(&g, &opts) {
                RealizabilityOutcome::Realizable(l) => {
                    print!("{}", serialize_layout(&g, &l));
                    Ok(OK)
                }
                RealizabilityOutcome::Infeasible { bound } => {
                    println!("infeasible: complete search of the ±{bound} window found no drawing");
                    Ok(infeasible())
                }
                RealizabilityOutcome::GaveUp { steps } => {
                    println!("undecided: gave up after {steps} steps (raise --max-steps / --max-vertices)");
                    Ok(undecided())
                }
            }
        }
        SolveCmd::Nae3sat { input } => {
            let cnf = parse_dimacs(&read(&input)?)?;
            ensure!(cnf.vars <= 24, "brute force handles at most 24 variables, got {}", cnf.vars);
            match solve_nae3sat_bruteforce(&cnf) {
                Some(sigma) => {
                    print!("{}", serialize_assignment(&sigma));
                    Ok(OK)
                }
                None => {
                    println!("unsatisfiable");
                    Ok(infeasible())
                }
            }
        }
        SolveCmd::Partition { input } => {
            let sizes = read_sizes(&input)?;
            ensure!(
                sizes.len() <= 30,
                "brute force handles at most 30 elements, got {}",
                sizes.len()
            );
            let total: u64 = sizes.iter().sum();
            ensure!(total < 1 << 20, "brute force handles totals below 2^20, got {total}");
            match solve_partition_bruteforce(&sizes) {
                Some(pick) => {
                    let side = |want: bool| {
                        sizes
                            .iter()
                            .zip(&pick)
                            .filter(|&(_, &p)| p == want)
                            .map(|(s, _)| s.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    };
                    println!("left: {}", side(true));
                    println!("right: {}", side(false));
                    Ok(OK)
                }
                None => {
                    println!("no equal split exists");
                    Ok(infeasible())
                }
            }
        }
    }
}

fn stats(g: &BusGraph) {
    println!("buses {}", g.bus_count());
    println!("connectors {}", g.connector_count());
    println!("incidences {}", g.incidence_count());
    let max_degree = g.connectors.iter().map(|c| c.incident.len()).max().unwrap_or(0);
    println!("max-degree {max_degree}");
    let classes = g.to_multiplicity_encoding().counts.len();
    println!("parallel-classes {classes}");
    for d in validate_graph(g) {
        println!("diagnostic: {d:?}");
    }
}
