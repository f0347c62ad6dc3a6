//! `starcheck`: checkerboard embeddings of ∗-graphs into nonorientable
//! surfaces.
//!
//! Exit codes: 0 = yes / success, 1 = no, 2 = error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use starcheck_core::chord_model::{build_star_chord_diagram, expand, SignedChordDiagram};
use starcheck_core::circuits::build_rotating_splitting_circuit;
use starcheck_core::fast_tests::{
    klein_on_expansion, rp2_on_expansion, DiscMethod, KleinOptions, NegativeChordChoice,
};
use starcheck_core::format::{
    parse_diagram, parse_graph, write_circuit, write_diagram, write_star_diagram,
};
use starcheck_core::genus_solver::{expansion_for, genus_spectrum, Partition};
use starcheck_core::report;
use starcheck_core::star_graph::StarGraph;
use starcheck_core::verify::oracle_sweep;
use starcheck_core::Error;

#[derive(Parser)]
#[command(
    name = "starcheck",
    version,
    about = "Checkerboard embeddings of *-graphs into nonorientable surfaces"
)]
struct Cli {
    /// Print a JSON report (schema 1) instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a graph file.
    Check { graph: PathBuf },
    /// Print the rotating-splitting circuit.
    Circuit { graph: PathBuf },
    /// Print the signed star chord diagram along the circuit.
    Diagram { graph: PathBuf },
    /// Print the expanded signed chord diagram.
    Expand { graph: PathBuf },
    /// Decide whether nonorientable genus `g` is achievable.
    Genus {
        #[arg(long = "g", value_name = "K")]
        g: usize,
        graph: PathBuf,
    },
    /// Print every achievable nonorientable genus with a witness separation.
    Spectrum { graph: PathBuf },
    /// Decide projective-plane embeddability with the fast test.
    Rp2 {
        input: PathBuf,
        /// Read a chord diagram file instead of a graph file.
        #[arg(long)]
        diagram: bool,
    },
    /// Decide Klein-bottle embeddability with the fast test.
    Klein {
        input: PathBuf,
        /// Read a chord diagram file instead of a graph file.
        #[arg(long)]
        diagram: bool,
        #[arg(long, value_enum, default_value_t = DiscArg::Exact)]
        disc_method: DiscArg,
        /// Negative chords tried by the mobius-propagation disc method.
        #[arg(long, value_enum, default_value_t = ChoiceArg::Every)]
        negative_chord: ChoiceArg,
    },
    /// Compare the rank pipeline and fast tests with direct cell tracing on
    /// random graphs.
    OracleVerify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_vertices: usize,
        #[arg(long, value_enum, default_value_t = DiscArg::Exact)]
        disc_method: DiscArg,
        /// Write each mismatching graph to this directory.
        #[arg(long, value_name = "DIR")]
        reproducers: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DiscArg {
    Exact,
    MobiusPropagation,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChoiceArg {
    Every,
    First,
}

fn klein_options(method: DiscArg, choice: ChoiceArg) -> KleinOptions {
    KleinOptions {
        method: match method {
            DiscArg::Exact => DiscMethod::Exact,
            DiscArg::MobiusPropagation => DiscMethod::MobiusPropagation,
        },
        choice: match choice {
            ChoiceArg::Every => NegativeChordChoice::Every,
            ChoiceArg::First => NegativeChordChoice::First,
        },
    }
}

/// Result of a command: its report, text form and exit code.
struct Outcome {
    json: Value,
    text: String,
    code: u8,
}

impl Outcome {
    fn success(json: Value, text: String) -> Self {
        Outcome {
            json,
            text,
            code: 0,
        }
    }

    fn decision(json: Value, text: String, yes: bool) -> Self {
        Outcome {
            json,
            text,
            code: if yes { 0 } else { 1 },
        }
    }
}

/// Failures: pipeline errors keep their kind for the JSON report.
enum Failure {
    Pipeline { path: Option<PathBuf>, error: Error },
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

fn at(path: &Path) -> impl FnOnce(Error) -> Failure + '_ {
    move |error| Failure::Pipeline {
        path: Some(path.to_owned()),
        error,
    }
}

fn pipeline(error: Error) -> Failure {
    Failure::Pipeline { path: None, error }
}

fn read(path: &Path) -> Result<String, Failure> {
    Ok(fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?)
}

fn load_graph(path: &Path) -> Result<StarGraph, Failure> {
    parse_graph(&read(path)?).map_err(at(path))
}

fn load_expansion(path: &Path, diagram: bool) -> Result<SignedChordDiagram, Failure> {
    if diagram {
        return parse_diagram(&read(path)?).map_err(at(path));
    }
    let g = load_graph(path)?;
    let circuit = build_rotating_splitting_circuit(&g).map_err(pipeline)?;
    Ok(expansion_for(&g, &circuit).map_err(pipeline)?.diagram)
}

fn sides(p: &Partition) -> String {
    p.sides.iter().map(|s| format!("{s:?}")).collect()
}

fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Check { graph } => {
            let g = load_graph(graph)?;
            let r = report::check_report(&g);
            let text = format!(
                "valid: {} vertices ({} of degree 4, {} of degree 6), {} edges, {}\n",
                g.vertex_count(),
                r["degree_4"],
                r["degree_6"],
                g.edges().len(),
                if g.is_connected() {
                    "connected"
                } else {
                    "disconnected"
                }
            );
            let yes = g.is_connected();
            Ok(Outcome::decision(r, text, yes))
        }
        Command::Circuit { graph } => {
            let g = load_graph(graph)?;
            let c = build_rotating_splitting_circuit(&g).map_err(pipeline)?;
            let text = write_circuit(&g, &c).map_err(pipeline)? + "\n";
            Ok(Outcome::success(
                report::circuit_report(&g, &c).map_err(pipeline)?,
                text,
            ))
        }
        Command::Diagram { graph } => {
            let g = load_graph(graph)?;
            let c = build_rotating_splitting_circuit(&g).map_err(pipeline)?;
            let d = build_star_chord_diagram(&g, &c).map_err(pipeline)?;
            Ok(Outcome::success(
                report::star_diagram_report(&g, &d),
                write_star_diagram(&g, &d),
            ))
        }
        Command::Expand { graph } => {
            let g = load_graph(graph)?;
            let c = build_rotating_splitting_circuit(&g).map_err(pipeline)?;
            let x =
                expand(&build_star_chord_diagram(&g, &c).map_err(pipeline)?).map_err(pipeline)?;
            Ok(Outcome::success(
                report::expansion_report(&x),
                write_diagram(&x.diagram),
            ))
        }
        Command::Genus { g: k, graph } => {
            let r = genus_spectrum(&load_graph(graph)?).map_err(pipeline)?;
            let yes = r.spectrum.contains(k);
            let text = if yes {
                "achievable\n"
            } else {
                "not achievable\n"
            };
            Ok(Outcome::decision(
                report::genus_report(*k, &r),
                text.into(),
                yes,
            ))
        }
        Command::Spectrum { graph } => {
            let r = genus_spectrum(&load_graph(graph)?).map_err(pipeline)?;
            let mut text = format!(
                "spectrum: {}\n",
                r.spectrum
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            for (g, p) in &r.witnesses {
                text += &format!("witness {g}: {}\n", sides(p));
            }
            Ok(Outcome::success(report::spectrum_report(&r), text))
        }
        Command::Rp2 { input, diagram } => {
            let v = rp2_on_expansion(&load_expansion(input, *diagram)?).map_err(pipeline)?;
            let mut text = String::from(if v.embeddable {
                "embeddable\n"
            } else {
                "not embeddable\n"
            });
            if let Some(p) = &v.witness {
                text += &format!("witness: {}\n", sides(p));
            }
            Ok(Outcome::decision(
                report::rp2_report(&v),
                text,
                v.embeddable,
            ))
        }
        Command::Klein {
            input,
            diagram,
            disc_method,
            negative_chord,
        } => {
            let d = load_expansion(input, *diagram)?;
            let v = klein_on_expansion(&d, klein_options(*disc_method, *negative_chord))
                .map_err(pipeline)?;
            let mut text = String::from(if v.embeddable {
                "embeddable\n"
            } else {
                "not embeddable\n"
            });
            if let Some(p) = v.witness() {
                text += &format!("witness: {}\n", sides(p));
            }
            Ok(Outcome::decision(
                report::klein_report(&v),
                text,
                v.embeddable,
            ))
        }
        Command::OracleVerify {
            seed,
            count,
            max_vertices,
            disc_method,
            reproducers,
        } => {
            if *max_vertices == 0 {
                return Err(anyhow::anyhow!("--max-vertices must be at least 1").into());
            }
            let options = klein_options(*disc_method, ChoiceArg::Every);
            let r = oracle_sweep(*seed, *count, *max_vertices, options).map_err(pipeline)?;
            if let Some(dir) = reproducers {
                fs::create_dir_all(dir)
                    .with_context(|| format!("cannot create {}", dir.display()))?;
                for (i, m) in r.mismatches.iter().enumerate() {
                    let path = dir.join(format!("mismatch_{i:04}.star"));
                    let body = format!("# {}: {}\n{}", m.check, m.detail, m.graph);
                    fs::write(&path, body)
                        .with_context(|| format!("cannot write {}", path.display()))?;
                }
            }
            let mut text = format!(
                "seed {}: {} graphs, {} nonorientable, {} colorings, {} partitions, {} mismatches\n",
                r.seed,
                r.graphs,
                r.gated,
                r.colorings,
                r.partitions,
                r.mismatches.len()
            );
            for m in &r.mismatches {
                text += &format!("mismatch in {}: {}\n{}", m.check, m.detail, m.graph);
            }
            let json = report::envelope(
                "oracle-verify",
                json!({
                    "seed": r.seed,
                    "count": count,
                    "max_vertices": max_vertices,
                    "graphs": r.graphs,
                    "nonorientable": r.gated,
                    "colorings": r.colorings,
                    "partitions": r.partitions,
                    "mismatches": r.mismatches.iter().map(|m| json!({
                        "check": m.check, "detail": m.detail, "graph": m.graph,
                    })).collect::<Vec<_>>(),
                }),
            );
            let clean = r.mismatches.is_empty();
            Ok(Outcome::decision(json, text, clean))
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Circuit { .. } => "circuit",
        Command::Diagram { .. } => "diagram",
        Command::Expand { .. } => "expand",
        Command::Genus { .. } => "genus",
        Command::Spectrum { .. } => "spectrum",
        Command::Rp2 { .. } => "rp2",
        Command::Klein { .. } => "klein",
        Command::OracleVerify { .. } => "oracle-verify",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match run(&cli.command) {
        Ok(outcome) => {
            if cli.json {
                print!("{}", report::render(&outcome.json));
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.code)
        }
        Err(Failure::Pipeline { path, error }) => {
            let prefix = path
                .map(|p| format!("{}: ", p.display()))
                .unwrap_or_default();
            eprintln!("error: {prefix}{error}");
            if cli.json {
                print!("{}", report::render(&report::error_report(name, &error)));
            }
            ExitCode::from(2)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            if cli.json {
                let body = json!({ "error": { "kind": "io", "message": format!("{e:#}") } });
                print!("{}", report::render(&report::envelope(name, body)));
            }
            ExitCode::from(2)
        }
    }
}
