//! Command-line front end over the kirbycalc library.
//!
//! Every invocation prints exactly one `CommandResult` JSON document to
//! standard output and mirrors its diagnostics to standard error. Exit
//! codes are a stable contract: 0 when the command's checks pass, 1
//! when a requested check fails, 2 on usage or input errors.
//!
//! Inputs are file paths, with `-` standing for standard input.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use kirbycalc::family;
use kirbycalc::{cover, polygon, Diagram, Int, Seifert};

#[derive(Parser)]
#[command(name = "kirbycalc", version, about = "Exact surgery diagram and covering calculations")]
struct Cli {
    /// Print compact single-line JSON instead of pretty-printed JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Operations on Seifert fiber descriptions.
    Seifert {
        #[command(subcommand)]
        op: SeifertOp,
    },
    /// Operations on plumbing forest diagrams.
    Diagram {
        #[command(subcommand)]
        op: DiagramOp,
    },
    /// Family members, their reduction pipeline, and the check report.
    Family {
        /// Family index, at least 1.
        n: u32,
        /// Run every check and report the outcomes; exits 0 only if all pass.
        #[arg(long, conflicts_with = "pipeline")]
        verify: bool,
        /// Run the diagram reduction pipeline and print its trace.
        #[arg(long)]
        pipeline: bool,
    },
    /// Orbit counts in cyclic branched covers.
    Cover {
        #[command(subcommand)]
        op: CoverOp,
    },
}

#[derive(Subcommand)]
enum SeifertOp {
    /// Exact Euler number of a description.
    Euler {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Canonical normal form.
    Normalize {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Whether two descriptions present the same fibered space.
    Eq { first: String, second: String },
    /// First homology of the described space.
    H1 {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Recognize the three-sphere from a two-fiber description.
    S3 {
        #[arg(default_value = "-")]
        input: String,
    },
}

#[derive(Subcommand)]
enum DiagramOp {
    /// First homology presented by the framing matrix.
    H1 {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Cancel a 0-framed meridian against its target component.
    Cancel {
        /// Vertex id of the meridian.
        #[arg(long)]
        vertex: String,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Band a 0-framed unknot into its two neighbors.
    Band {
        /// Vertex id of the 0-framed component.
        #[arg(long)]
        vertex: String,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Slam-dunk a leaf into its neighbor.
    Dunk {
        /// Vertex id of the leaf.
        #[arg(long)]
        vertex: String,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Expand a rational framing into an integer chain.
    Expand {
        /// Vertex id carrying the rational framing.
        #[arg(long)]
        vertex: String,
        #[arg(default_value = "-")]
        input: String,
    },
    /// Split a diagram into its connected summands.
    Split {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Read Seifert invariants off a star-shaped diagram.
    ToSeifert {
        #[arg(default_value = "-")]
        input: String,
    },
    /// Render the diagram as Graphviz DOT text.
    Dot {
        #[arg(default_value = "-")]
        input: String,
    },
}

#[derive(Subcommand)]
enum CoverOp {
    /// Lift of the separating curve for the n-th family member.
    Lambda {
        #[arg(long)]
        n: u32,
    },
    /// Preimage counts over a disk with two cone points.
    Disk {
        /// Covering degree.
        #[arg(long)]
        d: u64,
        /// First cone order.
        #[arg(long)]
        a: u64,
        /// Second cone order.
        #[arg(long)]
        b: u64,
        /// Unit at the first cone point.
        #[arg(long, default_value_t = 1)]
        unit_a: u64,
        /// Unit at the second cone point.
        #[arg(long, default_value_t = 1)]
        unit_b: u64,
    },
    /// Polygon identification model of the n-th closed fiber surface.
    Polygon {
        #[arg(long)]
        n: u32,
        /// Also write the edge pairing table as CSV to this path.
        #[arg(long)]
        pairs_csv: Option<PathBuf>,
    },
    /// Fiber counts of a torus knot from its rotation description.
    Torus {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        q: u64,
    },
}

#[derive(Serialize)]
struct CommandResult<'a> {
    status: &'a str,
    payload: Value,
    diagnostics: &'a [String],
}

enum Outcome {
    Pass(Value),
    Fail(Value),
}

use Outcome::{Fail, Pass};

fn read_source(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading standard input")?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn read_seifert(path: &str) -> anyhow::Result<Seifert> {
    let text = read_source(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing Seifert description from {path}"))
}

fn read_diagram(path: &str) -> anyhow::Result<Diagram> {
    let text = read_source(path)?;
    serde_json::from_str(&text).with_context(|| format!("parsing diagram from {path}"))
}

fn to_value<T: Serialize>(x: &T) -> anyhow::Result<Value> {
    Ok(serde_json::to_value(x)?)
}

fn run(command: Command, diagnostics: &mut Vec<String>) -> anyhow::Result<Outcome> {
    match command {
        Command::Seifert { op } => run_seifert(op),
        Command::Diagram { op } => run_diagram(op),
        Command::Family { n, verify, pipeline } => run_family(n, verify, pipeline, diagnostics),
        Command::Cover { op } => run_cover(op, diagnostics),
    }
}

fn run_seifert(op: SeifertOp) -> anyhow::Result<Outcome> {
    match op {
        SeifertOp::Euler { input } => {
            let s = read_seifert(&input)?;
            Ok(Pass(Value::String(s.euler_number().to_string())))
        }
        SeifertOp::Normalize { input } => {
            let s = read_seifert(&input)?;
            Ok(Pass(to_value(&s.normalize())?))
        }
        SeifertOp::Eq { first, second } => {
            if first == "-" && second == "-" {
                bail!("only one of the two descriptions can come from standard input");
            }
            let a = read_seifert(&first)?;
            let b = read_seifert(&second)?;
            let payload = serde_json::json!({
                "equal": a.is_equivalent(&b),
                "first": to_value(&a.normalize())?,
                "second": to_value(&b.normalize())?,
            });
            if a.is_equivalent(&b) {
                Ok(Pass(payload))
            } else {
                Ok(Fail(payload))
            }
        }
        SeifertOp::H1 { input } => {
            let s = read_seifert(&input)?;
            Ok(Pass(Value::String(s.first_homology().to_string())))
        }
        SeifertOp::S3 { input } => {
            let s = read_seifert(&input)?;
            let is_s3 = s.recognize_s3()?;
            let payload = serde_json::json!({ "is_s3": is_s3 });
            if is_s3 {
                Ok(Pass(payload))
            } else {
                Ok(Fail(payload))
            }
        }
    }
}

fn run_diagram(op: DiagramOp) -> anyhow::Result<Outcome> {
    match op {
        DiagramOp::H1 { input } => {
            let d = read_diagram(&input)?;
            Ok(Pass(Value::String(d.first_homology().to_string())))
        }
        DiagramOp::Cancel { vertex, input } => {
            let d = read_diagram(&input)?;
            Ok(Pass(to_value(&d.move_cancel(&vertex)?)?))
        }
        DiagramOp::Band { vertex, input } => {
            let d = read_diagram(&input)?;
            Ok(Pass(to_value(&d.move_band(&vertex)?)?))
        }
        DiagramOp::Dunk { vertex, input } => {
            let d = read_diagram(&input)?;
            Ok(Pass(to_value(&d.move_slam_dunk(&vertex)?)?))
        }
        DiagramOp::Expand { vertex, input } => {
            let d = read_diagram(&input)?;
            let expanded = d.expand_leaf(&vertex)?;
            Ok(Pass(serde_json::json!({
                "changed": expanded.changed,
                "diagram": to_value(&expanded.diagram)?,
            })))
        }
        DiagramOp::Split { input } => {
            let d = read_diagram(&input)?;
            Ok(Pass(to_value(&d.split_summands())?))
        }
        DiagramOp::ToSeifert { input } => {
            let d = read_diagram(&input)?;
            Ok(Pass(to_value(&d.to_seifert()?)?))
        }
        DiagramOp::Dot { input } => {
            let d = read_diagram(&input)?;
            Ok(Pass(Value::String(d.to_dot())))
        }
    }
}

fn run_family(
    n: u32,
    verify: bool,
    pipeline: bool,
    diagnostics: &mut Vec<String>,
) -> anyhow::Result<Outcome> {
    if verify {
        let report = family::verify_family::<Int>(n)?;
        let all = report.all_passed();
        for check in report.checks.iter().filter(|c| !c.pass) {
            diagnostics.push(format!("check failed: {} ({})", check.name, check.witness));
        }
        let payload = to_value(&report)?;
        return Ok(if all { Pass(payload) } else { Fail(payload) });
    }
    if pipeline {
        let outcome = family::split_pipeline::<Int>(n)?;
        return Ok(Pass(to_value(&outcome)?));
    }
    let payload = serde_json::json!({
        "n": n,
        "y_n": to_value(&family::y_n::<Int>(n)?)?,
        "z_n": to_value(&family::z_n::<Int>(n)?)?,
        "a_n": to_value(&family::a_n::<Int>(n)?)?,
        "m_n": to_value(&family::m_n::<Int>(n)?)?,
    });
    Ok(Pass(payload))
}

fn run_cover(op: CoverOp, diagnostics: &mut Vec<String>) -> anyhow::Result<Outcome> {
    match op {
        CoverOp::Lambda { n } => Ok(Pass(to_value(&cover::lambda_lift(n)?)?)),
        CoverOp::Disk { d, a, b, unit_a, unit_b } => {
            let counts = cover::disk_side_counts(d, a, b, unit_a, unit_b)?;
            if !counts.matches_claimed_gcd {
                diagnostics.push(format!(
                    "per-component circle count {} differs from gcd({a}, {b}) = {}",
                    counts.per_component,
                    cover::boundary_components(a, b)
                ));
            }
            Ok(Pass(to_value(&counts)?))
        }
        CoverOp::Polygon { n, pairs_csv } => {
            let surface = polygon::polygon_surface(n)?;
            if let Some(path) = pairs_csv {
                let table = polygon::edge_pairing_csv(n)?;
                std::fs::write(&path, table)
                    .with_context(|| format!("writing {}", path.display()))?;
                diagnostics.push(format!("wrote edge pairing table to {}", path.display()));
            }
            Ok(Pass(to_value(&surface)?))
        }
        CoverOp::Torus { p, q } => Ok(Pass(to_value(&cover::torus_knot_fiber(p, q)?)?)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut diagnostics = Vec::new();
    let (status, payload, code) = match run(cli.command, &mut diagnostics) {
        Ok(Pass(payload)) => ("pass", payload, 0),
        Ok(Fail(payload)) => ("fail", payload, 1),
        Err(e) => {
            diagnostics.push(format!("{e:#}"));
            ("error", Value::Null, 2)
        }
    };
    let result = CommandResult { status, payload, diagnostics: &diagnostics };
    let rendered = if cli.json {
        serde_json::to_string(&result)
    } else {
        serde_json::to_string_pretty(&result)
    }
    .expect("result serializes");
    println!("{rendered}");
    for line in &diagnostics {
        eprintln!("{line}");
    }
    ExitCode::from(code)
}
