//! Command-line front end: generation, verification, existence decisions,
//! cycle decomposition, census tables, constructive paths, and DOT export.
//!
//! Exit codes: 0 success, 1 failed verification, 2 proven non-existence,
//! 64 invalid arguments, 70 internal inconsistency, 74 output I/O failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ucycle::classes::{ClassName, ClassSpec};
use ucycle::error::Error;
use ucycle::graph::{verify_ucycle, ExistenceVerdict, TransitionGraph, Witness};
use ucycle::word::Word;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "ucycle", version, about = "Universal cycles of function classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args)]
struct SpecArgs {
    /// Class name: all-words, injective, onto, equitable, one-inequitable
    #[arg(long)]
    class: String,
    /// Word length
    #[arg(long)]
    k: usize,
    /// Alphabet size
    #[arg(long)]
    n: u8,
}

impl SpecArgs {
    fn parse(&self) -> Result<ClassSpec, Error> {
        let class: ClassName = self.class.parse()?;
        ClassSpec::new(class, self.k, self.n)
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Write output to a file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a U-cycle, or report proven non-existence (exit 2)
    Generate {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check that a candidate word is a U-cycle of the class
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Candidate cyclic word
        #[arg(long)]
        input: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide U-cycle existence and report the reason/witness
    Exists {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decompose a 1-regular transition graph into cycles
    Decompose {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cycle-census table for the equitable graphs, k = 2, 4, ..., max-k
    Census {
        #[arg(long = "max-k")]
        max_k: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Construct an explicit vertex path (onto and one-inequitable classes)
    Path {
        #[command(flatten)]
        spec: SpecArgs,
        /// Start vertex, a length-(k-1) word
        #[arg(long)]
        source: String,
        /// End vertex, a length-(k-1) word
        #[arg(long)]
        target: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write the transition graph in Graphviz DOT form
    ExportDot {
        #[command(flatten)]
        spec: SpecArgs,
        /// Write output to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap reserves exit 2; the contract here is 64 for bad usage
            // (--help/--version still exit 0)
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::InternalConsistency(_) | Error::NotEulerian(_) => 70,
                _ => 64,
            };
            ExitCode::from(code)
        }
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> u8 {
    let result = match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            74
        }
    }
}

fn finish(text: String, out: &Option<PathBuf>, code: u8) -> u8 {
    match emit(&text, out) {
        0 => code,
        io => io,
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Generate { spec, output } => generate(&spec.parse()?, &output),
        Command::Verify { spec, input, output } => verify(&spec.parse()?, &input, &output),
        Command::Exists { spec, output } => exists(&spec.parse()?, &output),
        Command::Decompose { spec, output } => decompose(&spec.parse()?, &output),
        Command::Census { max_k, output } => census_cmd(max_k, &output),
        Command::Path { spec, source, target, output } => {
            path_cmd(&spec.parse()?, &source, &target, &output)
        }
        Command::ExportDot { spec, out } => {
            let graph = TransitionGraph::build(&spec.parse()?)?;
            Ok(finish(graph.to_dot(), &out, 0))
        }
    }
}

fn witness_json(witness: &Option<Witness>) -> serde_json::Value {
    match witness {
        None => serde_json::Value::Null,
        Some(Witness::SeparateComponents(a, b)) => json!({
            "type": "separate-components",
            "first": a.to_string(),
            "second": b.to_string(),
        }),
        Some(Witness::Unbalanced(u)) => json!({
            "type": "unbalanced",
            "vertex": u.vertex.to_string(),
            "in_degree": u.in_degree,
            "out_degree": u.out_degree,
        }),
    }
}

fn witness_text(witness: &Option<Witness>) -> String {
    match witness {
        None => String::new(),
        Some(Witness::SeparateComponents(a, b)) => {
            format!("witness: vertices {a} and {b} lie in different components\n")
        }
        Some(Witness::Unbalanced(u)) => format!(
            "witness: vertex {} has in-degree {} but out-degree {}\n",
            u.vertex, u.in_degree, u.out_degree
        ),
    }
}

fn generate(spec: &ClassSpec, output: &OutputArgs) -> Result<u8, Error> {
    let verdict = match TransitionGraph::build(spec) {
        Ok(graph) => {
            let verdict = graph.existence();
            if verdict.exists {
                let cycle = graph.eulerian_circuit()?;
                let text = match output.format {
                    OutputFormat::Text => format!("{}\n", cycle.word()),
                    OutputFormat::Json => format!(
                        "{}\n",
                        json!({
                            "schema_version": SCHEMA_VERSION,
                            "command": "generate",
                            "class": spec.class().as_str(),
                            "k": spec.k(),
                            "n": spec.n(),
                            "exists": true,
                            "length": cycle.len(),
                            "cycle": cycle.word().to_string(),
                        })
                    ),
                };
                return Ok(finish(text, &output.out, 0));
            }
            verdict
        }
        Err(Error::EmptyClass) => ExistenceVerdict {
            spec: *spec,
            exists: false,
            reason: ucycle::VerdictReason::EmptyClass,
            witness: None,
        },
        Err(e) => return Err(e),
    };
    let text = match output.format {
        OutputFormat::Text => format!(
            "no U-cycle exists for {spec}\nreason: {}\n{}",
            verdict.reason.as_str(),
            witness_text(&verdict.witness)
        ),
        OutputFormat::Json => format!(
            "{}\n",
            json!({
                "schema_version": SCHEMA_VERSION,
                "command": "generate",
                "class": spec.class().as_str(),
                "k": spec.k(),
                "n": spec.n(),
                "exists": false,
                "reason": verdict.reason.as_str(),
                "witness": witness_json(&verdict.witness),
            })
        ),
    };
    Ok(finish(text, &output.out, 2))
}

fn verify(spec: &ClassSpec, input: &str, output: &OutputArgs) -> Result<u8, Error> {
    let candidate = Word::parse(input, spec.n())?;
    let report = verify_ucycle(spec, &candidate)?;
    let text = match output.format {
        OutputFormat::Text => {
            let mut t = format!(
                "valid: {}\nexpected length: {}\nactual length: {}\n",
                report.ok, report.expected_length, report.actual_length
            );
            if !report.missing.is_empty() {
                let shown: Vec<String> = report.missing.iter().map(|w| w.to_string()).collect();
                t.push_str(&format!("missing: {}\n", shown.join(" ")));
            }
            if !report.duplicated.is_empty() {
                let shown: Vec<String> =
                    report.duplicated.iter().map(|(w, c)| format!("{w} (x{c})")).collect();
                t.push_str(&format!("duplicated: {}\n", shown.join(" ")));
            }
            t
        }
        OutputFormat::Json => format!(
            "{}\n",
            json!({
                "schema_version": SCHEMA_VERSION,
                "command": "verify",
                "class": spec.class().as_str(),
                "k": spec.k(),
                "n": spec.n(),
                "valid": report.ok,
                "expected_length": report.expected_length,
                "actual_length": report.actual_length,
                "missing": report.missing.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "duplicated": report.duplicated.iter().map(|(w, c)| json!({
                    "word": w.to_string(),
                    "count": c,
                })).collect::<Vec<_>>(),
            })
        ),
    };
    Ok(finish(text, &output.out, if report.ok { 0 } else { 1 }))
}

fn exists(spec: &ClassSpec, output: &OutputArgs) -> Result<u8, Error> {
    let verdict = ucycle::decide_existence(spec)?;
    let text = match output.format {
        OutputFormat::Text => format!(
            "exists: {}\nreason: {}\n{}",
            verdict.exists,
            verdict.reason.as_str(),
            witness_text(&verdict.witness)
        ),
        OutputFormat::Json => format!(
            "{}\n",
            json!({
                "schema_version": SCHEMA_VERSION,
                "command": "exists",
                "class": spec.class().as_str(),
                "k": spec.k(),
                "n": spec.n(),
                "exists": verdict.exists,
                "reason": verdict.reason.as_str(),
                "witness": witness_json(&verdict.witness),
            })
        ),
    };
    Ok(finish(text, &output.out, 0))
}

fn decompose(spec: &ClassSpec, output: &OutputArgs) -> Result<u8, Error> {
    let graph = TransitionGraph::build(spec)?;
    let d = graph.decompose_cycles()?;
    let text = match output.format {
        OutputFormat::Text => {
            let mut t = format!("total cycles: {}\n", d.total_cycles);
            for (len, count) in &d.length_histogram {
                t.push_str(&format!("length {len}: {count}\n"));
            }
            t
        }
        OutputFormat::Json => format!(
            "{}\n",
            json!({
                "schema_version": SCHEMA_VERSION,
                "command": "decompose",
                "class": spec.class().as_str(),
                "k": spec.k(),
                "n": spec.n(),
                "total_cycles": d.total_cycles,
                "length_histogram": d.length_histogram.iter()
                    .map(|(len, count)| (len.to_string(), json!(count)))
                    .collect::<serde_json::Map<_, _>>(),
            })
        ),
    };
    Ok(finish(text, &output.out, 0))
}

fn census_cmd(max_k: usize, output: &OutputArgs) -> Result<u8, Error> {
    let table = ucycle::census_table(max_k)?;
    let text = match output.format {
        OutputFormat::Text => {
            let mut t = format!("{:>4} {:>16} {:>12} {:>12}\n", "k", "C(k,k/2)", "a_k", "b_k");
            for r in &table {
                t.push_str(&format!(
                    "{:>4} {:>16} {:>12} {:>12}\n",
                    r.k,
                    r.equitable_count.to_string(),
                    r.a_k.to_string(),
                    r.b_k.to_string()
                ));
            }
            t
        }
        OutputFormat::Json => format!(
            "{}\n",
            json!({
                "schema_version": SCHEMA_VERSION,
                "command": "census",
                "reports": table.iter().map(|r| json!({
                    "k": r.k,
                    "equitable_count": r.equitable_count.to_string(),
                    "a_k": r.a_k.to_string(),
                    "b_k": r.b_k.to_string(),
                    "divisor_detail": r.divisor_detail.iter()
                        .map(|(d, b)| (d.to_string(), json!(b.to_string())))
                        .collect::<serde_json::Map<_, _>>(),
                })).collect::<Vec<_>>(),
            })
        ),
    };
    Ok(finish(text, &output.out, 0))
}

fn path_cmd(spec: &ClassSpec, source: &str, target: &str, output: &OutputArgs) -> Result<u8, Error> {
    let source = Word::parse(source, spec.n())?;
    let target = Word::parse(target, spec.n())?;
    let trace = match spec.class() {
        ClassName::Onto => ucycle::connect_onto(&source, &target, spec)?,
        ClassName::OneInequitable => ucycle::connect_inequitable(&source, &target, spec)?,
        other => {
            return Err(Error::InvalidArgument(format!(
                "path construction is only defined for onto and one-inequitable classes, not {other}"
            )))
        }
    };
    let text = match output.format {
        OutputFormat::Text => {
            let mut t = String::new();
            for (step, phase) in trace.steps.iter().zip(&trace.phases) {
                t.push_str(&format!("{step}  {phase}\n"));
            }
            t
        }
        OutputFormat::Json => format!(
            "{}\n",
            json!({
                "schema_version": SCHEMA_VERSION,
                "command": "path",
                "class": spec.class().as_str(),
                "k": spec.k(),
                "n": spec.n(),
                "steps": trace.steps.iter().zip(&trace.phases).map(|(step, phase)| json!({
                    "word": step.to_string(),
                    "phase": phase.as_str(),
                })).collect::<Vec<_>>(),
            })
        ),
    };
    Ok(finish(text, &output.out, 0))
}
