//! `borromean`: classify rotation subgroups, build subgroups of a given index, export
//! tessellation patches, label axes and run the self-checks.
//!
//! Exit codes: 0 success, 1 malformed input or bad arguments, 2 infinite index,
//! 3 verification inconclusive, 4 a verification suite failed.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use borromean::classify::{classify_with, ClassifyOptions};
use borromean::error::Error as CoreError;
use borromean::families::construct_index;
use borromean::hyperbolic::{label_axis, tessellate, MAX_DEPTH};
use borromean::isometry::IntIsometry;
use borromean::verify::{run, Suite, VerifyOptions};
use borromean::word::{Generator, Word};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(name = "borromean", version, about = "Borromean-rings orbifold groups", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    /// Wavefront OBJ, tessellate only.
    Mesh,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Identify the family member generated by a JSON list of half-turns.
    Classify {
        /// File with the generator list, `-` for standard input, or the JSON itself.
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = ClassifyOptions::default().bfs_depth)]
        bfs_depth: usize,
        /// Translation bound for the enumeration check.
        #[arg(long)]
        window: Option<i64>,
    },
    /// Build a rotation-generated subgroup of index n with its lifts.
    Construct {
        #[arg(allow_negative_numbers = true)]
        n: i64,
    },
    /// Run a verification suite: euclid, families, rectangle, hyperbolic, labels or all.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = VerifyOptions::default().window)]
        window: i64,
        #[arg(long, default_value_t = VerifyOptions::default().bfs_depth)]
        bfs_depth: usize,
        #[arg(long, default_value_t = VerifyOptions::default().depth)]
        depth: usize,
        #[arg(long, default_value_t = VerifyOptions::default().tolerance)]
        tolerance: f64,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
    },
    /// Export the cells within `depth` face crossings of the central dodecahedron.
    Tessellate {
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Eisenstein label of the axis of u·x·u⁻¹.
    Label {
        /// The word u in a, b, c and inverses A, B, C; empty or `e` for the identity.
        word: String,
        /// The generator x.
        base: char,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0} check(s) failed")]
    SuiteFailed(usize),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(CoreError::InfiniteIndex(_)) => 2,
            CliError::Core(CoreError::VerificationInconclusive { .. }) => 3,
            CliError::SuiteFailed(_) => 4,
            _ => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read_input(input: &str) -> Result<String> {
    let trimmed = input.trim_start();
    if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else if trimmed.starts_with('[') || trimmed.starts_with('{') {
        Ok(input.to_string())
    } else {
        fs::read_to_string(input).map_err(|e| CliError::Input(format!("{input}: {e}")))
    }
}

/// Accepts a bare list or an object with a `generators` field.
fn parse_generators(text: &str) -> Result<Vec<IntIsometry>> {
    #[derive(serde::Deserialize)]
    #[serde(untagged)]
    enum Doc {
        List(Vec<IntIsometry>),
        Object { generators: Vec<IntIsometry> },
    }
    let doc: Doc = serde_json::from_str(text).or_else(|_| {
        // the untagged error hides the position, so report the list parse
        serde_json::from_str::<Vec<IntIsometry>>(text)
            .map(Doc::List)
            .map_err(|e| CliError::Input(format!("malformed generator list: {e}")))
    })?;
    let gens = match doc {
        Doc::List(g) | Doc::Object { generators: g } => g,
    };
    if gens.is_empty() {
        return Err(CoreError::NoGenerators.into());
    }
    Ok(gens)
}

enum Output {
    Json(serde_json::Value),
    Text(String),
}

fn emit(out: Output, format: Format, path: Option<&PathBuf>) -> Result<()> {
    let text = match out {
        Output::Json(v) if format == Format::Text => text_of(&v),
        Output::Json(v) => serde_json::to_string_pretty(&v).expect("values serialize") + "\n",
        Output::Text(s) => s,
    };
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// `key: value` lines for the top level of a JSON object.
fn text_of(v: &serde_json::Value) -> String {
    match v.as_object() {
        Some(map) => map
            .iter()
            .map(|(k, v)| match v {
                serde_json::Value::String(s) => format!("{k}: {s}\n"),
                other => format!("{k}: {other}\n"),
            })
            .collect(),
        None => format!("{v}\n"),
    }
}

fn cmd_classify(input: &str, bfs_depth: usize, window: Option<i64>) -> Result<Output> {
    let gens = parse_generators(&read_input(input)?)?;
    log::info!("classifying {} generators", gens.len());
    let r = classify_with(&gens, ClassifyOptions { bfs_depth, window })?;
    Ok(Output::Json(serde_json::to_value(&r).expect("result serializes")))
}

fn cmd_construct(n: i64) -> Result<Output> {
    let h = construct_index(n)?;
    let mut v = serde_json::to_value(&h).expect("subgroup serializes");
    v["index"] = json!(h.index());
    v["lifts"] = json!(h.lift_generators().iter().map(|w| w.to_string()).collect::<Vec<_>>());
    Ok(Output::Json(v))
}

fn cmd_tessellate(depth: usize, format: Format) -> Result<Output> {
    if depth > MAX_DEPTH {
        return Err(CoreError::DepthTooLarge(depth).into());
    }
    let patch = tessellate(depth)?;
    Ok(match format {
        Format::Mesh => Output::Text(patch.to_obj()),
        Format::Text => Output::Text(
            patch
                .cells
                .iter()
                .map(|c| {
                    let w = if c.word.is_empty() { "e".to_string() } else { c.word.to_string() };
                    format!("{w}\tdepth {}\tcube {:?}\n", c.depth, c.cube_center)
                })
                .collect(),
        ),
        Format::Json => Output::Json(patch.to_mesh_json()),
    })
}

fn cmd_label(word: &str, base: char) -> Result<Output> {
    let u: Word = if word == "e" { Word::empty() } else { word.parse()? };
    let g = Generator::from_char(base.to_ascii_lowercase())
        .ok_or_else(|| CliError::Input(format!("base must be a, b or c, got {base:?}")))?;
    let l = label_axis(&u, g)?;
    Ok(Output::Json(json!({ "label": l.to_string(), "u": l.u, "v": l.v })))
}

fn execute(cli: &Cli) -> Result<()> {
    let out = match &cli.command {
        Command::Classify { input, bfs_depth, window } => match cmd_classify(input, *bfs_depth, *window) {
            Err(CliError::Core(CoreError::InfiniteIndex(reason))) => {
                emit(
                    Output::Json(json!({ "infinite_index": true, "reason": reason.to_string() })),
                    cli.format,
                    cli.output.as_ref(),
                )?;
                return Err(CoreError::InfiniteIndex(reason).into());
            }
            Err(CliError::Core(CoreError::VerificationInconclusive { reason, partial })) => {
                emit(
                    Output::Json(json!({ "inconclusive": reason, "partial": partial })),
                    cli.format,
                    cli.output.as_ref(),
                )?;
                return Err(CoreError::VerificationInconclusive { reason, partial }.into());
            }
            other => other?,
        },
        Command::Construct { n } => cmd_construct(*n)?,
        Command::Verify { suite, window, bfs_depth, depth, tolerance, seed } => {
            let suite: Suite = suite.parse()?;
            if *depth > MAX_DEPTH {
                return Err(CoreError::DepthTooLarge(*depth).into());
            }
            let opts = VerifyOptions {
                window: *window,
                bfs_depth: *bfs_depth,
                depth: *depth,
                tolerance: *tolerance,
                seed: *seed,
                ..VerifyOptions::default()
            };
            let report = run(suite, &opts);
            let out = if cli.format == Format::Text {
                Output::Text(report.to_text())
            } else {
                Output::Json(serde_json::to_value(&report).expect("report serializes"))
            };
            emit(out, cli.format, cli.output.as_ref())?;
            let failed = report.failures().count();
            return if failed == 0 { Ok(()) } else { Err(CliError::SuiteFailed(failed)) };
        }
        Command::Tessellate { depth } => cmd_tessellate(*depth, cli.format)?,
        Command::Label { word, base } => cmd_label(word, *base)?,
    };
    if cli.format == Format::Mesh && !matches!(cli.command, Command::Tessellate { .. }) {
        return Err(CliError::Input("--format mesh applies to tessellate only".into()));
    }
    emit(out, cli.format, cli.output.as_ref())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("BORROMEAN_LOG", "warn")).init();
    // clap's own usage errors exit with 2, which is reserved for infinite index here
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
