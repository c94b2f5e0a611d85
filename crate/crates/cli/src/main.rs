use std::fmt::Display;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lagrep_core::cellular::{classify_surface, homology_of, ClassifyError};
use lagrep_core::classification::check_theorem;
use lagrep_core::complexes::ComplexFile;
use lagrep_core::quiver::{hom_complex, RepresentationFile};
use lagrep_core::{
    Builtin, CellComplex, CochainComplex, CohomologyResult, Execution, QuiverPresentation,
    Representation, SampleConfig, Theorem,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "lagrep",
    version,
    about = "Homology, surface classification and hom complexes of quiver representations"
)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of a cell complex (or cohomology of a cochain complex file).
    Homology {
        /// A JSON file, or builtin:circle | builtin:sphere | builtin:torus | builtin:genus_g:N
        input: String,
    },
    /// Genus of a closed orientable surface given as a cell complex.
    Classify { input: String },
    /// Cohomology of the hom complex between two representations.
    Floer {
        /// A JSON file, or builtin:sphere_zero_section | builtin:torus_zero_section
        first: String,
        second: String,
    },
    /// Run a randomized check of one of the classification statements.
    Verify {
        /// sphere | torus | concentrated
        theorem: Theorem,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long = "max-dim", default_value_t = 3)]
        max_dim: usize,
        /// Evaluate samples on one thread.
        #[arg(long)]
        serial: bool,
    },
}

/// Exit code plus what to print in each output mode.
struct CommandOutcome {
    exit_code: u8,
    text: String,
    payload: Value,
}

impl CommandOutcome {
    fn ok(text: String, payload: Value) -> Self {
        CommandOutcome {
            exit_code: 0,
            text,
            payload,
        }
    }

    fn failure(text: String, payload: Value) -> Self {
        CommandOutcome {
            exit_code: 1,
            text,
            payload,
        }
    }

    fn input_error(message: impl Display) -> Self {
        let message = message.to_string();
        CommandOutcome {
            exit_code: 2,
            text: format!("error: {message}"),
            payload: json!({ "error": message }),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Homology { input } => cmd_homology(&input),
        Command::Classify { input } => cmd_classify(&input),
        Command::Floer { first, second } => cmd_floer(&first, &second),
        Command::Verify {
            theorem,
            seed,
            count,
            max_dim,
            serial,
        } => cmd_verify(theorem, seed, count, max_dim, serial),
    };
    if cli.json {
        println!("{}", outcome.payload);
    } else if outcome.exit_code == 2 {
        eprintln!("{}", outcome.text);
    } else {
        println!("{}", outcome.text.trim_end());
    }
    ExitCode::from(outcome.exit_code)
}

enum HomologyInput {
    Cells(CellComplex),
    Cochain(CochainComplex),
}

fn read_json(path: &str) -> Result<Value, String> {
    let text = std::fs::read_to_string(Path::new(path)).map_err(|e| format!("{path}: {e}"))?;
    serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))
}

fn load_cells_or_complex(input: &str) -> Result<HomologyInput, String> {
    if let Some(name) = input.strip_prefix("builtin:") {
        let b: Builtin = name.parse().map_err(|e| format!("{e}"))?;
        return Ok(HomologyInput::Cells(lagrep_core::cellular::builtin(b)));
    }
    let value = read_json(input)?;
    if value.get("dims").is_some() {
        let file: ComplexFile =
            serde_json::from_value(value).map_err(|e| format!("{input}: {e}"))?;
        let c = file.into_complex().map_err(|e| format!("{input}: {e}"))?;
        Ok(HomologyInput::Cochain(c))
    } else {
        let cc: CellComplex = serde_json::from_value(value).map_err(|e| format!("{input}: {e}"))?;
        Ok(HomologyInput::Cells(cc))
    }
}

fn load_cells(input: &str) -> Result<CellComplex, String> {
    match load_cells_or_complex(input)? {
        HomologyInput::Cells(cc) => Ok(cc),
        HomologyInput::Cochain(_) => Err(format!("{input}: expected a cell complex")),
    }
}

fn load_representation(input: &str) -> Result<Representation, String> {
    if let Some(name) = input.strip_prefix("builtin:") {
        return match name {
            "sphere_zero_section" => Ok(Representation::point(QuiverPresentation::sphere())),
            "torus_zero_section" => Ok(Representation::point(QuiverPresentation::torus())),
            other => Err(format!(
                "unknown builtin representation `{other}` (expected sphere_zero_section or torus_zero_section)"
            )),
        };
    }
    let file: RepresentationFile =
        serde_json::from_value(read_json(input)?).map_err(|e| format!("{input}: {e}"))?;
    let rep = file
        .into_representation()
        .map_err(|e| format!("{input}: {e}"))?;
    rep.validate().map_err(|e| format!("{input}: {e}"))?;
    Ok(rep)
}

/// `"{prefix}{i}={dim}"` for every degree from the lowest to the highest
/// occupied one, zeros included.
fn dims_line(prefix: &str, h: &CohomologyResult, lo: i32, hi: i32) -> String {
    (lo..=hi)
        .map(|i| format!("{prefix}{i}={}", h.dim(i)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn dims_json(h: &CohomologyResult) -> Value {
    serde_json::to_value(h).expect("cohomology serializes")
}

fn cmd_homology(input: &str) -> CommandOutcome {
    let loaded = match load_cells_or_complex(input) {
        Ok(x) => x,
        Err(e) => return CommandOutcome::input_error(e),
    };
    match loaded {
        HomologyInput::Cells(cc) => {
            let h = match homology_of(&cc) {
                Ok(h) => h,
                Err(e) => return CommandOutcome::input_error(e),
            };
            let chi = h.euler_characteristic();
            assert_eq!(
                chi,
                cc.euler_characteristic(),
                "Euler characteristic from cells and from homology disagree"
            );
            let top = cc.cells.iter().map(|c| c.dim as i32).max().unwrap_or(0);
            let line = dims_line("H", &h, 0, top);
            CommandOutcome::ok(
                format!("{line} chi={chi}").trim_start().to_string(),
                json!({ "homology": dims_json(&h), "chi": chi }),
            )
        }
        HomologyInput::Cochain(c) => {
            let h = c.cohomology();
            let chi = c.euler_from_cohomology();
            assert_eq!(
                chi,
                c.euler_from_dims(),
                "Euler characteristic from dimensions and from cohomology disagree"
            );
            let line = match (c.space().min_degree(), c.space().max_degree()) {
                (Some(lo), Some(hi)) => dims_line("H^", &h, lo, hi) + " ",
                _ => String::new(),
            };
            CommandOutcome::ok(
                format!("{line}chi={chi}"),
                json!({ "cohomology": dims_json(&h), "chi": chi }),
            )
        }
    }
}

fn cmd_classify(input: &str) -> CommandOutcome {
    let cc = match load_cells(input) {
        Ok(cc) => cc,
        Err(e) => return CommandOutcome::input_error(e),
    };
    match classify_surface(&cc) {
        Ok(v) => CommandOutcome::ok(
            format!("genus={} chi={}", v.genus, v.euler),
            serde_json::to_value(v).expect("verdict serializes"),
        ),
        Err(ClassifyError::Cell(e)) => CommandOutcome::input_error(e),
        Err(e) => CommandOutcome::failure(
            format!("not a closed orientable surface: {e}"),
            json!({ "error": e.to_string() }),
        ),
    }
}

fn cmd_floer(first: &str, second: &str) -> CommandOutcome {
    let (v, w) = match (load_representation(first), load_representation(second)) {
        (Ok(v), Ok(w)) => (v, w),
        (Err(e), _) | (_, Err(e)) => return CommandOutcome::input_error(e),
    };
    let hom = match hom_complex(&v, &w) {
        Ok(h) => h,
        Err(e) => return CommandOutcome::input_error(e),
    };
    let chi = hom.euler_characteristic();
    match &hom.complex {
        Some(c) => {
            let h = c.cohomology();
            let line = match (h.support().next(), h.support().last()) {
                (Some(lo), Some(hi)) => dims_line("HF", &h, lo, hi) + " ",
                _ => String::new(),
            };
            CommandOutcome::ok(
                format!("{line}chi={chi}"),
                json!({ "hf": dims_json(&h), "chi": chi, "differential_defined": true }),
            )
        }
        None => {
            let generator = v
                .quiver()
                .first_non_closed()
                .map(|g| g.name.clone())
                .unwrap_or_default();
            CommandOutcome::ok(
                format!("chi={chi} (differential not defined: d{generator} != 0)"),
                json!({ "chi": chi, "differential_defined": false }),
            )
        }
    }
}

fn cmd_verify(
    theorem: Theorem,
    seed: u64,
    count: usize,
    max_dim: usize,
    serial: bool,
) -> CommandOutcome {
    let mut cfg = SampleConfig::new(seed, count);
    cfg.max_total_dim = max_dim;
    cfg.execution = if serial {
        Execution::Serial
    } else {
        Execution::Parallel
    };
    match check_theorem(theorem, &cfg) {
        Ok(report) if report.passed() => {
            CommandOutcome::ok(report.render_text(), report_json(&report))
        }
        Ok(report) => CommandOutcome::failure(report.render_text(), report_json(&report)),
        Err(e) => CommandOutcome::input_error(e),
    }
}

fn report_json(report: &lagrep_core::TheoremReport) -> Value {
    serde_json::from_str(&report.to_json()).expect("report is valid JSON")
}
