//! Argument parsing, input hashing and report output.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use crmoser::models::{CoeffJson, FamilyName, ModelDescriptor};
use crmoser::number::parse_rational;
use crmoser::FormKind;
use serde_json::{json, Value};

use crate::census::CensusConfig;
use crate::commands::{self, Outcome, VerifyInput};
use crate::error::CliError;
use crate::report::{envelope, InputHash};

#[derive(Debug, Parser)]
#[command(name = "crmoser", version, about = "Exact computations for real hypersurfaces in normal form")]
pub struct Cli {
    /// Write the JSON report to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the trace conditions of the normal form.
    Check(SurfaceArgs),
    /// Dimension and basis of the linear stability algebra.
    Stabdim(SurfaceArgs),
    /// Classify the stability dimension and check the dimension gap.
    Classify(SurfaceArgs),
    /// Verify an automorphism: a jet map, quadric parameters, or a scaled map of a model.
    Verify(VerifyArgs),
    /// Build a model surface.
    Model(ModelArgs),
    /// Random census of normal-form surfaces.
    Census(CensusArgs),
}

#[derive(Debug, Args)]
pub struct SurfaceArgs {
    #[arg(long, value_name = "FILE")]
    pub surface: PathBuf,
    #[arg(long, value_name = "INT")]
    pub max_weight: Option<u32>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_name = "FILE", conflicts_with_all = ["model", "scaled"])]
    pub surface: Option<PathBuf>,
    #[arg(long, value_name = "INT")]
    pub max_weight: Option<u32>,
    /// Jet map JSON `{"D", "f", "g"}`.
    #[arg(long, value_name = "FILE", requires = "surface", conflicts_with = "params")]
    pub map: Option<PathBuf>,
    /// Parameters JSON `{"U", "a", "lambda", "sigma", "r"}` of a quadric automorphism.
    #[arg(long, value_name = "FILE", requires = "surface")]
    pub params: Option<PathBuf>,
    /// Jet order used with --params.
    #[arg(long, value_name = "INT", default_value_t = 10, requires = "params")]
    pub degree: u32,
    /// Highest weight checked (default: the jet order).
    #[arg(long, value_name = "INT")]
    pub weight: Option<u32>,
    /// Model descriptor JSON.
    #[arg(long, value_name = "FILE", requires = "scaled")]
    pub model: Option<PathBuf>,
    /// Scaled S-element JSON `{"s", "mu", "c", "x", "A"}`.
    #[arg(long, value_name = "FILE", requires = "model")]
    pub scaled: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Model descriptor JSON; replaces the other flags.
    #[arg(long, value_name = "FILE", conflicts_with_all = ["family", "n", "m", "s", "sign", "kind", "coeffs"])]
    pub model: Option<PathBuf>,
    /// umbilic, theorem1, theorem2 or corollary2.
    #[arg(long, value_parser = parse_family, required_unless_present = "model")]
    pub family: Option<FamilyName>,
    #[arg(long, required_unless_present = "model")]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub sign: Option<i8>,
    #[arg(long, value_parser = parse_kind)]
    pub kind: Option<FormKind>,
    /// JSON array of `{"r", "p", "q", "k", "c"}` coefficients.
    #[arg(long)]
    pub coeffs: Option<String>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    /// Values of n, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    /// Values of m, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub m: Vec<usize>,
    /// Samples per (n, m) pair.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_name = "INT", default_value_t = 10)]
    pub max_weight: u32,
    /// Coefficient pool, comma separated rationals.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub pool: Option<Vec<String>>,
    /// Worker threads (does not change the report).
    #[arg(long)]
    pub threads: Option<usize>,
}

fn serde_enum<T: serde::de::DeserializeOwned>(s: &str) -> Result<T, String> {
    serde_json::from_value(Value::String(s.to_string())).map_err(|e| e.to_string())
}

fn parse_family(s: &str) -> Result<FamilyName, String> {
    serde_enum(s)
}

fn parse_kind(s: &str) -> Result<FormKind, String> {
    serde_enum(s)
}

/// What a run printed and how it exits.
#[derive(Debug, Default)]
pub struct RunResult {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn read_into(path: &Path, label: &str, hash: &mut InputHash) -> Result<String, CliError> {
    let text = read(path)?;
    hash.add(label, text.as_bytes());
    Ok(text)
}

fn flag<T: std::fmt::Debug>(hash: &mut InputHash, name: &str, v: &T) {
    hash.add(name, format!("{v:?}").as_bytes());
}

fn descriptor(a: &ModelArgs, hash: &mut InputHash) -> Result<ModelDescriptor, CliError> {
    if let Some(path) = &a.model {
        return Ok(serde_json::from_str(&read_into(path, "model", hash)?)?);
    }
    let coeffs: Vec<CoeffJson> = match &a.coeffs {
        Some(text) => serde_json::from_str(text)?,
        None => Vec::new(),
    };
    let d = ModelDescriptor {
        family: a.family.clone().expect("required by clap"),
        n: a.n.expect("required by clap"),
        m: a.m.unwrap_or(0),
        s: a.s.clone(),
        sign: a.sign,
        kind: a.kind,
        coeffs,
    };
    hash.add("model", serde_json::to_string(&d)?.as_bytes());
    Ok(d)
}

fn dispatch(cmd: &Command, hash: &mut InputHash) -> Result<Outcome, CliError> {
    match cmd {
        Command::Check(a) | Command::Stabdim(a) | Command::Classify(a) => {
            let text = read_into(&a.surface, "surface", hash)?;
            flag(hash, "max_weight", &a.max_weight);
            match cmd {
                Command::Check(_) => commands::check(&text, a.max_weight),
                Command::Stabdim(_) => commands::stabdim(&text, a.max_weight),
                _ => commands::classify(&text, a.max_weight),
            }
        }
        Command::Verify(a) => {
            flag(hash, "max_weight", &a.max_weight);
            flag(hash, "weight", &a.weight);
            if let (Some(model), Some(scaled)) = (&a.model, &a.scaled) {
                let model = read_into(model, "model", hash)?;
                let scaled = read_into(scaled, "scaled", hash)?;
                return commands::verify(VerifyInput::Scaled { model: &model, scaled: &scaled }, a.max_weight);
            }
            let Some(surface) = &a.surface else {
                return Err(CliError::Usage("verify needs --surface with --map or --params, or --model with --scaled".into()));
            };
            let surface = read_into(surface, "surface", hash)?;
            if let Some(map) = &a.map {
                let map = read_into(map, "map", hash)?;
                commands::verify(VerifyInput::Jet { surface: &surface, map: &map, weight: a.weight }, a.max_weight)
            } else if let Some(params) = &a.params {
                let params = read_into(params, "params", hash)?;
                flag(hash, "degree", &a.degree);
                let input = VerifyInput::Params { surface: &surface, params: &params, degree: a.degree, weight: a.weight };
                commands::verify(input, a.max_weight)
            } else {
                Err(CliError::Usage("verify --surface needs --map or --params".into()))
            }
        }
        Command::Model(a) => commands::model(&descriptor(a, hash)?),
        Command::Census(a) => {
            let mut cfg = CensusConfig::new(a.n.clone(), a.m.clone(), a.samples, a.seed);
            cfg.max_weight = a.max_weight;
            if let Some(pool) = &a.pool {
                cfg.pool = pool.iter().map(|s| parse_rational(s.trim())).collect::<Result<_, _>>()?;
            }
            let pool: Vec<String> = cfg.pool.iter().map(|c| c.to_string()).collect();
            hash.add("census", format!("{:?}", (&cfg.ns, &cfg.ms, cfg.samples, cfg.seed, cfg.max_weight, pool)).as_bytes());
            commands::census(&cfg, a.threads)
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Check(_) => "check",
        Command::Stabdim(_) => "stabdim",
        Command::Classify(_) => "classify",
        Command::Verify(_) => "verify",
        Command::Model(_) => "model",
        Command::Census(_) => "census",
    }
}

/// Parses arguments, runs the command and renders the report.
///
/// Exit codes: 0 success, 1 usage, 2 unreadable or invalid input,
/// 3 mathematical failure (a check came out false or a constraint failed).
pub fn run<I, T>(args: I) -> RunResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                RunResult { stdout: text, stderr: String::new(), code }
            } else {
                RunResult { stdout: String::new(), stderr: text, code }
            };
        }
    };
    let mut hash = InputHash::new();
    let name = command_name(&cli.command);
    let (body, code, stderr) = match dispatch(&cli.command, &mut hash) {
        Ok(Outcome { body, ok }) => (body, if ok { 0 } else { 3 }, String::new()),
        Err(e @ CliError::Usage(_)) => {
            return RunResult { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() };
        }
        Err(e) => {
            let body = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
            (body, e.exit_code(), format!("error: {e}\n"))
        }
    };
    let mut text = serde_json::to_string_pretty(&envelope(name, &hash.hex(), body)).expect("JSON value");
    text.push('\n');
    match &cli.output {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => RunResult { stdout: String::new(), stderr, code },
            Err(e) => RunResult { stdout: String::new(), stderr: format!("error: cannot write {}: {e}\n", path.display()), code: 2 },
        },
        None => RunResult { stdout: text, stderr, code },
    }
}
