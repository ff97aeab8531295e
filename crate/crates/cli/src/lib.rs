//! Argument parsing and command dispatch for the `hofq` binary.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hofq_core::model::dot::{export_dot, DotScope};
use hofq_core::model::text::{parse_model, serialize_model};
use hofq_core::model::{builtin_model, validate_model, ConstraintModel, ContextId, Mode};
use hofq_core::sequence::{write_csv, SequenceEngine};
use hofq_core::solver::{
    audit_insensitive, compare_supports, critical_core, model_sensitive_set, paths_to_core,
    propagate_supports, render_paths_text, CandidateTable, InsensitiveAudit, PathWitness,
    SupportComparison,
};
use hofq_core::verify::{
    audit_edge_realizability, checkall, render_realizability_text, verify_two_mode_roots,
    EdgeRealizability, EdgeScope,
};
use hofq_core::{Error, StateSet};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_MODEL: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hofq",
    version,
    about = "Sequence scans and finite-state verification for the perturbed Hofstadter Q recursion"
)]
pub struct CliConfig {
    /// Model file to load instead of the bundled model
    #[arg(long = "file", global = true, value_name = "PATH")]
    pub model_path: Option<PathBuf>,

    /// Write output here instead of standard output
    #[arg(long = "output", short = 'o', global = true, value_name = "PATH")]
    pub output_path: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
    Bfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::A => Mode::A,
            ModeArg::B => Mode::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    Published,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DotArg {
    Contexts,
    States,
}

#[derive(Debug, Args)]
pub struct ModeSelect {
    /// Restrict to one mode (default: both)
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
}

impl ModeSelect {
    fn modes(&self) -> Vec<Mode> {
        match self.mode {
            Some(m) => vec![m.into()],
            None => Mode::BOTH.to_vec(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Scan the sequence for well-definedness, or emit its terms
    Seq {
        #[arg(long = "max", value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        /// Distance between ratio samples
        #[arg(long = "stride", value_name = "N", default_value_t = 100_000,
              value_parser = clap::value_parser!(u64).range(1..))]
        ratio_stride: u64,
    },
    /// Model checks and exports
    Model {
        #[command(subcommand)]
        action: ModelAction,
    },
    /// Propagate supports and compare them with the bundled tables
    Supports {
        #[command(flatten)]
        select: ModeSelect,
        /// Exit 1 when computed and bundled tables differ
        #[arg(long)]
        strict: bool,
    },
    /// Contexts whose supports differ between the two modes
    Sensitive,
    /// Critical core analysis
    Core {
        #[command(subcommand)]
        action: CoreAction,
    },
    /// Reduction audits
    Audit {
        #[command(subcommand)]
        action: AuditAction,
    },
    /// Check every non-empty subset of the critical core and print the certificate
    Checkall {
        #[arg(long, value_enum, default_value_t = ScopeArg::Published)]
        edge_scope: ScopeArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum ModelAction {
    /// Run the structural checks
    Validate,
    /// Graphviz export of the context graph or the state automaton
    Dot {
        #[arg(long, value_enum, default_value_t = DotArg::Contexts)]
        scope: DotArg,
    },
    /// Print the model in the text format accepted by --file
    Serialize,
}

#[derive(Debug, Subcommand)]
pub enum CoreAction {
    /// The core contexts and their supports
    List,
    /// Shortest paths from sensitive contexts into the core
    Paths {
        #[command(flatten)]
        select: ModeSelect,
    },
}

#[derive(Debug, Subcommand)]
pub enum AuditAction {
    /// Extension of neighbor assignments across insensitive contexts
    Insensitive {
        #[command(flatten)]
        select: ModeSelect,
        /// Exit 1 when some assignment does not extend
        #[arg(long)]
        strict: bool,
    },
    /// Whether every compatibility edge has a supported relation pair
    Edges {
        #[command(flatten)]
        select: ModeSelect,
    },
}

/// A diagnostic and the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn model(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_MODEL,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::UnknownContext(_)
            | Error::InvalidState { .. }
            | Error::InconsistentModel(_) => EXIT_MODEL,
            Error::InvalidSubset(_) | Error::SequenceTooShort { .. } => EXIT_USAGE,
            Error::WellDefinednessViolation { .. } | Error::EmptyDomain(_) | Error::NoPath(_) => {
                EXIT_FAILED
            }
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Output produced by a command and the exit code it earned.
struct Outcome {
    body: Vec<u8>,
    code: i32,
}

impl Outcome {
    fn new(body: impl Into<Vec<u8>>, passed: bool) -> Self {
        Self {
            body: body.into(),
            code: if passed { EXIT_OK } else { EXIT_FAILED },
        }
    }
}

impl CliConfig {
    fn allowed_formats(&self) -> &'static [Format] {
        use Format::*;
        match &self.command {
            Command::Seq { .. } => &[Text, Json, Csv, Bfile],
            Command::Model {
                action: ModelAction::Dot { .. },
            } => &[Text, Dot],
            Command::Model {
                action: ModelAction::Serialize,
            } => &[Text],
            _ => &[Text, Json],
        }
    }

    /// Rejects flag combinations that do not apply to the chosen subcommand.
    pub fn validate(&self) -> Result<(), Failure> {
        if !self.allowed_formats().contains(&self.format) {
            let name = self.format.to_possible_value().expect("no skipped variants");
            return Err(Failure::usage(format!(
                "--format {} is not supported by this subcommand",
                name.get_name()
            )));
        }
        if matches!(self.command, Command::Seq { .. }) && self.model_path.is_some() {
            return Err(Failure::usage("--file does not apply to seq"));
        }
        Ok(())
    }
}

/// Parses `args` (program name first) and runs the command. Returns the exit
/// code; output goes to `out` (or `--output`) and diagnostics to `err`.
pub fn main_with_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match CliConfig::try_parse_from(args) {
        Ok(config) => run(&config, out, err),
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            code
        }
    }
}

pub fn run(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = config.validate().and_then(|()| dispatch(config));
    match result {
        Ok(outcome) => match emit(config.output_path.as_deref(), &outcome.body, out) {
            Ok(()) => outcome.code,
            Err(f) => report(err, f),
        },
        Err(f) => report(err, f),
    }
}

fn report(err: &mut dyn Write, f: Failure) -> i32 {
    let _ = writeln!(err, "error: {}", f.message);
    f.code
}

fn emit(path: Option<&Path>, body: &[u8], out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, body)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => out
            .write_all(body)
            .and_then(|()| out.flush())
            .map_err(|e| Failure::usage(format!("cannot write output: {e}"))),
    }
}

fn load_model(path: Option<&Path>) -> Result<ConstraintModel, Failure> {
    match path {
        None => Ok(builtin_model()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Failure::model(format!("cannot read {}: {e}", p.display())))?;
            parse_model(&text).map_err(|e| Failure::model(format!("{}: {e}", p.display())))
        }
    }
}

fn json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s.into_bytes()
}

fn dispatch(config: &CliConfig) -> Result<Outcome, Failure> {
    let fmt = config.format;
    if let Command::Seq { n_max, ratio_stride } = config.command {
        return run_seq(n_max, ratio_stride, fmt);
    }
    let model = load_model(config.model_path.as_deref())?;
    match &config.command {
        Command::Seq { .. } => unreachable!("handled above"),
        Command::Model { action } => run_model(&model, action, fmt),
        Command::Supports { select, strict } => run_supports(&model, &select.modes(), *strict, fmt),
        Command::Sensitive => run_sensitive(&model, fmt),
        Command::Core { action } => match action {
            CoreAction::List => run_core_list(&model, fmt),
            CoreAction::Paths { select } => run_core_paths(&model, &select.modes(), fmt),
        },
        Command::Audit { action } => match action {
            AuditAction::Insensitive { select, strict } => {
                run_audit_insensitive(&model, &select.modes(), *strict, fmt)
            }
            AuditAction::Edges { select } => run_audit_edges(&model, &select.modes(), fmt),
        },
        Command::Checkall { edge_scope } => {
            let scope = match edge_scope {
                ScopeArg::Published => EdgeScope::Published,
                ScopeArg::Full => EdgeScope::Full,
            };
            let cert = checkall(&model, scope)?;
            let body = match fmt {
                Format::Json => {
                    let mut s = cert.to_json();
                    s.push('\n');
                    s
                }
                _ => cert.to_text(),
            };
            Ok(Outcome::new(body, cert.verified))
        }
    }
}

fn run_seq(n_max: u64, stride: u64, fmt: Format) -> Result<Outcome, Failure> {
    let engine = SequenceEngine::default();
    match fmt {
        Format::Csv | Format::Bfile => {
            let table = engine.table(n_max)?;
            let mut body = Vec::new();
            if fmt == Format::Csv {
                let records = engine.q_values(n_max)?;
                write_csv(&records, &mut body).expect("writing to memory");
            } else {
                table.write_bfile(&mut body).expect("writing to memory");
            }
            Ok(Outcome::new(body, true))
        }
        _ => {
            if n_max < 2 {
                return Err(Failure::usage("--max must be at least 2 for a scan"));
            }
            let report = engine.scan(n_max, stride)?;
            let body = if fmt == Format::Json {
                json(&report)
            } else {
                report.to_text().into_bytes()
            };
            Ok(Outcome::new(body, report.is_clean()))
        }
    }
}

fn run_model(model: &ConstraintModel, action: &ModelAction, fmt: Format) -> Result<Outcome, Failure> {
    match action {
        ModelAction::Validate => {
            let report = validate_model(model);
            let body = if fmt == Format::Json {
                json(&report)
            } else {
                report.to_text().into_bytes()
            };
            Ok(Outcome {
                body,
                code: if report.is_valid() { EXIT_OK } else { EXIT_MODEL },
            })
        }
        ModelAction::Dot { scope } => {
            let scope = match scope {
                DotArg::Contexts => DotScope::Contexts,
                DotArg::States => DotScope::States,
            };
            Ok(Outcome::new(export_dot(model, scope), true))
        }
        ModelAction::Serialize => Ok(Outcome::new(serialize_model(model), true)),
    }
}

#[derive(Serialize)]
struct SupportsReport<'a> {
    mode: Mode,
    computed: &'a CandidateTable,
    comparison: &'a SupportComparison,
}

fn run_supports(
    model: &ConstraintModel,
    modes: &[Mode],
    strict: bool,
    fmt: Format,
) -> Result<Outcome, Failure> {
    let mut text = String::new();
    let mut rows = Vec::new();
    for &mode in modes {
        let computed = propagate_supports(model, mode)?;
        let cmp = compare_supports(&computed, model.supports(mode));
        text.push_str(&cmp.to_text(&computed, model.supports(mode)));
        rows.push((computed, cmp));
    }
    let exact = rows.iter().all(|(_, c)| c.is_exact());
    let body = if fmt == Format::Json {
        let reports: Vec<SupportsReport> = rows
            .iter()
            .map(|(computed, comparison)| SupportsReport {
                mode: computed.mode,
                computed,
                comparison,
            })
            .collect();
        json(&reports)
    } else {
        text.into_bytes()
    };
    Ok(Outcome::new(body, exact || !strict))
}

#[derive(Serialize)]
struct SensitiveReport {
    sensitive: Vec<ContextId>,
    core: Vec<ContextId>,
    core_within_sensitive: bool,
    roots_disjoint: bool,
}

fn run_sensitive(model: &ConstraintModel, fmt: Format) -> Result<Outcome, Failure> {
    let sensitive: Vec<ContextId> = model_sensitive_set(model).into_iter().collect();
    let core = critical_core(model);
    let report = SensitiveReport {
        sensitive,
        core: core.contexts.clone(),
        core_within_sensitive: core.within_sensitive(),
        roots_disjoint: verify_two_mode_roots(model),
    };
    let passed = report.core_within_sensitive && report.roots_disjoint;
    let body = if fmt == Format::Json {
        json(&report)
    } else {
        let ids = |v: &[ContextId]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
        format!(
            "sensitive contexts ({}): {}\ncritical core: {}\ncore within sensitive set: {}\nroot supports disjoint: {}\n",
            report.sensitive.len(),
            ids(&report.sensitive),
            ids(&report.core),
            yes_no(report.core_within_sensitive),
            yes_no(report.roots_disjoint),
        )
        .into_bytes()
    };
    Ok(Outcome::new(body, passed))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
struct CoreEntry {
    context: hofq_core::Context,
    support_a: StateSet,
    support_b: StateSet,
    sensitive: bool,
}

fn run_core_list(model: &ConstraintModel, fmt: Format) -> Result<Outcome, Failure> {
    let core = critical_core(model);
    let sensitive = model_sensitive_set(model);
    let entries = core
        .contexts
        .iter()
        .map(|&id| {
            Ok(CoreEntry {
                context: *model.context(id)?,
                support_a: model.supports(Mode::A).get(id),
                support_b: model.supports(Mode::B).get(id),
                sensitive: sensitive.contains(&id),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let body = if fmt == Format::Json {
        json(&entries)
    } else {
        let mut s = String::from("Critical core:\n");
        for e in &entries {
            s.push_str(&format!("{:>4} : {}\n", e.context.id, e.context));
            s.push_str(&format!("       A: {}\n", e.support_a.to_spaced()));
            s.push_str(&format!("       B: {}\n", e.support_b.to_spaced()));
        }
        s.push_str(&format!("core within sensitive set: {}\n", yes_no(core.within_sensitive())));
        s.into_bytes()
    };
    Ok(Outcome::new(body, core.within_sensitive()))
}

#[derive(Serialize)]
struct PathsReport {
    mode: Mode,
    witnesses: Vec<PathWitness>,
}

fn run_core_paths(model: &ConstraintModel, modes: &[Mode], fmt: Format) -> Result<Outcome, Failure> {
    let mut text = String::new();
    let mut reports = Vec::new();
    for &mode in modes {
        let witnesses = paths_to_core(model, mode)?;
        text.push_str(&render_paths_text(mode, &witnesses));
        reports.push(PathsReport {
            mode,
            witnesses: witnesses.into_values().collect(),
        });
    }
    let passed = reports.iter().all(|r| r.witnesses.iter().all(|w| w.valid));
    let body = if fmt == Format::Json { json(&reports) } else { text.into_bytes() };
    Ok(Outcome::new(body, passed))
}

fn run_audit_insensitive(
    model: &ConstraintModel,
    modes: &[Mode],
    strict: bool,
    fmt: Format,
) -> Result<Outcome, Failure> {
    let audits: Vec<InsensitiveAudit> = modes.iter().map(|&m| audit_insensitive(model, m)).collect();
    let all = audits.iter().all(InsensitiveAudit::all_extendable);
    let body = if fmt == Format::Json {
        json(&audits)
    } else {
        audits.iter().map(InsensitiveAudit::to_text).collect::<String>().into_bytes()
    };
    Ok(Outcome::new(body, all || !strict))
}

#[derive(Serialize)]
struct EdgesReport {
    mode: Mode,
    edges: Vec<EdgeRealizability>,
}

fn run_audit_edges(model: &ConstraintModel, modes: &[Mode], fmt: Format) -> Result<Outcome, Failure> {
    let reports: Vec<EdgesReport> = modes
        .iter()
        .map(|&mode| EdgesReport {
            mode,
            edges: audit_edge_realizability(model, mode),
        })
        .collect();
    let passed = reports.iter().all(|r| r.edges.iter().all(|e| e.realizable));
    let body = if fmt == Format::Json {
        json(&reports)
    } else {
        reports
            .iter()
            .map(|r| render_realizability_text(r.mode, &r.edges))
            .collect::<String>()
            .into_bytes()
    };
    Ok(Outcome::new(body, passed))
}

/// Writes to standard output and standard error.
pub fn main_from_env() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    main_with_args(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
