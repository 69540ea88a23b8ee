//! Command-line front end: JSON input, command dispatch and reports.

pub mod input;
pub mod markdown;
pub mod report;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use fqav_core::{
    classification_report, close_group, decompose, ramification_data, reid_tai, CycloField, Error,
    FiniteGroupAction,
};

pub use input::{parse_input, Action, ActionInput, ErrorCode, InputError};
pub use report::ReportDocument;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Parse the input and close the group
    Validate,
    /// Classification invariants of the quotient
    Classify,
    /// Divisorial branch data
    Ramification,
    /// The Reid–Tai condition and a witness when it fails
    Reidtai,
    /// Split off the abelian factor
    Decompose,
    /// Everything above
    Report,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Classify => "classify",
            Command::Ramification => "ramification",
            Command::Reidtai => "reidtai",
            Command::Decompose => "decompose",
            Command::Report => "report",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Md,
}

#[derive(Parser, Debug)]
#[command(
    name = "fqav",
    version,
    about = "Classify finite quotients of abelian varieties"
)]
pub struct Cli {
    pub command: Command,
    /// Input JSON file, or `-` for stdin
    pub file: PathBuf,
    /// Override the group order cap from the input
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Conductor of the cyclotomic field used for ages
    #[arg(long)]
    pub field: Option<u64>,
}

/// Failure of a command: bad input, or a violated internal certificate.
#[derive(Debug)]
pub enum CliError {
    Input(InputError),
    Certificate(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Certificate(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(e) => write!(f, "{e}"),
            CliError::Certificate(m) => write!(f, "internal certificate failure: {m}"),
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        CliError::Input(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_certificate_failure() {
            return CliError::Certificate(e.to_string());
        }
        let code = match e {
            Error::GroupOrderExceedsCap(_) => ErrorCode::GroupCap,
            Error::InvalidConductor(_)
            | Error::FieldTooSmall { .. }
            | Error::RootOrderOutsideField { .. } => ErrorCode::Field,
            Error::NotAnEndomorphism(_) => ErrorCode::NotAnEndomorphism,
            Error::InfiniteOrder => ErrorCode::FiniteOrder,
            _ => ErrorCode::Schema,
        };
        CliError::Input(InputError::new(code, "", e.to_string()))
    }
}

/// Closes the generated group under the effective cap.
pub fn close(action: &Action, cap: Option<usize>) -> Result<FiniteGroupAction, CliError> {
    let cap = cap.unwrap_or(action.input.options.group_cap);
    close_group(&action.variety, &action.generators, cap).map_err(|e| {
        let mut err = CliError::from(e);
        if let CliError::Input(i) = &mut err {
            if i.code == ErrorCode::GroupCap {
                i.path = "options.group_cap".into();
            }
        }
        err
    })
}

pub fn run_command(
    cmd: Command,
    action: &Action,
    cap: Option<usize>,
    field: Option<u64>,
) -> Result<ReportDocument, CliError> {
    let g = close(action, cap)?;
    let mut input = action.input.clone();
    if let Some(c) = cap {
        input.options.group_cap = c;
    }
    let mut doc = ReportDocument::new(cmd.name(), input, &g);
    let field = field
        .map(CycloField::new)
        .transpose()
        .map_err(|e| InputError::new(ErrorCode::Field, "--field", e.to_string()))?;
    let field = match field {
        Some(f) => f,
        None => CycloField::new(g.natural_conductor())?,
    };
    let all = cmd == Command::Report;
    if all || cmd == Command::Classify {
        let r = classification_report(&g, Some(&field))?;
        doc.classification = Some(report::ClassificationSection::of(&r));
    }
    if all || cmd == Command::Ramification {
        doc.ramification = Some(report::RamificationSection::of(&ramification_data(&g)));
    }
    if all || cmd == Command::Reidtai {
        let (holds, w) = reid_tai(&g, &field)?;
        doc.reid_tai = Some(report::ReidTaiSection::of(
            field.conductor(),
            holds,
            w.as_ref(),
        )?);
    }
    if all || cmd == Command::Decompose {
        let d = decompose(&g)?;
        if !d.fano_kappa_check {
            return Err(CliError::Certificate(
                "Fano part κ differs from its dimension".into(),
            ));
        }
        if d.stages.iter().any(|s| !s.quasietale_outside_check) {
            return Err(CliError::Certificate(
                "quasi-étale outside the ramification subgroup failed".into(),
            ));
        }
        doc.decomposition = Some(report::DecompositionSection::of(&d));
    }
    Ok(doc)
}

/// Runs the program with explicit streams; returns the exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, stdin) {
        Ok(out) => {
            let _ = stdout.write_all(out.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<String, CliError> {
    let text = if cli.file.as_os_str() == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| InputError::new(ErrorCode::Io, "-", e.to_string()))?;
        s
    } else {
        std::fs::read_to_string(&cli.file).map_err(|e| {
            InputError::new(ErrorCode::Io, cli.file.display().to_string(), e.to_string())
        })?
    };
    let action = parse_input(&text)?;
    let doc = run_command(cli.command, &action, cli.cap, cli.field)?;
    Ok(match cli.format {
        Format::Json => doc.to_json(),
        Format::Md => markdown::render(&doc),
    })
}
