//! The `qsheet` command-line front end.
//!
//! [`run`] parses arguments (merging an optional `--config` file), executes
//! one experiment, writes its CSV and optional SVG and maps the result to
//! an exit code: 0 success, 1 usage error, 2 runtime failure, 3 failed
//! `--check`.

pub mod args;
pub mod commands;
pub mod defaults;
pub mod svg;


use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::parser::ValueSource;
use clap::{ArgMatches, CommandFactory, FromArgMatches};

pub use args::{Cli, Command};
pub use commands::{execute, CheckLine, Ctx, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RUNTIME: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

/// Flags that never change the numbers and are left out of the config echo.
const NOT_ECHOED: [&str; 5] = ["jobs", "out", "svg", "check", "config"];

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

impl From<qsheet_core::Error> for CliError {
    fn from(e: qsheet_core::Error) -> Self {
        match e {
            qsheet_core::Error::Argument(m) => CliError::Usage(m),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

/// A fully parsed invocation.
#[derive(Debug)]
pub struct Invocation {
    pub cli: Cli,
    /// `key=value` pairs of every parameter that affects the output.
    pub effective: Vec<(String, String)>,
}

/// What a parse attempt produced besides an invocation.
#[derive(Debug)]
pub enum ParseOutcome {
    Run(Box<Invocation>),
    /// `--help` or `--version`: print and exit successfully.
    Info(String),
}

fn clap_error(e: clap::Error) -> Result<ParseOutcome, CliError> {
    use clap::error::ErrorKind;
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            Ok(ParseOutcome::Info(e.render().to_string()))
        }
        _ => Err(CliError::Usage(e.render().to_string())),
    }
}

/// Read a `key=value` config file into `--key=value` arguments for
/// `subcommand`, skipping keys already given on the command line.
fn config_args(path: &Path, subcommand: &str, given: &ArgMatches) -> Result<Vec<OsString>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let root = Cli::command();
    let sub = root
        .find_subcommand(subcommand)
        .ok_or_else(|| CliError::Usage(format!("unknown subcommand {subcommand}")))?;
    let sub_given = given.subcommand_matches(subcommand);
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", n + 1)))?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key == "config" {
            return Err(CliError::Usage("config files cannot include other config files".into()));
        }
        let arg = sub
            .get_arguments()
            .chain(root.get_arguments())
            .find(|a| a.get_long() == Some(key.as_str()))
            .ok_or_else(|| CliError::Usage(format!("config line {}: unknown key `{key}` for {subcommand}", n + 1)))?;
        let id = arg.get_id().as_str();
        let on_command_line = [Some(given), sub_given]
            .into_iter()
            .flatten()
            .any(|m| m.ids().any(|i| i.as_str() == id) && m.value_source(id) == Some(ValueSource::CommandLine));
        if on_command_line {
            continue;
        }
        if arg.get_action().takes_values() {
            out.push(OsString::from(format!("--{key}={value}")));
        } else {
            match value {
                "true" | "1" | "yes" => out.push(OsString::from(format!("--{key}"))),
                "false" | "0" | "no" => {}
                _ => {
                    return Err(CliError::Usage(format!(
                        "config line {}: `{key}` is a switch; use true or false",
                        n + 1
                    )))
                }
            }
        }
    }
    Ok(out)
}

fn raw_value(m: &ArgMatches, id: &str) -> Option<String> {
    let vals = m.get_raw(id)?;
    let parts: Vec<String> = vals.map(|v| v.to_string_lossy().into_owned()).collect();
    Some(parts.join(","))
}

fn effective_config(root: &ArgMatches, name: &str) -> Vec<(String, String)> {
    let mut out = Vec::new();
    let sub = root.subcommand_matches(name);
    let seed = sub
        .and_then(|m| raw_value(m, "seed"))
        .or_else(|| raw_value(root, "seed"));
    if let Some(s) = seed {
        out.push(("seed".to_string(), s));
    }
    let Some(sub) = sub else { return out };
    let def = Cli::command();
    let Some(sc) = def.find_subcommand(name) else {
        return out;
    };
    for arg in sc.get_arguments() {
        let id = arg.get_id().as_str();
        if NOT_ECHOED.contains(&id) || id == "seed" || id == "help" || id == "version" {
            continue;
        }
        let key = arg.get_long().unwrap_or(id).to_string();
        if arg.get_action().takes_values() {
            if let Some(v) = raw_value(sub, id) {
                out.push((key, v));
            }
        } else {
            out.push((key, sub.get_flag(id).to_string()));
        }
    }
    out
}

/// Parse `argv` (including the program name).
pub fn parse<I, T>(argv: I) -> Result<ParseOutcome, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let first = match Cli::command().try_get_matches_from(&argv) {
        Ok(m) => m,
        Err(e) => return clap_error(e),
    };
    let name = first.subcommand_name().unwrap_or_default().to_string();
    let config = first
        .subcommand_matches(&name)
        .and_then(|m| m.get_one::<std::path::PathBuf>("config").cloned())
        .or_else(|| first.get_one::<std::path::PathBuf>("config").cloned());
    let matches = match config {
        Some(path) => {
            let mut full = argv.clone();
            full.extend(config_args(&path, &name, &first)?);
            match Cli::command().try_get_matches_from(&full) {
                Ok(m) => m,
                Err(e) => return clap_error(e),
            }
        }
        None => first,
    };
    let cli = Cli::from_arg_matches(&matches).map_err(|e| CliError::Usage(e.render().to_string()))?;
    let effective = effective_config(&matches, &name);
    Ok(ParseOutcome::Run(Box::new(Invocation { cli, effective })))
}

/// Execute a parsed invocation and return the rendered CSV with its outcome.
pub fn run_invocation(inv: &Invocation) -> Result<(String, Outcome), CliError> {
    let cli = &inv.cli;
    let ctx = Ctx {
        seed: qsheet_core::Seed(cli.seed),
        jobs: cli.jobs,
        check: cli.check,
    };
    let mut outcome = execute(&cli.command, &ctx)?;
    let mut comments: Vec<String> = vec![format!("qsheet {}", cli.command.name())];
    comments.extend(inv.effective.iter().map(|(k, v)| format!("{k}={v}")));
    comments.append(&mut outcome.table.comments);
    outcome.table.comments = comments;
    Ok((outcome.table.to_csv(), outcome))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display())))
}

/// Full command-line behaviour; returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let inv = match parse(argv) {
        Ok(ParseOutcome::Run(inv)) => inv,
        Ok(ParseOutcome::Info(text)) => {
            let _ = write!(stdout, "{text}");
            return EXIT_OK;
        }
        Err(e) => {
            let _ = writeln!(
                stderr,
                "error: {}",
                e.to_string().trim_start_matches("error: ").trim_end()
            );
            return e.exit_code();
        }
    };
    let result = run_invocation(&inv).and_then(|(csv, outcome)| {
        match &inv.cli.out {
            Some(p) => write_file(p, &csv)?,
            None => stdout
                .write_all(csv.as_bytes())
                .map_err(|e| CliError::Runtime(format!("cannot write output: {e}")))?,
        }
        if let Some(p) = &inv.cli.svg {
            let doc = svg::render_svg(&outcome.table, &outcome.plot).map_err(|e| CliError::Usage(e.to_string()))?;
            write_file(p, &doc)?;
        }
        Ok(outcome)
    });
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    for w in &outcome.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    if inv.cli.check {
        let mut failed = false;
        for c in &outcome.checks {
            failed |= !c.pass;
            let _ = writeln!(
                stderr,
                "check {} {}: {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        if failed {
            return EXIT_CHECK;
        }
    }
    EXIT_OK
}
