//! Front end for the form-ring toolkit: reads a session file, runs one
//! command and prints a text or JSON report.

pub mod cas;
pub mod commands;
pub mod dsl;
pub mod report;

use clap::Parser;

use formcone_core::Error;

pub use cas::{emit_cas_script, Dialect};
pub use commands::{run_command, Command};
pub use dsl::{load_session, parse_session, DslError, SessionSpec};
pub use report::Report;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug)]
pub enum CliError {
    Dsl(DslError),
    Input(String),
    Core(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Dsl(e) => write!(f, "{e}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Dsl(e) => match e.kind {
                dsl::DslErrorKind::Budget => EXIT_BUDGET,
                dsl::DslErrorKind::Internal => EXIT_INTERNAL,
                _ => EXIT_INPUT,
            },
            CliError::Input(_) => EXIT_INPUT,
            CliError::Core(e) => match e {
                Error::Budget(_) => EXIT_BUDGET,
                Error::Parse { .. }
                | Error::UnknownVariable(_)
                | Error::InvalidField(_)
                | Error::Precondition(_)
                | Error::Inhomogeneous(_)
                | Error::InfiniteComponent { .. } => EXIT_INPUT,
                _ => EXIT_INTERNAL,
            },
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            EXIT_BUDGET => "budget",
            EXIT_INTERNAL => "internal",
            _ => "input",
        }
    }
}

const SETTINGS_HELP: &str = "Settings (file `set key = value` lines, overridden by --set):
  n_max         largest n in Ľ⁰ scans                      default 10
  l_max         longest colon chain per n                   default 12
  window        equal consecutive chain members to stop     default 2
  degree_cap    top degree for `hilbert`                    default 8
  pair_budget   S-pair reductions per Groebner basis        default 1000000
  probe_cap     largest power of q probed for c_i           default 12
  search_tries  random combinations in the regular search   default 24
  seed          seed for those combinations                 default 24301

Exit codes: 0 success, 2 input error, 3 budget exhausted, 4 internal failure.";

#[derive(Debug, Parser)]
#[command(name = "formcone", version, about = "Form rings, depth and degree-zero variation modules", after_help = SETTINGS_HELP)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Session file
    pub file: String,
    /// Print a JSON report
    #[arg(long)]
    pub json: bool,
    /// Override a setting, e.g. --set n_max=6
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// Output dialect for emit-cas
    #[arg(long, value_enum, default_value = "m2")]
    pub dialect: Dialect,
}

/// Runs the front end on session text; returns stdout text or the error.
pub fn execute(args: &Args, text: &str) -> Result<String, CliError> {
    let mut text = text.to_string();
    for kv in &args.set {
        let Some((k, v)) = kv.split_once('=') else {
            return Err(CliError::Input(format!("--set expects KEY=VALUE, got `{kv}`")));
        };
        let mut probe = dsl::Settings::default();
        probe
            .set(k.trim(), v)
            .map_err(|m| CliError::Input(format!("--set {kv}: {m}")))?;
        text.push_str(&format!("\nset {} = {}\n", k.trim(), v.trim()));
    }
    let (spec, ctx) = load_session(&text).map_err(CliError::Dsl)?;
    let report = run_command(args.command, &spec, &ctx, args.dialect)?;
    Ok(if args.json {
        report.to_json() + "\n"
    } else if args.command == Command::EmitCas {
        report.certificates.script.clone().unwrap_or_default()
    } else {
        report.to_text()
    })
}

/// Parses the command line, runs it, prints, and returns the exit code.
pub fn main_with<I: IntoIterator<Item = String>>(argv: I) -> i32 {
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("formcone: input error: cannot read {}: {e}", args.file);
            return EXIT_INPUT;
        }
    };
    match execute(&args, &text) {
        Ok(out) => {
            print!("{out}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("formcone: {} error: {e}", e.kind());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_are_distinct() {
        assert_eq!(CliError::Core(Error::Budget("x".into())).exit_code(), EXIT_BUDGET);
        assert_eq!(CliError::Core(Error::Internal("x".into())).exit_code(), EXIT_INTERNAL);
        assert_eq!(CliError::Core(Error::Precondition("x".into())).exit_code(), EXIT_INPUT);
        assert_eq!(CliError::Core(Error::ZeroPolynomial).exit_code(), EXIT_INTERNAL);
        assert_eq!(CliError::Input("x".into()).exit_code(), EXIT_INPUT);
    }
}
