//! Command-line front end for the `parafermion` library.
//!
//! [`run`] parses arguments, dispatches to one library entry point and
//! returns the exit code with everything that would be printed. Exit codes:
//! 0 on success or a passing check, 1 on a failing check, 2 on a usage or
//! input error.

pub mod args;
pub mod commands;
pub mod load;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Format, LcCommand};
use commands::{CmdResult, Response};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn dispatch(command: &Command) -> CmdResult {
    match command {
        Command::Fuse { level, left, right } => commands::fuse_cmd(level.level, left, right),
        Command::Weights { level } => commands::weights_cmd(level.level),
        Command::ZkCheck { level } => commands::zk_check_cmd(level.level),
        Command::OrbifoldTable { level } => commands::orbifold_table_cmd(level.level),
        Command::SigmaCheck { level } => commands::sigma_check_cmd(level.level),
        Command::LatticeInfo { builtin, lattice } => {
            commands::lattice_info_cmd(builtin.as_deref(), lattice.as_deref())
        }
        Command::Rssd { sublattice } => commands::rssd_cmd(sublattice),
        Command::Quotient { level, sublattice } => commands::quotient_cmd(*level, sublattice.as_deref()),
        Command::LiftOrder { level } => commands::lift_order_cmd(level.level),
        Command::LcVerify(args) => commands::lc_verify_cmd(args),
        Command::Lc {
            command: LcCommand::Verify(args),
        } => commands::lc_verify_cmd(args),
        Command::U5a(args) => commands::u5a_cmd(args),
    }
}

fn render(resp: &Response, format: Format) -> String {
    match format {
        Format::Text => resp.text.clone(),
        Format::Json => serde_json::to_string_pretty(&resp.json).expect("values serialize"),
    }
}

/// Runs one command line. The first item is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_PASS,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(resp) => {
            let code = match resp.passed {
                Some(false) => EXIT_FAIL,
                _ => EXIT_PASS,
            };
            let mut stdout = render(&resp, cli.format);
            stdout.push('\n');
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let stderr = match cli.format {
                Format::Text => format!("error: {e}\n"),
                Format::Json => {
                    let mut body = serde_json::json!({ "error": e.to_string() });
                    if let commands::UsageError::Load(l) = &e {
                        body["source"] = l.source.clone().into();
                        body["pointer"] = l.pointer.clone().into();
                    }
                    format!("{}\n", serde_json::to_string_pretty(&body).expect("values serialize"))
                }
            };
            Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
                stderr,
            }
        }
    }
}
