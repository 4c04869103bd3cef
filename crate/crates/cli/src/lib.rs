//! Front end of the `cmlab` binary: session files, commands and reports.

pub mod commands;
pub mod error;
pub mod session;

pub use commands::{run, Cli, Command, Outcome};
pub use error::{CliError, CliResult};
pub use session::{format_session, parse_session, Session, SessionFile};

/// Runs a parsed command line, writes `--out` and returns the exit code.
pub fn main_with(cli: &Cli) -> i32 {
    match run(&cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if let Some(path) = &cli.command.common().out {
                if let Err(e) = commands::write_records(path, &outcome.records) {
                    eprintln!("error: {e}");
                    return error::EXIT_USAGE;
                }
            }
            outcome.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
