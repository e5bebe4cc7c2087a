//! Command-line front end: configuration parsing, subcommand dispatch,
//! deterministic seeding, CSV/JSON emission and run manifests.

mod config;
mod dispatch;
mod manifest;
mod output;

pub use config::{parse_config, ConfigError, Format, RunConfig};
pub use dispatch::{dispatch, EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION};
pub use manifest::{verify_manifest, RunManifest};
pub use output::format_float;

/// Entry point used by the `matterwave` binary: parse the command line,
/// dispatch, and map every failure onto the documented exit codes.
pub fn run(args: &[String]) -> i32 {
    let config = match parse_config(args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_VALIDATION;
        }
    };
    match dispatch(&config) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
