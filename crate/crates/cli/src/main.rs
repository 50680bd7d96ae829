mod commands;
mod config;
mod golden;
mod report;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

use crate::config::{resolve, Cli};
use crate::report::{emit, error_json, exit_code, to_json_text, EXIT_OTHER};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            std::process::exit(0);
        }
        Err(e) => {
            eprint!("{e}");
            let v = json!({ "error": { "kind": "usage", "message": e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: "), "exit_code": EXIT_OTHER } });
            print!("{}", to_json_text(&v));
            std::process::exit(EXIT_OTHER);
        }
    };
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let result = resolve(&cli.flags).and_then(|cfg| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build_global()
            .map_err(|e| qes_core::Error::InvalidArgument(format!("thread pool: {e}")))?;
        let out = commands::run(cli.command, &cfg)?;
        emit(&out.text, cfg.output_path.as_deref())?;
        Ok(out)
    });
    match result {
        Ok(out) => {
            if let Some(s) = out.summary {
                eprintln!("{s}");
            }
            out.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            print!("{}", to_json_text(&error_json(&e)));
            exit_code(&e)
        }
    }
}
