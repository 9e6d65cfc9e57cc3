use std::process::ExitCode;

use clap::Parser;
use qw2d::cli::{main_with, Cli, EXIT_PRECONDITION};

/// Caps rayon's pool at `QW2D_THREADS` when set.
fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("QW2D_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t >= 1)
        .ok_or_else(|| format!("QW2D_THREADS must be an integer >= 1, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_PRECONDITION);
    }
    main_with(cli)
}
