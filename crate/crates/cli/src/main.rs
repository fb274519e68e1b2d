mod args;
mod cfgfile;
mod commands;
mod common;
mod errors;

use clap::Parser;

use args::{Cli, Command};
use errors::Result;

fn run(cli: &Cli) -> Result<()> {
    let resolved = cfgfile::resolve_config(cli.config.as_deref())?;
    let threads = cfgfile::effective_threads(cli.threads, resolved.file_threads)?;
    cfgfile::install_thread_pool(threads)?;
    let cfg = resolved.net;
    match &cli.command {
        Command::Degrade(a) => commands::degrade::run(a, cli.seed),
        Command::Patchify(a) => commands::patchify::run(a, cli.seed),
        Command::Metrics(a) => commands::metrics::run(a),
        Command::Grid(a) => commands::grid::run(a, cli.seed, &cfg),
        Command::Forward(a) => commands::forward::run(a, cli.seed, &cfg),
        Command::Inspect(a) => commands::inspect::run(a, cli.seed, &cfg),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    std::process::exit(0);
                }
                _ => {
                    eprint!("{e}");
                    std::process::exit(errors::EXIT_INVALID);
                }
            }
        }
    };
    if let Err(e) = run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.code());
    }
}
