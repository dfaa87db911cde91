use std::process::ExitCode;

use bellvol_cli::{run, Cli, CliError};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(CliError::USAGE);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: cannot start thread pool: {e}");
            return ExitCode::from(CliError::RUNTIME);
        }
    }
    match run(&cli) {
        Ok(record) => {
            println!("{}", record.to_json());
            ExitCode::SUCCESS
        }
        Err(err) => {
            if let Some(record) = &err.record {
                println!("{}", record.to_json());
            }
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
