use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use fsig::cli::{run, Cli};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(()) => match flushed {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("fsig: {e}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("fsig: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
