use std::io::{Read, Write};
use std::process::ExitCode;

use clap::Parser;
use plumb_cli::{run, RunConfig, EXIT_USAGE};

fn main() -> ExitCode {
    let config = match RunConfig::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap exits 2 on usage errors and 0 for --help / --version
            e.exit();
        }
    };
    let mut stdin = || {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    };
    match run(&config, &mut stdin) {
        Ok(out) => {
            let mut handle = std::io::stdout().lock();
            if handle.write_all(out.stdout.as_bytes()).is_err() {
                return ExitCode::from(EXIT_USAGE as u8);
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("plumb: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
