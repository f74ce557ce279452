use std::io::{BufWriter, Write};
use std::process::ExitCode;

use biform_cli::{run, Cli, EXIT_IO, EXIT_USAGE};
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("biform: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    }
    let stdin = std::io::stdin();
    let mut input = stdin.lock();
    let code = match &cli.out {
        Some(path) => match std::fs::File::create(path) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                let code = run(&cli, &mut input, &mut w);
                if w.flush().is_err() {
                    EXIT_IO
                } else {
                    code
                }
            }
            Err(e) => {
                eprintln!("biform: {path}: {e}");
                EXIT_IO
            }
        },
        None => {
            let mut w = std::io::stdout().lock();
            let code = run(&cli, &mut input, &mut w);
            if w.flush().is_err() {
                EXIT_IO
            } else {
                code
            }
        }
    };
    ExitCode::from(code as u8)
}
