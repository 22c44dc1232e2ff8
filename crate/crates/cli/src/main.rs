use clap::Parser;
use medium_select_cli::{run, Cli};
use std::io::Write;

fn main() {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    match run(cli, &mut out) {
        Ok(()) => {
            let _ = out.flush();
        }
        Err(failure) => {
            let _ = out.flush();
            eprintln!("error: {}", failure.message);
            std::process::exit(failure.code);
        }
    }
}
