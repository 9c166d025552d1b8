use std::io::Write;

use clap::Parser;

use biasalg::cli::{self, Args};

fn main() {
    let args = Args::parse();
    let (report, code) = cli::run(&args);
    let mut out = std::io::stdout().lock();
    // A closed pipe is not an error for the caller.
    let _ = writeln!(out, "{}", report.render(args.json_indent)).and_then(|_| out.flush());
    std::process::exit(code);
}
