use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use nashdcf::cli::Engine;
use nashdcf::nashfield::set_degree_budget;

/// Run nashdcf commands from files or standard input.
#[derive(Parser)]
#[command(name = "nashdcf", version)]
struct Args {
    /// Command files, run in order against one engine; `-` or none reads stdin.
    files: Vec<PathBuf>,

    /// Run a single command line (repeatable), after the files.
    #[arg(short = 'e', long = "exec")]
    exec: Vec<String>,

    /// Cap on the degree of defining polynomials.
    #[arg(long)]
    degree_budget: Option<usize>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(b) = args.degree_budget {
        set_degree_budget(b);
    }
    let mut sources = Vec::new();
    for f in &args.files {
        let text = if f.as_os_str() == "-" {
            read_stdin()
        } else {
            std::fs::read_to_string(f)
        };
        match text {
            Ok(t) => sources.push(t),
            Err(e) => {
                eprintln!("nashdcf: {}: {}", f.display(), e);
                return ExitCode::from(2);
            }
        }
    }
    if args.files.is_empty() && args.exec.is_empty() {
        match read_stdin() {
            Ok(t) => sources.push(t),
            Err(e) => {
                eprintln!("nashdcf: stdin: {}", e);
                return ExitCode::from(2);
            }
        }
    }
    sources.extend(args.exec.iter().cloned());

    let mut engine = Engine::new();
    let mut errors = 0;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for src in &sources {
        let r = engine.run(src);
        errors += r.errors;
        let _ = out.write_all(r.text().as_bytes());
    }
    if errors == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn read_stdin() -> io::Result<String> {
    let mut s = String::new();
    io::stdin().read_to_string(&mut s)?;
    Ok(s)
}
