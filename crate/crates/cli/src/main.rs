use std::io::Write;

use clap::Parser;
use tropforms_cli::commands::{run, Cli, EXIT_INPUT};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let outcome = run(&cli.command);
    let text = serde_json::to_string_pretty(&outcome.report).expect("reports serialize");
    let _ = writeln!(std::io::stdout(), "{text}");
    std::process::exit(outcome.code);
}
