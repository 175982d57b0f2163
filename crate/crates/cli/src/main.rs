use std::process::ExitCode;

use clap::Parser;
use coqforge_cli::commands::{run, Cli, Command, EXIT_PRECONDITION};
use coqforge_cli::server::{serve, Store};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Serve { port, host, state_dir } = cli.command {
        let store = match &state_dir {
            Some(dir) => match Store::persistent(dir) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("{}", serde_json::json!({"error": "StateDir", "message": e.to_string()}));
                    return ExitCode::from(EXIT_PRECONDITION as u8);
                }
            },
            None => Store::in_memory(),
        };
        let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
        return match rt.block_on(serve((host, port).into(), store)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("{}", serde_json::json!({"error": "Io", "message": e.to_string()}));
                ExitCode::from(EXIT_PRECONDITION as u8)
            }
        };
    }
    let outcome = run(cli.command);
    if let Some(err) = &outcome.stderr {
        eprintln!("{err}");
    }
    if let Some((value, out)) = &outcome.stdout {
        let text = serde_json::to_string_pretty(value).expect("JSON values serialize") + "\n";
        match out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, text) {
                    eprintln!("{}", serde_json::json!({"error": "Io", "message": e.to_string()}));
                    return ExitCode::from(EXIT_PRECONDITION as u8);
                }
            }
            None => print!("{text}"),
        }
    }
    ExitCode::from(outcome.code as u8)
}
