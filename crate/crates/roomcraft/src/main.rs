use clap::Parser;
use roomcraft::cli::{diagnostic, run, Cli};
use roomcraft::pipeline::exit;

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let message = e.to_string();
            eprintln!("{}", diagnostic("error", serde_json::json!({ "code": "Usage", "message": message.trim_end(), "exit": exit::USAGE })));
            std::process::exit(exit::USAGE);
        }
        Err(e) => {
            // --help / --version
            let _ = e.print();
            std::process::exit(exit::OK);
        }
    };
    std::process::exit(run(&cli));
}
