use clap::Parser;

use comparatives::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let config = match cli.into_config() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    let outcome = run(&config);
    print!("{}", outcome.output);
    std::process::exit(outcome.status);
}
