use clap::Parser;

use lomax_ebayes::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        if err.is_broken_pipe() {
            return;
        }
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
