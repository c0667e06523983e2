mod args;
mod run;

use clap::Parser;

fn main() {
    let cli = args::Cli::parse();
    std::process::exit(run::run(cli));
}
