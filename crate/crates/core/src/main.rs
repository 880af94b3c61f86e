use clap::Parser;
use scattered::cli::{run_and_write, Cli, RunConfig};

fn main() {
    let config = RunConfig::from(Cli::parse());
    std::process::exit(run_and_write(&config) as i32);
}
