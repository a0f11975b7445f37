use clap::Parser;

fn main() {
    std::process::exit(rackforge::cli::run(rackforge::cli::Cli::parse()));
}
