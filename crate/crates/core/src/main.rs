use clap::Parser;

fn main() {
    let cli = cftv::cli::Cli::parse();
    std::process::exit(cftv::cli::run(cli));
}
