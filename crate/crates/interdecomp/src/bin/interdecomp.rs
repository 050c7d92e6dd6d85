use clap::Parser;

fn main() {
    let cli = interdecomp::cli::Cli::parse();
    std::process::exit(interdecomp::cli::run(&cli));
}
