use clap::Parser;

fn main() {
    let cli = polymat::cli::Cli::parse();
    std::process::exit(polymat::cli::run(&cli));
}
