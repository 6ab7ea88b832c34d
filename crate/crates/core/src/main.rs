use clap::Parser;

fn main() {
    let cli = modrep::cli::Cli::parse();
    std::process::exit(modrep::cli::main_with(cli));
}
