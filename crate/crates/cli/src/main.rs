use clap::Parser;

fn main() {
    let args = superalg_cli::Args::parse();
    std::process::exit(superalg_cli::execute(&args));
}
