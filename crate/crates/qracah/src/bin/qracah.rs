use clap::Parser;

fn main() {
    let cli = qracah::cli::Cli::parse();
    match qracah::cli::run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
