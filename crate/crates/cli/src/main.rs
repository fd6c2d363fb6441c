use clap::Parser;

fn main() {
    let cli = nonfree_cli::Cli::parse();
    let code = nonfree_cli::run(&cli, &mut std::io::stdout().lock());
    std::process::exit(code);
}
