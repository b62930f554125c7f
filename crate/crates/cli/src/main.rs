use clap::Parser;
use steinhom_cli::{render, run, Cli};

fn main() {
    let cli = Cli::parse();
    let report = run(&cli);
    print!("{}", render(&report, cli.format));
    std::process::exit(report.exit_code());
}
