use clap::Parser;

fn main() {
    let cfg = qcpower::RunConfig::parse();
    std::process::exit(qcpower::run(&cfg));
}
