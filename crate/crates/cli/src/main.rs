fn main() {
    std::process::exit(swu_cli::run(std::env::args()));
}
