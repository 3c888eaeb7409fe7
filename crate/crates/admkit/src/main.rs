fn main() {
    std::process::exit(admkit::cli::run(std::env::args().collect()));
}
