fn main() {
    std::process::exit(egas::cli::run(std::env::args_os()));
}
