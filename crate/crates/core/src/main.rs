fn main() {
    std::process::exit(quiver_canon::cli::run(std::env::args_os()));
}
