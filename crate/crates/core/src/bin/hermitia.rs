fn main() {
    std::process::exit(hermitia::cli::run(std::env::args_os()));
}
