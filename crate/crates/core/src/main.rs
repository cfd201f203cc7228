fn main() {
    std::process::exit(liaison::cli::run(std::env::args_os()));
}
