fn main() {
    std::process::exit(as_kit::cli::run(std::env::args_os()));
}
