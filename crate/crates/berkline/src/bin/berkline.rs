fn main() {
    std::process::exit(berkline::cli::run(std::env::args_os()));
}
