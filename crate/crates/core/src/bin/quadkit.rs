fn main() {
    std::process::exit(quadkit::cli::main_with_args(std::env::args_os()));
}
