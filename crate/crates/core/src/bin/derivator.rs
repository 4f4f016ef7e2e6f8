fn main() {
    std::process::exit(derivator::cli::main_with_args(std::env::args_os()));
}
