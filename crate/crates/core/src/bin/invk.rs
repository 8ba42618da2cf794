fn main() {
    std::process::exit(invk::cli::main_with_args(std::env::args_os()));
}
