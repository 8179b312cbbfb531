fn main() {
    std::process::exit(tischler_cli::main_with_args(std::env::args_os()));
}
