fn main() {
    std::process::exit(limit_roots::cli::main_from_args(std::env::args_os()));
}
