fn main() {
    std::process::exit(fglab::cli::main_with_args(std::env::args_os()));
}
