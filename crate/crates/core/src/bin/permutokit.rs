fn main() {
    std::process::exit(permutokit::cli::main_with_args(std::env::args_os()));
}
