fn main() {
    std::process::exit(nfduality::cli::main_with_args(std::env::args_os()));
}
