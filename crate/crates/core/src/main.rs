fn main() {
    std::process::exit(entcert::cli::main_with_args(std::env::args_os()));
}
