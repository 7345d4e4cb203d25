fn main() {
    std::process::exit(qsym_cli::commands::main_with_args(std::env::args_os()));
}
