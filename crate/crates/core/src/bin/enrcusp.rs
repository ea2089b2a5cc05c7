fn main() {
    std::process::exit(enriques_cusps::cli::main_with_args(std::env::args_os()));
}
