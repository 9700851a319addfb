fn main() {
    std::process::exit(nmqc::cli::main_with_args(std::env::args_os()));
}
