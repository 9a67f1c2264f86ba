fn main() {
    std::process::exit(meroscope::cli::main_with_args(std::env::args_os()));
}
