fn main() {
    std::process::exit(rydgate::cli::main_with_args(std::env::args_os()));
}
