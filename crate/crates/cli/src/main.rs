fn main() {
    std::process::exit(geodesic_cli::main_with_args(std::env::args_os()));
}
