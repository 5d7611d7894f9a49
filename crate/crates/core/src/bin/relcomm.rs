fn main() {
    std::process::exit(relcomm::cli::run_cli(std::env::args_os()));
}
