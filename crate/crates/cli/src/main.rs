fn main() {
    std::process::exit(qforms_cli::run(std::env::args_os()));
}
