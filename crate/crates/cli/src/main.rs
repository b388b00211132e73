fn main() {
    std::process::exit(freedense_cli::run(std::env::args_os()));
}
