fn main() {
    std::process::exit(heckoid_cli::run(std::env::args_os()));
}
