fn main() {
    std::process::exit(rakhmanov::cli::run(std::env::args_os()));
}
