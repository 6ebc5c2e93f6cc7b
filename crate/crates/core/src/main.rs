fn main() {
    std::process::exit(zetaquant::cli::run(std::env::args_os()));
}
