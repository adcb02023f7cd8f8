fn main() {
    std::process::exit(fracalc::cli::run(std::env::args_os()));
}
