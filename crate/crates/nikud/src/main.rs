fn main() {
    std::process::exit(nikud::cli::run(std::env::args_os()));
}
