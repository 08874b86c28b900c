fn main() {
    std::process::exit(ellsov::cli::run(std::env::args_os()));
}
