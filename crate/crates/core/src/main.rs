fn main() {
    std::process::exit(chscatter::cli::run(std::env::args_os()));
}
