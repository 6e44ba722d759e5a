fn main() {
    std::process::exit(majorlens::cli::run(std::env::args_os()));
}
