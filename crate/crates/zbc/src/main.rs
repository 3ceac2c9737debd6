fn main() {
    std::process::exit(zbc::cli::run(std::env::args_os()));
}
