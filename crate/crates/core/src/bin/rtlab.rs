fn main() {
    std::process::exit(rtlab::cli::run(std::env::args_os()));
}
