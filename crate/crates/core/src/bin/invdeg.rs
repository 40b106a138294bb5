fn main() {
    std::process::exit(invdeg::cli::run(std::env::args_os()));
}
