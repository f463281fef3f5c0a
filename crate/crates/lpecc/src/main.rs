fn main() {
    std::process::exit(lpecc::cli::run());
}
