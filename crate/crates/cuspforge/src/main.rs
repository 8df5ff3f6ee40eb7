fn main() {
    std::process::exit(cuspforge::cli::run());
}
