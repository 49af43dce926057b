fn main() {
    std::process::exit(arboeq::cli::run());
}
