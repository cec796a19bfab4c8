fn main() {
    std::process::exit(pdbo::cli::run());
}
