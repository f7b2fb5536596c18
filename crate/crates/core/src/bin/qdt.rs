fn main() {
    std::process::exit(qdt::cli::run());
}
