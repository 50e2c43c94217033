fn main() {
    std::process::exit(popdist::cli::run());
}
