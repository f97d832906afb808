fn main() {
    std::process::exit(epframe::cli::main());
}
