fn main() {
    std::process::exit(coulombnd::cli::main());
}
