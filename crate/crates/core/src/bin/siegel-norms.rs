fn main() {
    std::process::exit(siegel_norms::cli::main());
}
