fn main() {
    std::process::exit(relcoh::cli::main());
}
