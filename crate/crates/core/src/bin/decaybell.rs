fn main() {
    std::process::exit(decaybell::cli::main());
}
