fn main() {
    std::process::exit(amplecone::cli::main_entry());
}
