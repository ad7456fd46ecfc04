fn main() {
    std::process::exit(adsvol::cli::main());
}
