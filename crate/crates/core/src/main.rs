fn main() {
    std::process::exit(tate::cli::main());
}
