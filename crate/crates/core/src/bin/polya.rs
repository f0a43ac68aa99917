fn main() {
    std::process::exit(polya::cli::main_exit_code());
}
