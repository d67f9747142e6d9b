fn main() {
    std::process::exit(twisted_pairing::cli::main_with(std::env::args_os()));
}
