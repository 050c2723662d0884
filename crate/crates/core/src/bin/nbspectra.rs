fn main() {
    std::process::exit(nbspectra_core::cli::main_with(std::env::args_os()));
}
