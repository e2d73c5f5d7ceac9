fn main() {
    std::process::exit(dk2_core::cli::main_with(std::env::args_os()));
}
