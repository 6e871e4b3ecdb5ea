fn main() {
    std::process::exit(detcheck::cli::main_with(std::env::args_os()));
}
