fn main() {
    std::process::exit(archimedes_pi::cli::main_with_env());
}
