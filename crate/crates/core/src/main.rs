fn main() {
    std::process::exit(jdx::cli::run(std::env::args_os()));
}
