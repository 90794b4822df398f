fn main() {
    std::process::exit(quadgauss_cli::run(std::env::args_os()));
}
