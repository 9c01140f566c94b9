fn main() {
    let code = spectral_bounds::cli::run(std::env::args_os());
    std::process::exit(code);
}
