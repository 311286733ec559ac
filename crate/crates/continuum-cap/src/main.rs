fn main() {
    std::process::exit(continuum_cap::cli::run(std::env::args_os()));
}
