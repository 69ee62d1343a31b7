fn main() {
    std::process::exit(harmonic_qc::cli::run(std::env::args_os()));
}
