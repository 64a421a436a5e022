fn main() {
    std::process::exit(shor_coherence::cli::main_with_args(std::env::args_os()));
}
