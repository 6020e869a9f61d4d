fn main() {
    std::process::exit(qutrit_witness::cli::run(std::env::args_os()));
}
