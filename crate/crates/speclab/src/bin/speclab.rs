fn main() {
    std::process::exit(speclab::cli::run_main());
}
