fn main() {
    std::process::exit(fanokit::cli::main_with_args(std::env::args().collect()));
}
