fn main() {
    std::process::exit(subordkit::cli::run(std::env::args_os()));
}
