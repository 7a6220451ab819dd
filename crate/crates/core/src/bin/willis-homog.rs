fn main() {
    std::process::exit(willis_homog::cli::run(std::env::args_os()));
}
