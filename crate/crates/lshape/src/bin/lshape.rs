fn main() {
    std::process::exit(lshape::cli::run(std::env::args_os()));
}
