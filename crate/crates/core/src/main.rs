fn main() {
    std::process::exit(windmill::cli::run(std::env::args_os()));
}
