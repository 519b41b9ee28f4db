fn main() {
    std::process::exit(girthforge::cli::run(std::env::args_os()));
}
