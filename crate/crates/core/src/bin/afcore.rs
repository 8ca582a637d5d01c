fn main() {
    std::process::exit(afcore::cli::run(std::env::args_os()));
}
