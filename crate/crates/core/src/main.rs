fn main() {
    std::process::exit(difftrans::cli::run(std::env::args_os()));
}
