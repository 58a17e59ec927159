fn main() {
    std::process::exit(stripgibbs_cli::run(std::env::args_os()));
}
