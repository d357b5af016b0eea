fn main() {
    std::process::exit(qclf::cli::run(std::env::args_os()));
}
