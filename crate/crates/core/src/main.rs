fn main() {
    std::process::exit(coxdec::cli::run(std::env::args_os()));
}
