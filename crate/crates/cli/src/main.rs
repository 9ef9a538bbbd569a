fn main() {
    std::process::exit(dmt_cli::run(std::env::args_os()));
}
