fn main() {
    std::process::exit(qcl_cli::run(std::env::args_os()));
}
