fn main() {
    std::process::exit(eulersum::harness::run_cli(std::env::args_os()));
}
