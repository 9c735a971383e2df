fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    std::process::exit(hodge_limits::cli::run_to_exit_code(args));
}
