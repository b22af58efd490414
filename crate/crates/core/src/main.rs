fn main() {
    std::process::exit(trop_ci::cli::run_command(std::env::args_os()));
}
