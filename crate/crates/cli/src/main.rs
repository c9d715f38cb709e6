fn main() {
    std::process::exit(wps_cli::run(std::env::args_os()));
}
