fn main() {
    std::process::exit(hermgrs::cli::dispatch(std::env::args_os()));
}
