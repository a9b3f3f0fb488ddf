fn main() {
    std::process::exit(unicrit::cli::dispatch(std::env::args_os()));
}
