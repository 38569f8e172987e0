fn main() {
    std::process::exit(knotinv_core::cli::run(std::env::args_os()));
}
