fn main() {
    std::process::exit(cr_spectra::cli::run(std::env::args_os()));
}
