fn main() {
    std::process::exit(band_density::cli::run(std::env::args_os()));
}
