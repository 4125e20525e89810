fn main() {
    std::process::exit(quasichar::cli::run());
}
