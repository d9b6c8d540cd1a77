fn main() {
    std::process::exit(qms_core::cli::run());
}
