fn main() -> std::process::ExitCode {
    irrep_trace::cli::run()
}
