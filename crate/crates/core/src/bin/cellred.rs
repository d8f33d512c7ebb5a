fn main() -> std::process::ExitCode {
    cellred::cli::main()
}
