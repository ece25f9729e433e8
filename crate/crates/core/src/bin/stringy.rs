fn main() -> std::process::ExitCode {
    stringy_core::cli::main()
}
