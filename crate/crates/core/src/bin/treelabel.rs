fn main() -> std::process::ExitCode {
    treelabel::cli::main()
}
