fn main() -> std::process::ExitCode {
    ultrahom::cli::main()
}
