fn main() -> std::process::ExitCode {
    flatdrop::cli::main()
}
