fn main() -> std::process::ExitCode {
    netstrings_cli::main_entry(std::env::args_os())
}
