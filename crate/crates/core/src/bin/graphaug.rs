use std::process::ExitCode;

fn main() -> ExitCode {
    graphaug::cli::main_from(std::env::args_os())
}
