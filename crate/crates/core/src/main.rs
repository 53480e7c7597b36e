use std::process::ExitCode;

fn main() -> ExitCode {
    spindce::cli::main_with_args(std::env::args_os())
}
