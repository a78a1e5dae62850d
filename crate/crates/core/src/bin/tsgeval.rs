use std::process::ExitCode;

fn main() -> ExitCode {
    tsgeval::cli::main_with_args(std::env::args_os())
}
