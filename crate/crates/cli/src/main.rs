use std::process::ExitCode;

fn main() -> ExitCode {
    lesionseg_cli::run_from(std::env::args_os())
}
