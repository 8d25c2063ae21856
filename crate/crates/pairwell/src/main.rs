use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(pairwell::run(std::env::args_os()))
}
