use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(qpentagon_cli::run(std::env::args_os()))
}
